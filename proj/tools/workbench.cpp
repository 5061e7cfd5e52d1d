// Command-line workbench: verify documents, convert between actions and
// bundles, stabilize twisted actions, and check equivalence witnesses.
// Exit codes: 0 the check passed, 1 it failed, 2 the input was malformed.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twist/io.hpp"
#include "twist/samples.hpp"
#include "twist/stab.hpp"

using namespace twist;

namespace {

void print_report(const VerificationReport& r, const std::string& mode) {
  if (mode == "json")
    std::cout << canonical_dump(report_to_json(r));
  else
    std::cout << report_to_text(r);
}

int run_verify(const std::string& path, double tol_eps,
               const std::string& report_mode) {
  SpecObject obj = load_spec_file(path);
  VerificationReport r = verify_object(obj, Tolerance{tol_eps});
  print_report(r, report_mode);
  return r.pass() ? 0 : 1;
}

int run_construct(const std::string& from, const std::string& in,
                  const std::string& out, double tol_eps) {
  Tolerance tol{tol_eps};
  SpecObject obj = load_spec_file(in);
  if (from == "action") {
    CorrAction act;
    if (auto* ca = std::get_if<CorrAction>(&obj))
      act = *ca;
    else if (auto* ba = std::get_if<BSAction>(&obj))
      act = corr_action_from_bs(*ba);
    else
      throw ParseError("construct --from action expects a bs_action or "
                       "corr_action document");
    VerificationReport vr = verify_corr_action(act, tol);
    if (!vr.pass())
      throw NotVerified("input action fails verification: " + vr.summary());
    save_spec_file(out, action_to_fell(act, tol));
  } else {
    auto* fb = std::get_if<FellBundle>(&obj);
    if (!fb)
      throw ParseError("construct --from bundle expects a fell_bundle "
                       "document");
    VerificationReport vr = verify_fell(*fb, tol);
    if (!vr.pass())
      throw NotVerified("input bundle fails verification: " + vr.summary());
    save_spec_file(out, fell_to_action(*fb, tol));
  }
  return 0;
}

int run_stabilize(const std::string& in, const std::string& out,
                  double tol_eps, const std::string& report_mode) {
  Tolerance tol{tol_eps};
  SpecObject obj = load_spec_file(in);
  VerificationReport r;
  r.eps = tol_eps;
  if (auto* ba = std::get_if<BSAction>(&obj)) {
    StabilizedAction s = packer_raeburn(*ba, tol);
    double worst = 0.0;
    const AlgElement one = AlgElement::identity(s.result.algebra);
    for (int g1 = 0; g1 < s.result.group.order; ++g1)
      for (int g2 = 0; g2 < s.result.group.order; ++g2)
        worst = std::max(worst, dist(s.result.omega[g1][g2], one));
    r.add("twist-trivialised", worst);
    r.add("unit-trivialised", dist(s.result.u, one));
    r.add("composition-defect", composition_defect(s.result));
    r.merge(verify_transformation(s.witness(), tol), "witness: ");
    save_spec_file(out, s.result);
  } else if (auto* cma = std::get_if<CMAction>(&obj)) {
    StrictificationResult s = strictify(cm_corr_from_bs(*cma), tol);
    double worst = 0.0;
    const AlgElement one = AlgElement::identity(s.output.action.algebra);
    for (int g1 = 0; g1 < s.output.action.group.order; ++g1)
      for (int g2 = 0; g2 < s.output.action.group.order; ++g2)
        worst = std::max(worst, dist(s.output.action.omega[g1][g2], one));
    r.add("twist-trivialised", worst);
    r.add("unit-trivialised", dist(s.output.action.u, one));
    r.merge(verify_cm_transformation(s.witness, tol), "witness: ");
    save_spec_file(out, s.output);
  } else {
    throw ParseError("stabilize expects a bs_action or cm_action document");
  }
  print_report(r, report_mode);
  return r.pass() ? 0 : 1;
}

int run_check_equiv(const std::string& pa, const std::string& pb,
                    const std::string& pw, double tol_eps,
                    const std::string& report_mode) {
  Tolerance tol{tol_eps};
  SpecObject a = load_spec_file(pa);
  SpecObject b = load_spec_file(pb);
  SpecObject w = load_spec_file(pw);
  VerificationReport r;
  r.eps = tol_eps;
  auto same = [](const SpecObject& x, const SpecObject& y) {
    return canonical_dump(serialize(x)) == canonical_dump(serialize(y));
  };
  if (auto* t = std::get_if<Transformation>(&w)) {
    r.add_flag("witness-source-is-a", same(SpecObject{t->source}, a));
    r.add_flag("witness-target-is-b", same(SpecObject{t->target}, b));
    r.merge(verify_transformation(*t, tol));
  } else if (auto* m = std::get_if<Modification>(&w)) {
    r.add_flag("witness-source-is-a", same(SpecObject{m->source}, a));
    r.add_flag("witness-target-is-b", same(SpecObject{m->target}, b));
    r.merge(verify_modification(*m, tol));
  } else if (auto* c = std::get_if<FellCorrespondence>(&w)) {
    r.add_flag("witness-left-bundle-is-a", same(SpecObject{c->a}, a));
    r.add_flag("witness-right-bundle-is-b", same(SpecObject{c->b}, b));
    r.merge(verify_fell_correspondence(*c, tol));
  } else {
    throw ParseError("check-equiv expects a transformation, modification or "
                     "fell_correspondence witness");
  }
  print_report(r, report_mode);
  return r.pass() ? 0 : 1;
}

int run_selftest(std::uint64_t seed, double tol_eps,
                 const std::string& report_mode) {
  Tolerance tol{tol_eps};
  Rng rng(seed);
  VerificationReport r;
  r.eps = tol_eps;
  BSAction act =
      random_twisted_action(FiniteGroup::cyclic(2), MatAlg({2}, "M2"), rng);
  r.merge(verify_bs_action(act, tol), "random action: ");
  StabilizedAction s = packer_raeburn(act, tol);
  r.add("random action: composition-defect", composition_defect(s.result));
  r.merge(verify_transformation(s.witness(), tol), "random witness: ");
  SpecObject obj{act};
  std::string d1 = canonical_dump(serialize(obj));
  std::string d2 = canonical_dump(serialize(parse_spec(parse_text(d1))));
  r.add_flag("serialisation round trip", d1 == d2);
  print_report(r, report_mode);
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for twisted actions, correspondence "
               "actions, crossed-module actions and graded bundles"};
  app.require_subcommand(1);
  app.fallthrough();  // --tol / --report may follow the subcommand

  double tol_eps = 1e-9;
  std::string report_mode = "text";
  app.add_option("--tol", tol_eps, "comparison tolerance")
      ->capture_default_str();
  app.add_option("--report", report_mode, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string in, out, pa, pb, pw, from;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "verify a document");
  verify->add_option("path", in)->required();

  auto* construct = app.add_subcommand(
      "construct", "convert between an action and a bundle");
  construct->add_option("--from", from)
      ->required()
      ->check(CLI::IsMember({"action", "bundle"}));
  construct->add_option("in", pa)->required();
  construct->add_option("out", pb)->required();

  auto* stabilize = app.add_subcommand(
      "stabilize", "trivialise the twist after tensoring with matrices");
  stabilize->add_option("in", in)->required();
  stabilize->add_option("out", out)->required();

  auto* check = app.add_subcommand(
      "check-equiv", "verify an equivalence witness between two documents");
  check->add_option("a", pa)->required();
  check->add_option("b", pb)->required();
  check->add_option("witness", pw)->required();

  auto* selftest =
      app.add_subcommand("selftest", "randomized end-to-end self checks");
  selftest->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(in, tol_eps, report_mode);
    if (construct->parsed()) return run_construct(from, pa, pb, tol_eps);
    if (stabilize->parsed())
      return run_stabilize(in, out, tol_eps, report_mode);
    if (check->parsed())
      return run_check_equiv(pa, pb, pw, tol_eps, report_mode);
    if (selftest->parsed()) return run_selftest(seed, tol_eps, report_mode);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TwistError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
