// Regenerates the document corpus: known-good instances of every document
// kind plus deliberately broken variants, one per law family. All output is
// deterministic; files land in the directory given as the first argument
// (default "corpus").

#include <fstream>
#include <iostream>
#include <string>

#include "twist/crossed.hpp"
#include "twist/io.hpp"
#include "twist/samples.hpp"

using namespace twist;

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "corpus";
  auto emit = [&](const std::string& name, const SpecObject& obj) {
    save_spec_file(dir + "/" + name + ".json", obj);
    std::cout << name << ".json\n";
  };

  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const MatAlg m2({2}, "M2");

  // --- well-formed instances, one per document kind -----------------------
  emit("s3_group", FiniteGroup::symmetric3());
  emit("conj_s3_crossed_module",
       conjugation_crossed_module(FiniteGroup::symmetric3()));
  emit("m2_plus_c_algebra", MatAlg({2, 1}, "M2+C"));

  emit("trivial_z2", BSAction::trivial(z2, m2));
  emit("trivial_s3", BSAction::trivial(FiniteGroup::symmetric3(), m2));
  emit("clock_shift_z2sq", clock_shift_action(2));
  emit("clock_shift_z3sq", clock_shift_action(3));
  emit("clock_double_shift_z4z2", clock_double_shift_action());
  emit("sign_twist_z2", sign_twist_action());

  {
    // Canonical form carries the deterministic module frames explicitly, so
    // that converting to a bundle and back is byte-identical.
    CorrAction ca = corr_action_from_bs(clock_shift_action(2));
    for (auto& e : ca.alpha) e.frame = module_basis(e);
    emit("clock_shift_z2sq_corr", ca);
  }

  emit("nonsaturated_bundle", unit_only_bundle(z2, m2));
  emit("group_algebra_z3_bundle", group_algebra_bundle(z3));

  emit("green_cm_action", green_cm_action());
  emit("weak_cm_action_z2sq", weak_cm_action(2));

  Transformation id_t = Transformation::identity(clock_shift_action(2));
  emit("identity_transformation_clock_z2sq", id_t);
  emit("identity_modification_clock_z2sq",
       Modification{id_t, id_t, AlgElement::identity(m2)});

  emit("identity_fell_equivalence_z3",
       identity_fell_equivalence(group_algebra_bundle(z3)));
  emit("clock_z2sq_fell_correspondence",
       transformation_to_fell_correspondence(
           corr_transformation_from_bs(id_t)));
  emit("regular_representation_z2",
       representation_from_fell_correspondence(
           identity_fell_equivalence(group_algebra_bundle(z2))));

  // --- broken variants, one per law family --------------------------------
  {
    // Group laws are enforced while parsing, so a non-associative table is a
    // malformed document, not a failing one. Written raw to exercise that
    // path: this is a loop in which (1*1)*2 = 2 but 1*(1*2) = 4.
    Json bad{{"kind", "group"},
             {"label", "broken"},
             {"names", Json::array({"e", "a", "b", "c", "d"})},
             {"table", std::vector<std::vector<int>>{{0, 1, 2, 3, 4},
                                                     {1, 0, 3, 4, 2},
                                                     {2, 4, 0, 1, 3},
                                                     {3, 2, 4, 0, 1},
                                                     {4, 3, 1, 2, 0}}}};
    std::ofstream out(dir + "/broken_group.json", std::ios::binary);
    out << canonical_dump(bad);
    std::cout << "broken_group.json\n";
  }
  {
    CrossedModule cm = conjugation_crossed_module(z3);
    cm.partial = {0, 2, 2};  // no longer a homomorphism
    cm.label = "broken";
    emit("broken_crossed_module", cm);
  }
  {
    BSAction a = clock_shift_action(2);
    a.omega[1][1] = a.omega[1][1] * cx(0, 1);  // scalar phase: still unitary,
    emit("broken_cocycle", a);                 // breaks only the cocycle law
  }
  {
    BSAction a = BSAction::trivial(z2, m2);
    a.omega[1][1] = AlgElement::scalar(m2, 2.0);
    emit("broken_unitarity", a);
  }
  {
    BSAction a = clock_shift_action(2);
    a.alpha[1] = StarHom::identity(a.algebra);  // omega no longer implements
    emit("broken_intertwine", a);               // the composition
  }
  {
    BSAction a = BSAction::trivial(z2, m2);
    a.u = AlgElement::scalar(m2, -1.0);
    emit("broken_unit", a);
  }
  {
    FellBundle b = group_algebra_bundle(z3);
    b.star[1] = -b.star[1];
    emit("broken_bundle_star", b);
  }
  {
    CMAction a = green_cm_action();
    a.v[1] = AlgElement::scalar(a.action.algebra, cx(0, 1));
    emit("broken_cm_action", a);  // v is no longer a homomorphism on H
  }
  {
    Transformation t = Transformation::identity(clock_shift_action(2));
    t.V[1] = t.V[1] * cx(0, 1);  // unitary, but the cocycle compatibility
    emit("broken_transformation", t);  // square no longer commutes
  }
  {
    Modification m{id_t, id_t, AlgElement::scalar(m2, 2.0)};
    emit("broken_modification", m);
  }
  {
    FellCorrespondence c = identity_fell_equivalence(group_algebra_bundle(z2));
    c.rmul[1][1] = 2.0 * c.rmul[1][1];
    emit("broken_fell_correspondence", c);
  }
  {
    FellRepresentation r = representation_from_fell_correspondence(
        identity_fell_equivalence(group_algebra_bundle(z2)));
    // a sign flip would just twist by a character; a scale breaks
    // multiplicativity against the unit fibre
    r.pi[1][0] = 2.0 * r.pi[1][0];
    emit("broken_representation", r);
  }
  return 0;
}
