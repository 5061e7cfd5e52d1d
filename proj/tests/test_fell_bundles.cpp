#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twist/fell.hpp"
#include "twist/samples.hpp"

using namespace twist;

namespace {

double opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

MatAlg m2() { return MatAlg({2}, "M2"); }

Vec vkron(const Vec& x, const Vec& y) {
  Vec r(x.size() * y.size());
  for (int i = 0; i < x.size(); ++i)
    r.segment(i * y.size(), y.size()) = x(i) * y;
  return r;
}

double bundle_dist(const FellBundle& x, const FellBundle& y) {
  double d = 0;
  int n = x.group.order;
  for (int g = 0; g < n; ++g) {
    d = std::max(d, opnorm(x.star[g] - y.star[g]));
    for (int h = 0; h < n; ++h)
      d = std::max(d, opnorm(x.mult[g][h] - y.mult[g][h]));
  }
  return std::max(d, opnorm(x.unit_iso - y.unit_iso));
}

// norm of a fibre coordinate vector through the right inner product
double fibre_norm(const FellBundle& b, int g, const Vec& x) {
  int gi = b.group.inv[g];
  Vec xs = b.star[g] * x.conjugate();
  return std::sqrt(b.from_unit(b.mult[gi][g] * vkron(xs, x)).norm());
}

}  // namespace

TEST_CASE("group algebra bundle verifies and is saturated") {
  FellBundle b = group_algebra_bundle(FiniteGroup::symmetric3());
  CHECK(verify_fell(b).pass());
  CHECK(check_saturated(b));
}

TEST_CASE("constant bundle with matrix fibres verifies") {
  FellBundle b = constant_bundle(FiniteGroup::cyclic(2), m2());
  CHECK(verify_fell(b).pass());
  CHECK(check_saturated(b));
}

TEST_CASE("flipping the sign of one involution matrix breaks the bundle") {
  FellBundle b = group_algebra_bundle(FiniteGroup::cyclic(3));
  b.star[1] = -b.star[1];
  VerificationReport rep = verify_fell(b);
  CHECK(!rep.pass());
}

TEST_CASE("bundle supported on the unit fibre only is valid, not saturated") {
  FellBundle b = unit_only_bundle(FiniteGroup::cyclic(2), m2());
  CHECK(verify_fell(b).pass());
  CHECK(!check_saturated(b));
  CHECK_THROWS_AS((void)fell_to_action(b), NotSaturated);
}

TEST_CASE("the trivial action induces a unit-modulus group algebra bundle") {
  BSAction bs = BSAction::trivial(FiniteGroup::cyclic(2), MatAlg({1}, "C"));
  FellBundle b = action_to_fell(corr_action_from_bs(bs));
  CHECK(verify_fell(b).pass());
  CHECK(check_saturated(b));
  for (int g = 0; g < 2; ++g) {
    CHECK(b.dims[g] == 1);
    for (int h = 0; h < 2; ++h)
      CHECK(std::abs(std::abs(b.mult[g][h](0, 0)) - 1.0) < 1e-9);
  }
}

TEST_CASE("clock-shift action gives a saturated bundle with 9-dim fibres") {
  FellBundle b = action_to_fell(corr_action_from_bs(clock_shift_action(3)));
  CHECK(verify_fell(b).pass());
  CHECK(check_saturated(b));
  for (int d : b.dims) CHECK(d == 9);
}

TEST_CASE("bundle product matches the twisted convolution formula") {
  BSAction bs = clock_shift_action(3);
  CorrAction act = corr_action_from_bs(bs);
  FellBundle b = action_to_fell(act);
  const FiniteGroup& gr = bs.group;
  Rng rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    int g1 = rng.uniform_int(gr.order), g2 = rng.uniform_int(gr.order);
    AlgElement x = rng.random_element(bs.algebra);
    AlgElement y = rng.random_element(bs.algebra);
    Vec cx1 = module_coords(b.carrier[g1].mod, b.carrier[g1].frame,
                            x.embedded());
    Vec cx2 = module_coords(b.carrier[g2].mod, b.carrier[g2].frame,
                            y.embedded());
    Vec prod = b.mult[g1][g2] * vkron(cx1, cx2);
    int g12 = gr.mul(g1, g2);
    AlgElement expected = bs.omega[gr.inv[g2]][gr.inv[g1]] *
                          bs.alpha[gr.inv[g2]].apply(x) * y;
    Vec exp_coords = module_coords(b.carrier[g12].mod, b.carrier[g12].frame,
                                   expected.embedded());
    CHECK((prod - exp_coords).norm() < 1e-8);
  }
}

TEST_CASE("bundle from an action remembers the action exactly") {
  CorrAction act = corr_action_from_bs(clock_shift_action(2));
  FellBundle b = action_to_fell(act);
  CorrAction back = fell_to_action(b);
  REQUIRE(back.group.same_table(act.group));
  for (int g = 0; g < act.group.order; ++g)
    CHECK(opnorm(back.alpha[g].mod.proj - act.alpha[g].mod.proj) == 0.0);
  CHECK(opnorm(back.u.u - act.u.u) == 0.0);
}

TEST_CASE("hand-authored bundle round trips through an action within eps") {
  FellBundle b = constant_bundle(FiniteGroup::cyclic(2), m2());
  CorrAction act = fell_to_action(b);
  CHECK(verify_corr_action(act).pass());
  FellBundle b2 = action_to_fell(act);
  CHECK(b2.dims == b.dims);
  CHECK(bundle_dist(b, b2) < 1e-7);
}

TEST_CASE("action round trips through a frame realisation within eps") {
  Rng rng(23);
  BSAction bs = random_twisted_action(FiniteGroup::cyclic(2),
                                      MatAlg({1, 1}, "C+C"), rng);
  CorrAction act = corr_action_from_bs(bs);
  FellBundle b = action_to_fell(act);
  CHECK(verify_fell(b).pass());
  b.origin.reset();
  b.carrier.clear();
  CorrAction act2 = fell_to_action(b);
  CHECK(verify_corr_action(act2).pass());
  FellBundle b2 = action_to_fell(act2);
  CHECK(bundle_dist(b, b2) < 1e-7);
}

TEST_CASE("fibre norms are submultiplicative") {
  FellBundle b = action_to_fell(corr_action_from_bs(clock_shift_action(2)));
  Rng rng(5);
  const FiniteGroup& gr = b.group;
  for (int trial = 0; trial < 20; ++trial) {
    int g1 = rng.uniform_int(gr.order), g2 = rng.uniform_int(gr.order);
    Vec x(b.dims[g1]), y(b.dims[g2]);
    for (int i = 0; i < x.size(); ++i) x(i) = rng.cgauss();
    for (int i = 0; i < y.size(); ++i) y(i) = rng.cgauss();
    Vec xy = b.mult[g1][g2] * vkron(x, y);
    CHECK(fibre_norm(b, gr.mul(g1, g2), xy) <=
          fibre_norm(b, g1, x) * fibre_norm(b, g2, y) + 1e-7);
  }
}

TEST_CASE("identity equivalence of a bundle is a Morita equivalence") {
  FellBundle b = action_to_fell(corr_action_from_bs(clock_shift_action(2)));
  FellCorrespondence c = identity_fell_equivalence(b);
  VerificationReport rep = verify_fell_correspondence(c);
  CHECK(rep.pass());
  bool morita_yes = false;
  for (const auto& e : rep.entries)
    if (e.law == "morita") morita_yes = e.worst == "yes";
  CHECK(morita_yes);
}

TEST_CASE("omitting the left inner products is flagged as not Morita") {
  FellBundle b = group_algebra_bundle(FiniteGroup::cyclic(3));
  FellCorrespondence c = identity_fell_equivalence(b);
  c.has_left = false;
  c.inner_a.clear();
  VerificationReport rep = verify_fell_correspondence(c);
  CHECK(rep.pass());
  for (const auto& e : rep.entries)
    if (e.law == "morita") CHECK(e.worst == "no");
}

TEST_CASE("scaling one structure tensor violates compatibility") {
  FellBundle b = group_algebra_bundle(FiniteGroup::cyclic(2));
  FellCorrespondence c = identity_fell_equivalence(b);
  c.rmul[1][1] *= 2.0;
  CHECK(!verify_fell_correspondence(c).pass());
}

TEST_CASE("transformations between actions map to bundle correspondences") {
  BSAction bs = clock_shift_action(2);
  CorrTransformation t =
      corr_transformation_from_bs(Transformation::identity(bs));
  CHECK(verify_corr_transformation(t).pass());
  FellCorrespondence c = transformation_to_fell_correspondence(t);
  VerificationReport rep = verify_fell_correspondence(c);
  CHECK(rep.pass());
  CHECK(c.has_left);
  // the unit fibre of the bimodule is the algebra itself
  CHECK(c.dims[bs.group.identity] == bs.algebra.dim());
  // provenance: converting back returns the original transformation
  CorrTransformation back = fell_correspondence_to_transformation(c);
  CHECK(opnorm(back.gamma.mod.proj - t.gamma.mod.proj) == 0.0);
}

TEST_CASE("a nontrivial exterior equivalence maps to a Morita equivalence") {
  Rng rng(31);
  BSAction target = random_twisted_action(FiniteGroup::cyclic(2), m2(), rng);
  std::vector<AlgElement> v;
  for (int i = 0; i < 2; ++i) v.push_back(rng.random_unitary(m2()));
  BSAction source = apply_equivalence(target, v);
  Transformation tr{source, target, StarHom::identity(m2()), v};
  REQUIRE(verify_transformation(tr).pass());
  CorrTransformation t = corr_transformation_from_bs(tr);
  CHECK(verify_corr_transformation(t).pass());
  FellCorrespondence c = transformation_to_fell_correspondence(t);
  CHECK(verify_fell_correspondence(c).pass());
  CHECK(c.has_left);
}

TEST_CASE("bundle equivalence without provenance lifts to a transformation") {
  FellBundle b = constant_bundle(FiniteGroup::cyclic(2), m2());
  FellCorrespondence c = identity_fell_equivalence(b);
  CorrTransformation t = fell_correspondence_to_transformation(c);
  CHECK(verify_corr_transformation(t).pass());
  CHECK(is_equivalence(t.gamma).ok);
}

TEST_CASE("left regular representation of the order-two group bundle") {
  FellBundle b = group_algebra_bundle(FiniteGroup::cyclic(2));
  FellRepresentation r;
  r.bundle = b;
  r.space = HilbertModule(b.base, 2, Mat::Identity(2, 2));
  r.space_basis = {Mat::Zero(2, 1), Mat::Zero(2, 1)};
  r.space_basis[0](0, 0) = 1.0;
  r.space_basis[1](1, 0) = 1.0;
  Mat swap(2, 2);
  swap << 0, 1, 1, 0;
  r.pi = {{Mat::Identity(2, 2)}, {swap}};
  CHECK(verify_fell_representation(r).pass());

  // breaking self-adjointness of the order-two generator must fail
  Mat bad(2, 2);
  bad << 0, 1, -1, 0;
  r.pi[1][0] = bad;
  CHECK(!verify_fell_representation(r).pass());
}

TEST_CASE("a correspondence to a constant bundle yields a representation") {
  FellBundle b = constant_bundle(FiniteGroup::cyclic(2), m2());
  FellCorrespondence c = identity_fell_equivalence(b);
  FellRepresentation r = representation_from_fell_correspondence(c);
  CHECK(verify_fell_representation(r).pass());
}
