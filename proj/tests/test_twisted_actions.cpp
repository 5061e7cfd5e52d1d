#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twist/actions.hpp"
#include "twist/samples.hpp"

using namespace twist;

namespace {

BSAction clock3() { return clock_shift_action(3); }

std::vector<AlgElement> word_reps(const BSAction& act, int n) {
  AlgElement u = clock_matrix(n), v = shift_matrix(n);
  std::vector<AlgElement> w;
  for (int idx = 0; idx < act.group.order; ++idx) {
    int a = idx / n, b = idx % n;
    AlgElement x = AlgElement::identity(act.algebra);
    for (int i = 0; i < a; ++i) x = x * u;
    for (int i = 0; i < b; ++i) x = x * v;
    w.push_back(x);
  }
  return w;
}

}  // namespace

TEST_CASE("group construction sanity") {
  FiniteGroup g = FiniteGroup::product(FiniteGroup::cyclic(3),
                                       FiniteGroup::cyclic(3));
  CHECK(g.order == 9);
  CHECK(g.identity == 0);
  CHECK(g.mul(g.inv[5], 5) == g.identity);
  CHECK_NOTHROW(FiniteGroup::symmetric3().validate());
}

TEST_CASE("trivial action of Z2 on C verifies with zero residuals") {
  BSAction act = BSAction::trivial(FiniteGroup::cyclic(2), MatAlg({1}, "C"));
  auto rep = verify_bs_action(act);
  CHECK(rep.pass());
  CHECK(rep.max_residual() == 0.0);
}

TEST_CASE("clock-shift twisted action verifies to machine precision") {
  auto rep = verify_bs_action(clock3());
  CHECK(rep.pass());
  CHECK(rep.max_residual() < 1e-12);
}

TEST_CASE("perturbing one omega entry fails with the predicted residual") {
  BSAction act = clock3();
  act.omega[4][5] = act.omega[4][5] * std::polar(1.0, 1e-3);
  auto rep = verify_bs_action(act, Tolerance{1e-9}, CheckDepth::Laws);
  CHECK(!rep.pass());
  double expected = 2.0 * std::sin(5e-4);
  for (auto& e : rep.entries)
    if (e.law == "cocycle") {
      CHECK(e.residual > 0.9 * expected);
      CHECK(e.residual < 1.1 * expected);
    }
}

TEST_CASE("induced correspondence action verifies") {
  CorrAction c = corr_action_from_bs(clock_shift_action(2));
  CHECK(verify_corr_action(c).pass());
}

TEST_CASE("correspondence action of the one-element group verifies") {
  CorrAction c = corr_action_from_bs(
      BSAction::trivial(FiniteGroup::trivial(), MatAlg({2}, "M2")));
  CHECK(verify_corr_action(c).pass());
}

TEST_CASE("swapping omega arguments breaks the coherence laws") {
  // A scalar bicharacter cocycle survives the swap (its transpose is again
  // a cocycle), so use an action whose cocycle is genuinely non-central.
  Rng rng(7);
  BSAction act =
      random_twisted_action(FiniteGroup::cyclic(3), MatAlg({2}, "M2"), rng);
  BSAction bad = act;
  for (int i = 0; i < act.group.order; ++i)
    for (int j = 0; j < act.group.order; ++j)
      bad.omega[i][j] = act.omega[j][i];
  CHECK(!verify_bs_action(bad, Tolerance{1e-9}, CheckDepth::Laws).pass());
  CorrAction c = corr_action_from_bs(act);
  CorrAction cbad = c;
  for (int i = 0; i < act.group.order; ++i)
    for (int j = 0; j < act.group.order; ++j)
      cbad.omega[i][j].u = c.omega[j][i].u;
  CHECK(!verify_corr_action(cbad).pass());
}

TEST_CASE("the transposed scalar bicharacter is again a valid cocycle") {
  BSAction act = clock3();
  BSAction t = act;
  for (int i = 0; i < act.group.order; ++i)
    for (int j = 0; j < act.group.order; ++j)
      t.omega[i][j] = act.omega[j][i];
  CHECK(verify_bs_action(t).pass());
}

TEST_CASE("round trip between the two action forms") {
  BSAction act = clock3();
  BSAction back = bs_action_from_corr(corr_action_from_bs(act));
  for (int g = 0; g < act.group.order; ++g)
    CHECK(dist(act.alpha[g], back.alpha[g]) < 1e-12);
  for (int i = 0; i < act.group.order; ++i)
    for (int j = 0; j < act.group.order; ++j)
      CHECK(dist(act.omega[i][j], back.omega[i][j]) < 1e-12);
  CHECK(dist(act.u, back.u) < 1e-12);
}

TEST_CASE("apply_equivalence with V = 1 is the identity") {
  BSAction act = clock3();
  std::vector<AlgElement> v(act.group.order,
                            AlgElement::identity(act.algebra));
  BSAction out = apply_equivalence(act, v);
  for (int g = 0; g < act.group.order; ++g)
    CHECK(dist(act.alpha[g], out.alpha[g]) < 1e-12);
  CHECK(dist(act.u, out.u) < 1e-12);
}

TEST_CASE("apply_equivalence produces verified actions and witnesses") {
  Rng rng(3);
  FiniteGroup g = FiniteGroup::cyclic(2);
  MatAlg a({2}, "M2");
  BSAction act = random_twisted_action(g, a, rng);
  CHECK(verify_bs_action(act).pass());
  std::vector<AlgElement> v;
  for (int i = 0; i < g.order; ++i) v.push_back(rng.random_unitary(a));
  BSAction out = apply_equivalence(act, v);
  CHECK(verify_bs_action(out).pass());
  Transformation t;
  t.source = out;
  t.target = act;
  t.f = StarHom::identity(a);
  t.V = v;
  CHECK(verify_transformation(t).pass());
}

TEST_CASE("constant unitary twist of the trivial action") {
  Rng rng(9);
  MatAlg a({2}, "M2");
  BSAction act = BSAction::trivial(FiniteGroup::cyclic(2), a);
  AlgElement w = rng.random_unitary(a);
  std::vector<AlgElement> v(2, w);
  BSAction out = apply_equivalence(act, v);
  CHECK(verify_bs_action(out).pass());
  // omega'(g1,g2) = w Id(w*) w* = w w* w* = w*
  CHECK(dist(out.omega[0][1], w.adjoint()) < 1e-12);
}

TEST_CASE("exterior equivalence is an equivalence relation") {
  Rng rng(13);
  FiniteGroup g = FiniteGroup::cyclic(3);
  MatAlg a({2}, "M2");
  BSAction act = random_twisted_action(g, a, rng);
  std::vector<AlgElement> v1, v2;
  for (int i = 0; i < g.order; ++i) {
    v1.push_back(rng.random_unitary(a));
    v2.push_back(rng.random_unitary(a));
  }
  BSAction b = apply_equivalence(act, v1);
  BSAction c = apply_equivalence(b, v2);
  // symmetry: twisting back with the adjoints recovers act
  std::vector<AlgElement> v1s;
  for (auto& x : v1) v1s.push_back(x.adjoint());
  BSAction back = apply_equivalence(b, v1s);
  for (int i = 0; i < g.order; ++i)
    CHECK(dist(back.alpha[i], act.alpha[i]) < 1e-9);
  // transitivity: the pointwise product twists act directly to c
  std::vector<AlgElement> prod;
  for (int i = 0; i < g.order; ++i) prod.push_back(v2[i] * v1[i]);
  BSAction direct = apply_equivalence(act, prod);
  for (int i = 0; i < g.order; ++i)
    CHECK(dist(direct.alpha[i], c.alpha[i]) < 1e-9);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      CHECK(dist(direct.omega[i][j], c.omega[i][j]) < 1e-9);
}

TEST_CASE("normalize_unit on an action with scalar unit") {
  MatAlg a({2}, "M2");
  BSAction base = BSAction::trivial(FiniteGroup::cyclic(2), a);
  std::vector<AlgElement> v(2, AlgElement::scalar(a, cx(0, 1)));
  BSAction act = apply_equivalence(base, v);
  CHECK(dist(act.u, AlgElement::scalar(a, cx(0, 1))) < 1e-12);
  NormalizedAction n = normalize_unit(act);
  CHECK(dist(n.action.u, AlgElement::identity(a)) < 1e-12);
  CHECK(verify_bs_action(n.action).pass());
  CHECK(verify_transformation(n.witness).pass());
  CHECK(dist(n.action.alpha[0], StarHom::identity(a)) < 1e-12);
}

TEST_CASE("normalize_unit is idempotent and keeps clock-shift verified") {
  NormalizedAction n = normalize_unit(clock3());
  CHECK(verify_bs_action(n.action).pass());
  NormalizedAction n2 = normalize_unit(n.action);
  for (int g = 0; g < n.action.group.order; ++g) {
    CHECK(dist(n2.witness.V[g], AlgElement::identity(n.action.algebra)) <
          1e-12);
    CHECK(dist(n2.action.alpha[g], n.action.alpha[g]) < 1e-12);
  }
}

TEST_CASE("u equals omega*(1,1) in verified actions") {
  Rng rng(17);
  BSAction act =
      random_twisted_action(FiniteGroup::cyclic(4), MatAlg({2}, "M2"), rng);
  CHECK(dist(act.u, act.omega_star(0, 0)) < 1e-12);
}

TEST_CASE("identity transformation verifies") {
  CHECK(verify_transformation(Transformation::identity(clock3())).pass());
}

TEST_CASE("clock-shift covariant representation") {
  BSAction act = clock3();
  std::vector<AlgElement> v = word_reps(act, 3);
  CHECK(verify_covariant_rep(act, StarHom::identity(act.algebra), v).pass());
}

TEST_CASE("covariant representation fails when omega is ignored") {
  BSAction act = clock3();
  BSAction untwisted = act;
  for (int i = 0; i < act.group.order; ++i)
    for (int j = 0; j < act.group.order; ++j)
      untwisted.omega[i][j] = AlgElement::identity(act.algebra);
  std::vector<AlgElement> v = word_reps(act, 3);
  Transformation t;
  t.source = untwisted;
  t.target = BSAction::trivial(act.group, act.algebra);
  t.f = StarHom::identity(act.algebra);
  t.V = v;
  CHECK(!verify_transformation(t).pass());
}

TEST_CASE("decompose_transformation splits and recomposes") {
  Rng rng(23);
  FiniteGroup g = FiniteGroup::cyclic(2);
  MatAlg a({2}, "M2");
  BSAction act = random_twisted_action(g, a, rng);
  std::vector<AlgElement> v;
  for (int i = 0; i < g.order; ++i) v.push_back(rng.random_unitary(a));
  Transformation t;
  t.source = apply_equivalence(act, v);
  t.target = act;
  t.f = StarHom::identity(a);
  t.V = v;
  REQUIRE(verify_transformation(t).pass());

  DecomposedTransformation d = decompose_transformation(t);
  CHECK(verify_bs_action(d.twisted).pass());
  CHECK(verify_transformation(d.strict_part).pass());
  CHECK(verify_transformation(d.equivalence_part).pass());
  Transformation back =
      compose_transformations(d.equivalence_part, d.strict_part);
  CHECK(dist(back.f, t.f) < 1e-9);
  for (int i = 0; i < g.order; ++i) CHECK(dist(back.V[i], t.V[i]) < 1e-9);
}

TEST_CASE("decompose_transformation on a strict transformation") {
  BSAction act = clock3();
  Transformation t = Transformation::identity(act);
  DecomposedTransformation d = decompose_transformation(t);
  for (int i = 0; i < act.group.order; ++i)
    CHECK(dist(d.equivalence_part.V[i],
               AlgElement::identity(act.algebra)) < 1e-12);
}

TEST_CASE("modifications: identity and induced") {
  BSAction act = clock3();
  Transformation t = Transformation::identity(act);
  Modification m{t, t, AlgElement::identity(act.algebra)};
  CHECK(verify_modification(m).pass());

  Rng rng(29);
  AlgElement w = rng.random_unitary(act.algebra);
  Transformation t2 = induce_modified_transformation(t, w);
  CHECK(verify_transformation(t2).pass());
  Modification m2{t, t2, w};
  CHECK(verify_modification(m2).pass());

  // a unitary that does not satisfy the conjugation relation fails
  Modification bad{t, t2, rng.random_unitary(act.algebra)};
  CHECK(!verify_modification(bad).pass());
}

TEST_CASE("modification between conjugate covariant representations") {
  BSAction act = clock3();
  std::vector<AlgElement> v = word_reps(act, 3);
  Transformation rep1;
  rep1.source = act;
  rep1.target = BSAction::trivial(act.group, act.algebra);
  rep1.f = StarHom::identity(act.algebra);
  rep1.V = v;
  REQUIRE(verify_transformation(rep1).pass());
  Rng rng(31);
  AlgElement w = rng.random_unitary(act.algebra);
  Transformation rep2 = induce_modified_transformation(rep1, w);
  CHECK(verify_transformation(rep2).pass());
  Modification m{rep1, rep2, w};
  CHECK(verify_modification(m).pass());
}

TEST_CASE("induced transformation with W = V_1 adjoint") {
  Rng rng(37);
  FiniteGroup g = FiniteGroup::cyclic(2);
  MatAlg a({2}, "M2");
  BSAction act = random_twisted_action(g, a, rng);
  std::vector<AlgElement> v;
  for (int i = 0; i < g.order; ++i) v.push_back(rng.random_unitary(a));
  Transformation t;
  t.source = apply_equivalence(act, v);
  t.target = act;
  t.f = StarHom::identity(a);
  t.V = v;
  Transformation t2 = induce_modified_transformation(t, t.V[0].adjoint());
  CHECK(verify_transformation(t2).pass());
  CHECK(dist(t2.V[0] * t2.target.u, t2.f.apply(t2.source.u)) < 1e-9);
}

TEST_CASE("vertical composition of modifications passes") {
  BSAction act = clock3();
  Transformation t = Transformation::identity(act);
  Rng rng(41);
  AlgElement w1 = rng.random_unitary(act.algebra);
  AlgElement w2 = rng.random_unitary(act.algebra);
  Transformation t1 = induce_modified_transformation(t, w1);
  Transformation t2 = induce_modified_transformation(t1, w2);
  Modification m{t, t2, w2 * w1};
  CHECK(verify_modification(m).pass());
}
