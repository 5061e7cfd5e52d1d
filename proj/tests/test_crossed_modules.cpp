#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twist/crossed.hpp"
#include "twist/samples.hpp"

using namespace twist;

namespace {

// G = H = S3 acting on M6 through the left regular representation:
// alpha_g = Ad(P_g), omega = 1, v_h = P_h. All three strict laws hold
// exactly.
CMAction regular_s3_action() {
  FiniteGroup s3 = FiniteGroup::symmetric3();
  MatAlg m6({6}, "M6");
  auto perm = [&](int g) {
    AlgElement p = AlgElement::zero(m6);
    for (int x = 0; x < 6; ++x) p.blocks[0](s3.mul(g, x), x) = 1.0;
    return p;
  };
  CMAction act;
  act.cm = conjugation_crossed_module(s3);
  act.action = BSAction::trivial(s3, m6);
  for (int g = 0; g < 6; ++g) {
    act.action.alpha[g] = ad_unitary(perm(g));
    act.v.push_back(perm(g));
  }
  return act;
}

}  // namespace

TEST_CASE("crossed module with trivial H validates") {
  CHECK(validate_crossed_module(trivial_crossed_module(FiniteGroup::cyclic(2)))
            .pass());
}

TEST_CASE("inclusion of Z/2 into Z/4 validates") {
  CHECK(validate_crossed_module(inclusion_crossed_module()).pass());
}

TEST_CASE("conjugation crossed module of S3 validates") {
  CHECK(validate_crossed_module(
            conjugation_crossed_module(FiniteGroup::symmetric3()))
            .pass());
}

TEST_CASE("corrupting the conjugation action breaks the Peiffer identity") {
  CrossedModule cm = conjugation_crossed_module(FiniteGroup::symmetric3());
  std::swap(cm.c[1][1], cm.c[1][2]);
  CHECK(!validate_crossed_module(cm).pass());
}

TEST_CASE("extended bigon unitary at the unit of H is 1") {
  CMAction act = weak_cm_action(3);
  AlgElement one = AlgElement::identity(act.action.algebra);
  for (int g = 0; g < act.action.group.order; ++g)
    CHECK(dist(extend_v(act, act.cm.h.identity, g), one) < 1e-12);
}

TEST_CASE("extended bigon unitary at g = 1 is v_h itself") {
  CMAction act = weak_cm_action(3);
  for (int h = 0; h < 3; ++h)
    CHECK(dist(extend_v(act, h, act.action.group.identity), act.v[h]) <
          1e-12);
}

TEST_CASE("scalar v over the clock-shift action extends by the formula") {
  CMAction act = weak_cm_action(3);
  for (int h = 0; h < 3; ++h)
    for (int g = 0; g < 9; ++g) {
      AlgElement expected = act.action.omega[0][g] * act.v[h] *
                            act.action.omega[0][g].adjoint();
      CHECK(dist(extend_v(act, h, g), expected) < 1e-12);
    }
}

TEST_CASE("strict Green-type twist verifies with the strict flag set") {
  VerificationReport rep = verify_cm_action(green_cm_action());
  CHECK(rep.pass());
  for (const auto& e : rep.entries)
    if (e.law == "strict") CHECK(e.worst == "yes");
}

TEST_CASE("weak instance over the clock-shift action verifies") {
  VerificationReport rep = verify_cm_action(weak_cm_action(3));
  CHECK(rep.pass());
  for (const auto& e : rep.entries)
    if (e.law == "strict") CHECK(e.worst == "no");
}

TEST_CASE("regular S3 instance is a strict crossed-module action") {
  VerificationReport rep = verify_cm_action(regular_s3_action());
  CHECK(rep.pass());
  for (const auto& e : rep.entries) {
    if (e.law == "strict") CHECK(e.worst == "yes");
    if (e.law == "strict-product-law") CHECK(e.residual < 1e-12);
    if (e.law == "strict-conjugation-law") CHECK(e.residual < 1e-12);
  }
}

TEST_CASE("swapping a product value of v fails in a non-commuting instance") {
  CMAction act = regular_s3_action();
  const FiniteGroup& h = act.cm.h;
  // find a non-commuting pair
  int h1 = -1, h2 = -1;
  for (int a = 0; a < h.order && h1 < 0; ++a)
    for (int b = 0; b < h.order; ++b)
      if (h.mul(a, b) != h.mul(b, a)) {
        h1 = a;
        h2 = b;
        break;
      }
  REQUIRE(h1 >= 0);
  act.v[h.mul(h1, h2)] = act.v[h.mul(h2, h1)];
  CHECK(!verify_cm_action(act).pass());
}

TEST_CASE("general conditions agree with the strict laws on strict data") {
  for (CMAction act : {green_cm_action(), regular_s3_action()}) {
    VerificationReport rep = verify_cm_action(act);
    CHECK(rep.pass());
    // corrupt one v entry: both the general rectangles and the strict laws
    // must now disagree with the data
    act.v[1] = act.v[1] * cx(0.0, 1.0);
    VerificationReport bad = verify_cm_action(act);
    CHECK(!bad.pass());
    for (const auto& e : bad.entries)
      if (e.law == "strict") CHECK(e.worst == "no");
  }
}

TEST_CASE("an action with trivial H verifies iff its cocycle part does") {
  Rng rng(41);
  CMAction act;
  act.cm = trivial_crossed_module(FiniteGroup::cyclic(3));
  act.action =
      random_twisted_action(FiniteGroup::cyclic(3), MatAlg({2}, "M2"), rng);
  act.v = {AlgElement::identity(act.action.algebra)};
  CHECK(verify_cm_action(act).pass());
  act.action.omega[1][2] = act.action.omega[1][2] * cx(0.0, 1.0);
  CHECK(!verify_cm_action(act).pass());
}

TEST_CASE("identity transformation of a crossed-module action verifies") {
  CMAction act = weak_cm_action(2);
  CHECK(verify_cm_transformation(CMTransformation::identity(act)).pass());
}

TEST_CASE("Green-style exterior equivalence with multiplicative V") {
  CMAction target = green_cm_action();
  const MatAlg& m2 = target.action.algebra;
  // V is a representation of Z/2, so the strict cocycle condition
  // V_{g1 g2} = V_{g1} beta_{g1}(V_{g2}) holds exactly
  std::vector<AlgElement> v = {AlgElement::identity(m2),
                               AlgElement::zero(m2)};
  v[1].blocks[0] << 1, 0, 0, -1;
  CMTransformation t;
  t.target = target;
  t.source = target;
  t.source.action = apply_equivalence(target.action, v);
  for (int h = 0; h < 2; ++h)
    t.source.v[h] = v[target.cm.partial[h]] * target.v[h] *
                    v[target.action.group.identity].adjoint();
  t.f = StarHom::identity(m2);
  t.V = v;
  CHECK(verify_cm_action(t.source).pass());
  CHECK(verify_cm_transformation(t).pass());
}

TEST_CASE("transported v makes the twisting unitaries a CM equivalence") {
  Rng rng(47);
  CMAction target = green_cm_action();
  const MatAlg& m2 = target.action.algebra;
  std::vector<AlgElement> v;
  for (int i = 0; i < 2; ++i) v.push_back(rng.random_unitary(m2));
  CMTransformation t;
  t.target = target;
  t.source = target;
  t.source.action = apply_equivalence(target.action, v);
  for (int h = 0; h < 2; ++h)
    t.source.v[h] = v[target.cm.partial[h]] * target.v[h] *
                    v[target.action.group.identity].adjoint();
  t.f = StarHom::identity(m2);
  t.V = v;
  CHECK(verify_cm_action(t.source).pass());
  CHECK(verify_cm_transformation(t).pass());
}

TEST_CASE("forgetting to twist a non-central v breaks naturality") {
  // G = H = Z/2 with the identity boundary, acting on M2 through the flip;
  // here v_1 is not central, so the transport along V is visible
  Rng rng(53);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  MatAlg m2({2}, "M2");
  AlgElement flip = AlgElement::zero(m2);
  flip.blocks[0] << 0, 1, 1, 0;
  CMAction target;
  target.cm = conjugation_crossed_module(z2);
  target.action = BSAction::trivial(z2, m2);
  target.action.alpha[1] = ad_unitary(flip);
  target.v = {AlgElement::identity(m2), flip};
  REQUIRE(verify_cm_action(target).pass());

  std::vector<AlgElement> v;
  for (int i = 0; i < 2; ++i) v.push_back(rng.random_unitary(m2));
  CMTransformation t;
  t.target = target;
  t.source = target;  // v left untransported
  t.source.action = apply_equivalence(target.action, v);
  t.f = StarHom::identity(m2);
  t.V = v;
  CHECK(!verify_cm_transformation(t).pass());

  // with the transported v the same data verifies
  for (int h = 0; h < 2; ++h)
    t.source.v[h] =
        v[target.cm.partial[h]] * target.v[h] * v[z2.identity].adjoint();
  CHECK(verify_cm_action(t.source).pass());
  CHECK(verify_cm_transformation(t).pass());
}

TEST_CASE("identity modification verifies") {
  CMAction act = green_cm_action();
  CMTransformation t = CMTransformation::identity(act);
  CMModification m{t, t, AlgElement::identity(act.action.algebra)};
  CHECK(verify_cm_modification(m).pass());
}

TEST_CASE("conjugating a transformation by a unitary is a modification") {
  Rng rng(59);
  CMAction act = green_cm_action();
  CMTransformation t = CMTransformation::identity(act);
  AlgElement w = rng.random_unitary(act.action.algebra);
  Transformation moved = induce_modified_transformation(t.bs(), w);
  CMTransformation t2 = t;
  t2.f = moved.f;
  t2.V = moved.V;
  CHECK(verify_cm_transformation(t2).pass());
  CMModification m{t, t2, w};
  CHECK(verify_cm_modification(m).pass());

  CMModification bad{t, t2, w * cx(0.0, 1.0) + w};
  CHECK(!verify_cm_modification(bad).pass());
}
