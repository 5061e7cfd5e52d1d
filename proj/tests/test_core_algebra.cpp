#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twist/core.hpp"

using namespace twist;

static MatAlg m2() { return MatAlg({2}, "M2"); }

TEST_CASE("flatten and unflatten are mutually inverse") {
  MatAlg a({2, 3}, "A");
  Rng rng(11);
  AlgElement x = rng.random_element(a);
  AlgElement y = AlgElement::unflatten(a, x.flatten());
  CHECK(dist(x, y) < 1e-15);
  CHECK(a.dim() == 13);
  CHECK(a.nrows() == 5);
}

TEST_CASE("basis elements are matrix units") {
  MatAlg a({2}, "A");
  AlgElement e01 = basis_element(a, 1);
  CHECK(std::abs(e01.blocks[0](0, 1) - cx(1.0)) < 1e-15);
  CHECK(e01.blocks[0].cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("check_star_hom accepts the identity on M2") {
  auto rep = check_star_hom(StarHom::identity(m2()));
  CHECK(rep.pass());
  CHECK(rep.max_residual() < 1e-15);
}

TEST_CASE("check_star_hom rejects the transpose map") {
  // a |-> a^T is an anti-homomorphism, so multiplicativity must fail on
  // the off-diagonal matrix units: e01^T e10^T = e11 while (e01 e10)^T = e00.
  MatAlg a = m2();
  StarHom t = StarHom::from_action(a, a, [&](const AlgElement& x) {
    AlgElement y = x;
    y.blocks[0] = x.blocks[0].transpose().eval();
    return y;
  });
  auto rep = check_star_hom(t);
  CHECK(!rep.pass());
  // dist((e01 e10)^T, e01^T e10^T) = dist(e00, e11) = 1
  bool found = false;
  for (auto& e : rep.entries)
    if (e.law == "multiplicative") {
      found = true;
      CHECK(std::abs(e.residual - 1.0) < 1e-12);
    }
  CHECK(found);
}

TEST_CASE("Ad_u for u = diag(1, i) is a *-homomorphism") {
  MatAlg a = m2();
  AlgElement u = AlgElement::identity(a);
  u.blocks[0](1, 1) = cx(0, 1);
  StarHom ad = ad_unitary(u);
  CHECK(check_star_hom(ad).pass());
  // u e01 u* = -i e01
  AlgElement e01 = basis_element(a, 1);
  CHECK(dist(ad.apply(e01), e01 * cx(0, -1)) < 1e-12);
}

TEST_CASE("ad_unitary rejects non-unitaries") {
  MatAlg a = m2();
  AlgElement x = AlgElement::identity(a) * cx(2.0);
  CHECK_THROWS_AS(ad_unitary(x), NotUnitary);
}

TEST_CASE("ad_unitary permutes diagonal units under the shift") {
  MatAlg a = m2();
  AlgElement s = AlgElement::zero(a);
  s.blocks[0](0, 1) = 1;
  s.blocks[0](1, 0) = 1;
  StarHom ad = ad_unitary(s);
  AlgElement e00 = basis_element(a, 0), e11 = basis_element(a, 3);
  CHECK(dist(ad.apply(e00), e11) < 1e-12);
  CHECK(dist(ad.apply(e11), e00) < 1e-12);
}

TEST_CASE("ad_unitary with diag(1,-1) fixes diagonal and negates off-diagonal") {
  MatAlg a = m2();
  AlgElement u = AlgElement::identity(a);
  u.blocks[0](1, 1) = -1;
  StarHom ad = ad_unitary(u);
  CHECK(dist(ad.apply(basis_element(a, 0)), basis_element(a, 0)) < 1e-12);
  CHECK(dist(ad.apply(basis_element(a, 1)), basis_element(a, 1) * cx(-1)) <
        1e-12);
}

TEST_CASE("is_positive on explicit cases") {
  MatAlg a = m2();
  CHECK(is_positive(AlgElement::zero(a)));
  AlgElement d = AlgElement::identity(a);
  d.blocks[0](1, 1) = -1;
  CHECK(!is_positive(d));
  Rng rng(5);
  AlgElement b = rng.random_element(a);
  CHECK(is_positive(b.adjoint() * b));
}

TEST_CASE("spectral_norm on explicit cases") {
  MatAlg m3({3}, "M3");
  CHECK(spectral_norm(AlgElement::identity(m3)) == doctest::Approx(1.0));
  MatAlg a = m2();
  AlgElement d = AlgElement::identity(a);
  d.blocks[0](0, 0) = 2;
  d.blocks[0](1, 1) = -3;
  CHECK(spectral_norm(d) == doctest::Approx(3.0));
  // rank one xi eta* with unit vectors has norm one
  Rng rng(7);
  Eigen::VectorXcd xi(2), eta(2);
  xi << rng.cgauss(), rng.cgauss();
  eta << rng.cgauss(), rng.cgauss();
  xi.normalize();
  eta.normalize();
  AlgElement r = AlgElement::zero(a);
  r.blocks[0] = xi * eta.adjoint();
  CHECK(std::abs(spectral_norm(r) - 1.0) < 1e-12);
}

TEST_CASE("norm properties hold on random elements") {
  MatAlg a({2, 3}, "A");
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    AlgElement x = rng.random_element(a);
    AlgElement y = rng.random_element(a);
    CHECK(spectral_norm(x * y) <=
          spectral_norm(x) * spectral_norm(y) + 1e-9);
    CHECK(spectral_norm(x.adjoint() * x) ==
          doctest::Approx(spectral_norm(x) * spectral_norm(x))
              .epsilon(1e-9));
  }
}

TEST_CASE("composition of inner automorphisms") {
  MatAlg a({3}, "M3");
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    AlgElement u = rng.random_unitary(a);
    AlgElement v = rng.random_unitary(a);
    StarHom lhs = ad_unitary(u).compose(ad_unitary(v));
    StarHom rhs = ad_unitary(u * v);
    CHECK(dist(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("compositions of passing homs pass") {
  MatAlg a = m2();
  Rng rng(3);
  AlgElement u = rng.random_unitary(a);
  AlgElement v = rng.random_unitary(a);
  StarHom c = ad_unitary(u).compose(ad_unitary(v));
  CHECK(check_star_hom(c).pass());
}

TEST_CASE("random unitaries are unitary and deterministic per seed") {
  MatAlg a({2, 3}, "A");
  Rng r1(99), r2(99);
  AlgElement u1 = r1.random_unitary(a);
  AlgElement u2 = r2.random_unitary(a);
  CHECK(u1.is_unitary(1e-12));
  CHECK(dist(u1, u2) == 0.0);
}

TEST_CASE("sqrt of a positive element squares back") {
  MatAlg a({3}, "M3");
  Rng rng(8);
  AlgElement p = rng.random_positive(a);
  AlgElement s = sqrt_positive(p);
  CHECK(dist(s * s, p) < 1e-10);
  CHECK(is_positive(s));
}
