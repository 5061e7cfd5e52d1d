#include "twist/actions.hpp"

namespace twist {

namespace {

std::string pair_str(const FiniteGroup& g, int a, int b) {
  return "(" + g.names[a] + "," + g.names[b] + ")";
}

std::string triple_str(const FiniteGroup& g, int a, int b, int c) {
  return "(" + g.names[a] + "," + g.names[b] + "," + g.names[c] + ")";
}

}  // namespace

BSAction BSAction::trivial(const FiniteGroup& g, const MatAlg& a) {
  BSAction act;
  act.group = g;
  act.algebra = a;
  act.alpha.assign(g.order, StarHom::identity(a));
  act.omega.assign(g.order,
                   std::vector<AlgElement>(g.order, AlgElement::identity(a)));
  act.u = AlgElement::identity(a);
  return act;
}

Transformation Transformation::identity(const BSAction& act) {
  Transformation t;
  t.source = act;
  t.target = act;
  t.f = StarHom::identity(act.algebra);
  t.V.assign(act.group.order, AlgElement::identity(act.algebra));
  return t;
}

VerificationReport verify_bs_action(const BSAction& act, Tolerance tol,
                                    CheckDepth depth) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& G = act.group;
  const MatAlg& A = act.algebra;
  int N = G.order;
  if (static_cast<int>(act.alpha.size()) != N ||
      static_cast<int>(act.omega.size()) != N)
    throw ShapeMismatch("action tables have wrong size");

  if (depth == CheckDepth::Full) {
    double hom_res = 0;
    for (int g = 0; g < N; ++g)
      hom_res = std::max(hom_res,
                         check_star_hom(act.alpha[g], tol).max_residual());
    rep.add("alpha-star-homs", hom_res);
  }
  bool inv = true;
  for (int g = 0; g < N; ++g)
    if (!act.alpha[g].invertible()) inv = false;
  rep.add_flag("alpha-invertible", inv);

  double uni = 0;
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2) {
      const AlgElement& w = act.omega[g1][g2];
      uni = std::max(uni, dist(w * w.adjoint(), AlgElement::identity(A)));
      uni = std::max(uni, dist(w.adjoint() * w, AlgElement::identity(A)));
    }
  uni = std::max(uni, dist(act.u * act.u.adjoint(), AlgElement::identity(A)));
  rep.add("omega-u-unitary", uni);

  // omega(g1,g2) alpha_g1(alpha_g2(a)) omega(g1,g2)* = alpha_{g1 g2}(a)
  double twist_res = 0;
  std::string twist_worst;
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2) {
      const AlgElement& w = act.omega[g1][g2];
      const StarHom& a12 = act.alpha[G.mul(g1, g2)];
      for (int mu = 0; mu < A.dim(); ++mu) {
        AlgElement e = basis_element(A, mu);
        double r = dist(w * act.alpha[g1].apply(act.alpha[g2].apply(e)) *
                            w.adjoint(),
                        a12.apply(e));
        if (r > twist_res) {
          twist_res = r;
          twist_worst = pair_str(G, g1, g2);
        }
      }
    }
  rep.add("omega-implements-composition", twist_res, twist_worst);

  // u a u* = alpha_1(a)
  double unit_res = 0;
  for (int mu = 0; mu < A.dim(); ++mu) {
    AlgElement e = basis_element(A, mu);
    unit_res = std::max(unit_res, dist(act.u * e * act.u.adjoint(),
                                       act.alpha[G.identity].apply(e)));
  }
  rep.add("u-implements-alpha1", unit_res);

  // omega*(1,g) = u and omega*(g,1) = alpha_g(u)
  double norm_res = 0;
  std::string norm_worst;
  for (int g = 0; g < N; ++g) {
    double r1 = dist(act.omega_star(G.identity, g), act.u);
    double r2 = dist(act.omega_star(g, G.identity),
                     act.alpha[g].apply(act.u));
    if (std::max(r1, r2) > norm_res) {
      norm_res = std::max(r1, r2);
      norm_worst = G.names[g];
    }
  }
  rep.add("omega-unit-normalisation", norm_res, norm_worst);

  // alpha_g1(omega*(g2,g3)) omega*(g1, g2 g3) = omega*(g1,g2) omega*(g1 g2, g3)
  double coc_res = 0;
  std::string coc_worst;
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2)
      for (int g3 = 0; g3 < N; ++g3) {
        AlgElement lhs = act.alpha[g1].apply(act.omega_star(g2, g3)) *
                         act.omega_star(g1, G.mul(g2, g3));
        AlgElement rhs =
            act.omega_star(g1, g2) * act.omega_star(G.mul(g1, g2), g3);
        double r = dist(lhs, rhs);
        if (r > coc_res) {
          coc_res = r;
          coc_worst = triple_str(G, g1, g2, g3);
        }
      }
  rep.add("cocycle", coc_res, coc_worst);

  rep.add("u-is-omega-star-11",
          dist(act.u, act.omega_star(G.identity, G.identity)));
  return rep;
}

CorrAction corr_action_from_bs(const BSAction& act) {
  CorrAction c;
  c.group = act.group;
  c.algebra = act.algebra;
  for (int g = 0; g < act.group.order; ++g)
    c.alpha.push_back(correspondence_from_hom(act.alpha[g]));
  c.omega.resize(act.group.order);
  for (int g1 = 0; g1 < act.group.order; ++g1)
    for (int g2 = 0; g2 < act.group.order; ++g2) {
      Correspondence src = tensor(c.alpha[g2], c.alpha[g1]);
      c.omega[g1].push_back(Intertwiner(
          std::move(src), c.alpha[act.group.mul(g1, g2)],
          act.omega[g1][g2].embedded()));
    }
  c.u = Intertwiner(identity_correspondence(act.algebra),
                    c.alpha[act.group.identity], act.u.embedded());
  return c;
}

BSAction bs_action_from_corr(const CorrAction& act) {
  BSAction b;
  b.group = act.group;
  b.algebra = act.algebra;
  const MatAlg& A = act.algebra;
  for (int g = 0; g < act.group.order; ++g) {
    const Correspondence& e = act.alpha[g];
    if (e.mod.rank != 1 ||
        dist(AlgElement::from_embedded(A, e.mod.proj),
             AlgElement::identity(A)) > 1e-9)
      throw NotVerified("arrow is not a free rank-one correspondence");
    b.alpha.push_back(StarHom::from_action(A, A, [&](const AlgElement& x) {
      return AlgElement::from_embedded(A, e.pi(x));
    }));
  }
  b.omega.resize(act.group.order);
  for (int g1 = 0; g1 < act.group.order; ++g1)
    for (int g2 = 0; g2 < act.group.order; ++g2)
      b.omega[g1].push_back(
          AlgElement::from_embedded(A, act.omega[g1][g2].u));
  b.u = AlgElement::from_embedded(A, act.u.u);
  return b;
}

VerificationReport verify_corr_action(const CorrAction& act, Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& G = act.group;
  int N = G.order;
  if (static_cast<int>(act.alpha.size()) != N ||
      static_cast<int>(act.omega.size()) != N)
    throw ShapeMismatch("action tables have wrong size");

  double corr_res = 0;
  for (int g = 0; g < N; ++g)
    corr_res = std::max(
        corr_res, check_correspondence(act.alpha[g], tol).max_residual());
  rep.add("arrows-are-correspondences", corr_res);

  bool equiv = true;
  for (int g = 0; g < N; ++g)
    if (!is_equivalence(act.alpha[g]).ok) equiv = false;
  rep.add_flag("arrows-are-equivalences", equiv);

  double bigon_res = check_intertwiner(act.u, tol).max_residual();
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2)
      bigon_res = std::max(
          bigon_res, check_intertwiner(act.omega[g1][g2], tol).max_residual());
  rep.add("bigons-are-unitary-intertwiners", bigon_res);

  // associativity coherence
  double assoc_res = 0;
  std::string assoc_worst;
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2)
      for (int g3 = 0; g3 < N; ++g3) {
        const Correspondence& e1 = act.alpha[g1];
        const Correspondence& e3 = act.alpha[g3];
        Intertwiner patha = act.omega[g1][G.mul(g2, g3)].compose(
            tensor_int(act.omega[g2][g3], Intertwiner::identity(e1)));
        Intertwiner pathb =
            act.omega[G.mul(g1, g2)][g3]
                .compose(tensor_int(Intertwiner::identity(e3),
                                    act.omega[g1][g2]))
                .compose(associator(e3, act.alpha[g2], e1));
        double r = (patha.u - pathb.u).cwiseAbs().maxCoeff();
        if (r > assoc_res) {
          assoc_res = r;
          assoc_worst = triple_str(G, g1, g2, g3);
        }
      }
  rep.add("composition-coherence", assoc_res, assoc_worst);

  // unit coherence against both unitors
  double unit_res = 0;
  std::string unit_worst;
  for (int g = 0; g < N; ++g) {
    const Correspondence& e = act.alpha[g];
    auto [l, r] = unitors(e);
    Intertwiner left_path = act.omega[g][G.identity].compose(
        tensor_int(act.u, Intertwiner::identity(e)));
    Intertwiner right_path = act.omega[G.identity][g].compose(
        tensor_int(Intertwiner::identity(e), act.u));
    double r1 = (left_path.u - l.u).cwiseAbs().maxCoeff();
    double r2 = (right_path.u - r.u).cwiseAbs().maxCoeff();
    if (std::max(r1, r2) > unit_res) {
      unit_res = std::max(r1, r2);
      unit_worst = G.names[g];
    }
  }
  rep.add("unit-coherence", unit_res, unit_worst);
  return rep;
}

BSAction apply_equivalence(const BSAction& act,
                           const std::vector<AlgElement>& V, double eps) {
  const FiniteGroup& G = act.group;
  if (static_cast<int>(V.size()) != G.order)
    throw ShapeMismatch("need one unitary per group element");
  for (const AlgElement& v : V)
    if (!v.is_unitary(eps)) throw NotUnitary("equivalence data not unitary");

  BSAction out;
  out.group = G;
  out.algebra = act.algebra;
  for (int g = 0; g < G.order; ++g) {
    const AlgElement& v = V[g];
    const StarHom& b = act.alpha[g];
    out.alpha.push_back(
        StarHom::from_action(act.algebra, act.algebra,
                             [&](const AlgElement& x) {
                               return v * b.apply(x) * v.adjoint();
                             }));
  }
  out.omega.resize(G.order);
  for (int g1 = 0; g1 < G.order; ++g1)
    for (int g2 = 0; g2 < G.order; ++g2)
      out.omega[g1].push_back(V[G.mul(g1, g2)] * act.omega[g1][g2] *
                              act.alpha[g1].apply(V[g2].adjoint()) *
                              V[g1].adjoint());
  out.u = V[G.identity] * act.u;
  return out;
}

NormalizedAction normalize_unit(const BSAction& act, Tolerance tol) {
  if (!verify_bs_action(act, tol, CheckDepth::Laws).pass())
    throw NotVerified("normalize_unit: input action fails verification");
  std::vector<AlgElement> V(act.group.order, act.u.adjoint());
  NormalizedAction n{apply_equivalence(act, V), {}};
  n.witness.source = n.action;
  n.witness.target = act;
  n.witness.f = StarHom::identity(act.algebra);
  n.witness.V = std::move(V);
  return n;
}

VerificationReport verify_transformation(const Transformation& t,
                                         Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& G = t.source.group;
  if (!G.same_table(t.target.group))
    throw ShapeMismatch("transformation: groups differ");
  const MatAlg& A = t.source.algebra;
  const MatAlg& B = t.target.algebra;
  int N = G.order;
  if (static_cast<int>(t.V.size()) != N)
    throw ShapeMismatch("transformation: wrong number of unitaries");

  double uni = 0;
  for (const AlgElement& v : t.V) {
    uni = std::max(uni, dist(v * v.adjoint(), AlgElement::identity(B)));
    uni = std::max(uni, dist(v.adjoint() * v, AlgElement::identity(B)));
  }
  rep.add("V-unitary", uni);

  // V_g beta_g(f(a)) V_g* = f(alpha_g(a)); the basis images of the two
  // composites are the columns of the composed hom matrices, so they are
  // read off directly instead of applying the maps vector by vector
  double inter_res = 0;
  std::string inter_worst;
  const bool f_is_id =
      A.same_shape(B) && t.f.mat.isIdentity(0.0);
  for (int g = 0; g < N; ++g) {
    const AlgElement& v = t.V[g];
    AlgElement vadj = v.adjoint();
    Mat lhs_store, rhs_store;
    const Mat* lhs_cols = &t.target.alpha[g].mat;
    const Mat* rhs_cols = &t.source.alpha[g].mat;
    if (!f_is_id) {
      lhs_store = t.target.alpha[g].mat * t.f.mat;
      rhs_store = t.f.mat * t.source.alpha[g].mat;
      lhs_cols = &lhs_store;
      rhs_cols = &rhs_store;
    }
    for (int mu = 0; mu < A.dim(); ++mu) {
      AlgElement x = AlgElement::unflatten(B, lhs_cols->col(mu));
      AlgElement y = AlgElement::unflatten(B, rhs_cols->col(mu));
      double r = (v * x * vadj - y).norm();
      if (r > inter_res) {
        inter_res = r;
        inter_worst = G.names[g] + " basis " + std::to_string(mu);
      }
    }
  }
  rep.add("V-intertwines", inter_res, inter_worst);

  // f(omega_A(g1,g2)) V_g1 beta_g1(V_g2) = V_{g1 g2} omega_B(g1,g2)
  double coc_res = 0;
  std::string coc_worst;
  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2) {
      AlgElement lhs = t.f.apply(t.source.omega[g1][g2]) * t.V[g1] *
                       t.target.alpha[g1].apply(t.V[g2]);
      AlgElement rhs = t.V[G.mul(g1, g2)] * t.target.omega[g1][g2];
      double r = dist(lhs, rhs);
      if (r > coc_res) {
        coc_res = r;
        coc_worst = pair_str(G, g1, g2);
      }
    }
  rep.add("V-cocycle-compatible", coc_res, coc_worst);

  // redundant unit law: V_1 u_B = f(u_A)
  rep.add("V-unit-compatible (redundant)",
          dist(t.V[G.identity] * t.target.u, t.f.apply(t.source.u)));
  return rep;
}

DecomposedTransformation decompose_transformation(const Transformation& t,
                                                  Tolerance tol) {
  if (!verify_transformation(t, tol).pass())
    throw NotVerified("decompose_transformation: input fails verification");
  DecomposedTransformation d;
  d.twisted = apply_equivalence(t.target, t.V);
  d.strict_part.source = t.source;
  d.strict_part.target = d.twisted;
  d.strict_part.f = t.f;
  d.strict_part.V.assign(t.source.group.order,
                         AlgElement::identity(t.target.algebra));
  d.equivalence_part.source = d.twisted;
  d.equivalence_part.target = t.target;
  d.equivalence_part.f = StarHom::identity(t.target.algebra);
  d.equivalence_part.V = t.V;
  return d;
}

Transformation compose_transformations(const Transformation& t2,
                                       const Transformation& t1) {
  Transformation t;
  t.source = t1.source;
  t.target = t2.target;
  t.f = t2.f.compose(t1.f);
  for (int g = 0; g < t1.source.group.order; ++g)
    t.V.push_back(t2.f.apply(t1.V[g]) * t2.V[g]);
  return t;
}

VerificationReport verify_covariant_rep(const BSAction& act, const StarHom& f,
                                        const std::vector<AlgElement>& V,
                                        Tolerance tol) {
  Transformation t;
  t.source = act;
  t.target = BSAction::trivial(act.group, f.target);
  t.f = f;
  t.V = V;
  return verify_transformation(t, tol);
}

VerificationReport verify_modification(const Modification& m, Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const MatAlg& B = m.source.target.algebra;
  const FiniteGroup& G = m.source.source.group;
  rep.add("W-unitary",
          std::max(dist(m.W * m.W.adjoint(), AlgElement::identity(B)),
                   dist(m.W.adjoint() * m.W, AlgElement::identity(B))));

  // f'(a) = W f(a) W*
  double fres = 0;
  for (int mu = 0; mu < m.source.source.algebra.dim(); ++mu) {
    AlgElement e = basis_element(m.source.source.algebra, mu);
    fres = std::max(fres, dist(m.target.f.apply(e),
                               m.W * m.source.f.apply(e) * m.W.adjoint()));
  }
  rep.add("W-conjugates-f", fres);

  // V'_g = W V_g beta_g(W*)
  double vres = 0;
  std::string vworst;
  for (int g = 0; g < G.order; ++g) {
    double r = dist(m.target.V[g],
                    m.W * m.source.V[g] *
                        m.source.target.alpha[g].apply(m.W.adjoint()));
    if (r > vres) {
      vres = r;
      vworst = G.names[g];
    }
  }
  rep.add("W-conjugates-V", vres, vworst);
  return rep;
}

Transformation induce_modified_transformation(const Transformation& t,
                                              const AlgElement& W,
                                              double eps) {
  if (!W.is_unitary(eps))
    throw NotUnitary("induce_modified_transformation: W is not unitary");
  Transformation out;
  out.source = t.source;
  out.target = t.target;
  out.f = StarHom::from_action(
      t.source.algebra, t.target.algebra, [&](const AlgElement& a) {
        return W * t.f.apply(a) * W.adjoint();
      });
  for (int g = 0; g < t.source.group.order; ++g)
    out.V.push_back(W * t.V[g] * t.target.alpha[g].apply(W.adjoint()));
  return out;
}

}  // namespace twist
