#include "twist/crossed.hpp"

#include "twist/samples.hpp"

namespace twist {

namespace {

std::string pair_name(const FiniteGroup& a, int i, const FiniteGroup& b,
                      int j) {
  return a.names[i] + "," + b.names[j];
}

StarHom ad_any(const AlgElement& v) {
  return StarHom::from_action(v.alg, v.alg, [&](const AlgElement& a) {
    return v * a * v.adjoint();
  });
}

}  // namespace

VerificationReport validate_crossed_module(const CrossedModule& cm) {
  VerificationReport rep;
  const FiniteGroup& g = cm.g;
  const FiniteGroup& h = cm.h;

  bool shape = static_cast<int>(cm.partial.size()) == h.order &&
               static_cast<int>(cm.c.size()) == g.order;
  for (const auto& row : cm.c)
    shape = shape && static_cast<int>(row.size()) == h.order;
  rep.add_flag("tables-well-formed", shape);
  if (!shape) return rep;

  bool hom = cm.partial[h.identity] == g.identity;
  std::string hom_at;
  for (int a = 0; a < h.order && hom; ++a)
    for (int b = 0; b < h.order; ++b)
      if (cm.partial[h.mul(a, b)] !=
          g.mul(cm.partial[a], cm.partial[b])) {
        hom = false;
        hom_at = pair_name(h, a, h, b);
        break;
      }
  rep.add_flag("boundary-homomorphism", hom, hom_at);

  bool action = true;
  std::string act_at;
  for (int hh = 0; hh < h.order && action; ++hh)
    if (cm.c[g.identity][hh] != hh) {
      action = false;
      act_at = h.names[hh];
    }
  for (int g1 = 0; g1 < g.order && action; ++g1) {
    std::vector<bool> seen(h.order, false);
    for (int hh = 0; hh < h.order; ++hh) {
      if (seen[cm.c[g1][hh]]) {
        action = false;
        act_at = g.names[g1];
        break;
      }
      seen[cm.c[g1][hh]] = true;
    }
    for (int a = 0; a < h.order && action; ++a)
      for (int b = 0; b < h.order; ++b)
        if (cm.c[g1][h.mul(a, b)] != h.mul(cm.c[g1][a], cm.c[g1][b])) {
          action = false;
          act_at = g.names[g1] + ":" + pair_name(h, a, h, b);
          break;
        }
    for (int g2 = 0; g2 < g.order && action; ++g2)
      for (int hh = 0; hh < h.order; ++hh)
        if (cm.c[g1][cm.c[g2][hh]] != cm.c[g.mul(g1, g2)][hh]) {
          action = false;
          act_at = pair_name(g, g1, g, g2);
          break;
        }
  }
  rep.add_flag("c-automorphism-action", action, act_at);

  bool equi = true;
  std::string equi_at;
  for (int gg = 0; gg < g.order && equi; ++gg)
    for (int hh = 0; hh < h.order; ++hh)
      if (cm.partial[cm.c[gg][hh]] !=
          g.mul(g.mul(gg, cm.partial[hh]), g.inv[gg])) {
        equi = false;
        equi_at = pair_name(g, gg, h, hh);
        break;
      }
  rep.add_flag("equivariance", equi, equi_at);

  bool peiffer = true;
  std::string pf_at;
  for (int h1 = 0; h1 < h.order && peiffer; ++h1)
    for (int h2 = 0; h2 < h.order; ++h2)
      if (cm.c[cm.partial[h1]][h2] !=
          h.mul(h.mul(h1, h2), h.inv[h1])) {
        peiffer = false;
        pf_at = pair_name(h, h1, h, h2);
        break;
      }
  rep.add_flag("peiffer-identity", peiffer, pf_at);
  return rep;
}

CrossedModule trivial_crossed_module(const FiniteGroup& g) {
  CrossedModule cm;
  cm.g = g;
  cm.h = FiniteGroup::trivial();
  cm.partial = {g.identity};
  cm.c.assign(g.order, {0});
  cm.label = g.label + ":trivial-H";
  return cm;
}

CrossedModule central_crossed_module(const FiniteGroup& g,
                                     const FiniteGroup& h) {
  CrossedModule cm;
  cm.g = g;
  cm.h = h;
  cm.partial.assign(h.order, g.identity);
  std::vector<int> id(h.order);
  for (int i = 0; i < h.order; ++i) id[i] = i;
  cm.c.assign(g.order, id);
  cm.label = h.label + "->" + g.label + ":central";
  return cm;
}

CrossedModule inclusion_crossed_module() {
  CrossedModule cm;
  cm.g = FiniteGroup::cyclic(4);
  cm.h = FiniteGroup::cyclic(2);
  cm.partial = {0, 2};
  cm.c.assign(4, {0, 1});
  cm.label = "Z2->Z4";
  return cm;
}

CrossedModule conjugation_crossed_module(const FiniteGroup& g) {
  CrossedModule cm;
  cm.g = g;
  cm.h = g;
  cm.partial.resize(g.order);
  for (int i = 0; i < g.order; ++i) cm.partial[i] = i;
  cm.c.assign(g.order, std::vector<int>(g.order));
  for (int gg = 0; gg < g.order; ++gg)
    for (int hh = 0; hh < g.order; ++hh)
      cm.c[gg][hh] = g.mul(g.mul(gg, hh), g.inv[gg]);
  cm.label = g.label + ":conjugation";
  return cm;
}

AlgElement extend_v(const CMAction& act, int h, int g) {
  const BSAction& a = act.action;
  int e = a.group.identity;
  int dh = act.cm.partial[h];
  return a.omega[dh][g] * act.v[h] * a.omega[e][g].adjoint();
}

VerificationReport verify_cm_action(const CMAction& act, Tolerance tol,
                                    CheckDepth depth) {
  if (!validate_crossed_module(act.cm).pass())
    throw InvalidCrossedModule("verify_cm_action: invalid crossed module");
  VerificationReport rep;
  rep.eps = tol.eps;
  rep.merge(verify_bs_action(act.action, tol, depth), "action:");

  const CrossedModule& cm = act.cm;
  const FiniteGroup& g = cm.g;
  const FiniteGroup& h = cm.h;
  const BSAction& a = act.action;
  int e = g.identity;
  AlgElement one = AlgElement::identity(a.algebra);

  double vu = 0;
  std::string vu_at;
  for (int hh = 0; hh < h.order; ++hh) {
    double r = dist(act.v[hh] * act.v[hh].adjoint(), one);
    if (r > vu) {
      vu = r;
      vu_at = h.names[hh];
    }
  }
  rep.add("v-unitary", vu, vu_at);

  // v_h conjugates alpha_1 into alpha_{partial(h)}
  double inner = 0;
  std::string inner_at;
  for (int hh = 0; hh < h.order; ++hh) {
    StarHom rhs = ad_any(act.v[hh]).compose(a.alpha[e]);
    double r = dist(a.alpha[cm.partial[hh]], rhs);
    if (r > inner) {
      inner = r;
      inner_at = h.names[hh];
    }
  }
  rep.add("implements-boundary", inner, inner_at);

  // vertical rectangle: v_{h1 h2} against the composite through
  // omega(1, d h2) and omega(d h1, d h2)
  double vert = 0;
  std::string vert_at;
  for (int h1 = 0; h1 < h.order; ++h1)
    for (int h2 = 0; h2 < h.order; ++h2) {
      int d1 = cm.partial[h1], d2 = cm.partial[h2];
      AlgElement rhs = a.omega[d1][d2] * act.v[h1] *
                       a.omega[e][d2].adjoint() * act.v[h2];
      double r = dist(act.v[h.mul(h1, h2)], rhs);
      if (r > vert) {
        vert = r;
        vert_at = pair_name(h, h1, h, h2);
      }
    }
  rep.add("vertical-rectangle", vert, vert_at);

  // horizontal rectangle: six-unitary square relating v_{c_g(h)} and
  // alpha_g(v_h)
  double horiz = 0;
  std::string horiz_at;
  for (int gg = 0; gg < g.order; ++gg)
    for (int hh = 0; hh < h.order; ++hh) {
      int dh = cm.partial[hh];
      AlgElement lhs =
          act.v[cm.c[gg][hh]] * a.omega[gg][g.inv[gg]] * a.omega[gg][e];
      AlgElement rhs = a.omega[g.mul(gg, dh)][g.inv[gg]] *
                       a.omega[gg][dh] * a.alpha[gg].apply(act.v[hh]);
      double r = dist(lhs, rhs);
      if (r > horiz) {
        horiz = r;
        horiz_at = pair_name(g, gg, h, hh);
      }
    }
  rep.add("horizontal-rectangle", horiz, horiz_at);

  double unit = 0;
  std::string unit_at;
  for (int gg = 0; gg < g.order; ++gg) {
    double r = dist(extend_v(act, h.identity, gg), one);
    if (r > unit) {
      unit = r;
      unit_at = g.names[gg];
    }
  }
  rep.add("unit-bigon-trivial", unit, unit_at);

  // naturality of omega against all pairs of bigons (h1, f1), (h2, f2)
  double nat = 0;
  std::string nat_at;
  for (int h1 = 0; h1 < h.order; ++h1)
    for (int f1 = 0; f1 < g.order; ++f1) {
      AlgElement va = extend_v(act, h1, f1);
      int g1 = g.mul(cm.partial[h1], f1);
      for (int h2 = 0; h2 < h.order; ++h2)
        for (int f2 = 0; f2 < g.order; ++f2) {
          AlgElement vb = extend_v(act, h2, f2);
          int g2 = g.mul(cm.partial[h2], f2);
          AlgElement lhs = a.omega[g1][g2] * va * a.alpha[f1].apply(vb);
          int hprod = h.mul(h1, cm.c[f1][h2]);
          AlgElement rhs =
              extend_v(act, hprod, g.mul(f1, f2)) * a.omega[f1][f2];
          double r = dist(lhs, rhs);
          if (r > nat) {
            nat = r;
            nat_at = pair_name(h, h1, g, f1) + ";" + pair_name(h, h2, g, f2);
          }
        }
    }
  rep.add("bigon-naturality", nat, nat_at);

  // when the cocycle part is trivial, report whether the strict laws hold
  double wdist = dist(a.u, one);
  for (int g1 = 0; g1 < g.order; ++g1)
    for (int g2 = 0; g2 < g.order; ++g2)
      wdist = std::max(wdist, dist(a.omega[g1][g2], one));
  bool strict_input = wdist <= tol.eps;
  if (strict_input) {
    double prod = 0, conj = 0;
    for (int h1 = 0; h1 < h.order; ++h1)
      for (int h2 = 0; h2 < h.order; ++h2)
        prod = std::max(prod, dist(act.v[h1] * act.v[h2],
                                   act.v[h.mul(h1, h2)]));
    for (int gg = 0; gg < g.order; ++gg)
      for (int hh = 0; hh < h.order; ++hh)
        conj = std::max(conj, dist(act.v[cm.c[gg][hh]],
                                   a.alpha[gg].apply(act.v[hh])));
    bool strict_laws = prod <= tol.eps && conj <= tol.eps;
    rep.add_flag("strict", true, strict_laws ? "yes" : "no");
    rep.add("strict-product-law", prod);
    rep.add("strict-conjugation-law", conj);
  } else {
    rep.add_flag("strict", true, "no");
  }
  return rep;
}

CMTransformation CMTransformation::identity(const CMAction& act) {
  CMTransformation t;
  t.source = act;
  t.target = act;
  t.f = StarHom::identity(act.action.algebra);
  t.V.assign(act.action.group.order,
             AlgElement::identity(act.action.algebra));
  return t;
}

VerificationReport verify_cm_transformation(const CMTransformation& t,
                                            Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  rep.merge(verify_transformation(t.bs(), tol), "transformation:");

  const CrossedModule& cm = t.source.cm;
  const FiniteGroup& g = cm.g;
  const FiniteGroup& h = cm.h;
  int e = g.identity;

  double nat = 0;
  std::string nat_at;
  for (int hh = 0; hh < h.order; ++hh) {
    double r = dist(t.V[cm.partial[hh]] * t.target.v[hh],
                    t.f.apply(t.source.v[hh]) * t.V[e]);
    if (r > nat) {
      nat = r;
      nat_at = h.names[hh];
    }
  }
  rep.add("v-naturality", nat, nat_at);

  double ext = 0;
  std::string ext_at;
  for (int hh = 0; hh < h.order; ++hh)
    for (int gg = 0; gg < g.order; ++gg) {
      AlgElement lhs =
          t.V[g.mul(cm.partial[hh], gg)] * extend_v(t.target, hh, gg);
      AlgElement rhs = t.f.apply(extend_v(t.source, hh, gg)) * t.V[gg];
      double r = dist(lhs, rhs);
      if (r > ext) {
        ext = r;
        ext_at = pair_name(h, hh, g, gg);
      }
    }
  rep.add("extended-v-naturality", ext, ext_at);
  return rep;
}

VerificationReport verify_cm_modification(const CMModification& m,
                                          Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  Modification base{m.source.bs(), m.target.bs(), m.W};
  rep.merge(verify_modification(base, tol), "");
  return rep;
}

CMAction green_cm_action() {
  CMAction act;
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  act.cm = central_crossed_module(z2, z2);
  MatAlg m2({2}, "M2");
  act.action = BSAction::trivial(z2, m2);
  act.v = {AlgElement::identity(m2), AlgElement::scalar(m2, -1.0)};
  return act;
}

CMAction weak_cm_action(int n) {
  CMAction act;
  act.action = clock_shift_action(n);
  act.cm = central_crossed_module(act.action.group, FiniteGroup::cyclic(n));
  for (int hh = 0; hh < n; ++hh)
    act.v.push_back(AlgElement::scalar(
        act.action.algebra, std::polar(1.0, 2.0 * M_PI * hh / n)));
  return act;
}

}  // namespace twist
