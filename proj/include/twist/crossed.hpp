#pragma once

#include "twist/actions.hpp"

// Finite crossed modules of groups (equivalently strict 2-groups) and their
// weak actions combining an outer cocycle twist with inner implementing
// unitaries, plus transformations and modifications between such actions.

namespace twist {

// (G, H, partial: H -> G, c: action of G on H) subject to equivariance and
// the Peiffer identity. The action c is stored as one permutation of H per
// group element.
struct CrossedModule {
  FiniteGroup g, h;
  std::vector<int> partial;           // H index -> G index
  std::vector<std::vector<int>> c;    // c[g][h] -> H index
  std::string label;

  int d(int hh) const { return partial[hh]; }
  int act(int gg, int hh) const { return c[gg][hh]; }
};

// Exact integer checks: partial and every c_g are homomorphisms, c is a
// G-action, partial(c_g(h)) = g partial(h) g^-1, and c_{partial(h)}(h') =
// h h' h^-1.
VerificationReport validate_crossed_module(const CrossedModule& cm);

// H trivial.
CrossedModule trivial_crossed_module(const FiniteGroup& g);
// partial trivial, c trivial; requires H abelian.
CrossedModule central_crossed_module(const FiniteGroup& g,
                                     const FiniteGroup& h);
// Z/2 included into Z/4 as {0, 2}, trivial conjugation.
CrossedModule inclusion_crossed_module();
// G = H, partial the identity, c conjugation.
CrossedModule conjugation_crossed_module(const FiniteGroup& g);

// A weak action of the crossed module: a unitary-cocycle action of G
// together with an implementing unitary v_h for every h in H.
struct CMAction {
  CrossedModule cm;
  BSAction action;
  std::vector<AlgElement> v;  // indexed by H
};

// The bigon unitary for the 2-morphism (h, g): g => partial(h) g, namely
// omega(partial(h), g) v_h omega(1, g)^*.
AlgElement extend_v(const CMAction& act, int h, int g);

// Checks the underlying cocycle action, that every v_h is unitary and
// implements alpha_{partial(h)} relative to alpha_1, the vertical and
// horizontal compatibility rectangles, and the naturality of omega against
// all pairs of bigons. When omega = 1 and u = 1 the report also states
// whether the three strict crossed-module laws hold.
VerificationReport verify_cm_action(const CMAction& act, Tolerance tol = {},
                                    CheckDepth depth = CheckDepth::Full);

struct CMTransformation {
  CMAction source, target;
  StarHom f;
  std::vector<AlgElement> V;  // indexed by G

  Transformation bs() const {
    return Transformation{source.action, target.action, f, V};
  }
  static CMTransformation identity(const CMAction& act);
};

// Underlying transformation laws plus V_{partial(h)} v^B_h = f(v^A_h) V_1
// and its extension to all bigons (h, g).
VerificationReport verify_cm_transformation(const CMTransformation& t,
                                            Tolerance tol = {});

struct CMModification {
  CMTransformation source, target;
  AlgElement W;
};

VerificationReport verify_cm_modification(const CMModification& m,
                                          Tolerance tol = {});

// Strict Green-type example: G = Z/2 acting trivially on M_2, H = Z/2 with
// trivial partial, v = (1, -1).
CMAction green_cm_action();
// Weak example over the clock-shift action of (Z/n)^2 on M_n with H = Z/n
// central and scalar v_h = z^h.
CMAction weak_cm_action(int n);

}  // namespace twist
