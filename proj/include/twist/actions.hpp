#pragma once

#include "twist/corresp.hpp"
#include "twist/group.hpp"

// Weak actions of a finite group: the unitary-cocycle form on a block
// matrix algebra (automorphisms alpha_g, twisting unitaries omega(g1,g2),
// unit bigon u) and the form by correspondences; transformations,
// exterior equivalences, covariant representations, and modifications.

namespace twist {

struct BSAction {
  FiniteGroup group;
  MatAlg algebra;
  std::vector<StarHom> alpha;                   // indexed by g
  std::vector<std::vector<AlgElement>> omega;   // omega[g1][g2]
  AlgElement u;

  AlgElement omega_star(int g1, int g2) const {
    return omega[g1][g2].adjoint();
  }
  static BSAction trivial(const FiniteGroup& g, const MatAlg& a);
};

struct CorrAction {
  FiniteGroup group;
  MatAlg algebra;
  std::vector<Correspondence> alpha;
  // omega[g1][g2]: tensor(alpha[g2], alpha[g1]) -> alpha[g1 g2]
  std::vector<std::vector<Intertwiner>> omega;
  Intertwiner u;  // [Id_A] -> alpha[identity]
};

struct Transformation {
  BSAction source, target;  // (A, alpha, omega_A), (B, beta, omega_B)
  StarHom f;                // A -> B
  std::vector<AlgElement> V;  // unitaries of B, indexed by g

  static Transformation identity(const BSAction& act);
};

struct Modification {
  Transformation source, target;  // (f, V) and (f', V')
  AlgElement W;                   // unitary of B
};

enum class CheckDepth { Laws, Full };

VerificationReport verify_bs_action(const BSAction& act, Tolerance tol = {},
                                    CheckDepth depth = CheckDepth::Full);
VerificationReport verify_corr_action(const CorrAction& act,
                                      Tolerance tol = {});

// The action by correspondences induced by a unitary-cocycle action:
// alpha_g becomes the rank-one correspondence of the automorphism and the
// twisting unitaries become multiplication intertwiners.
CorrAction corr_action_from_bs(const BSAction& act);
// Inverse of the above for actions whose arrows are free of rank one.
BSAction bs_action_from_corr(const CorrAction& act);

// Twist an action by a family of unitaries: beta'_g = Ad(V_g) o beta_g with
// the matching twisted cocycle and unit. (Id, V) is then a transformation
// from the result to the input (an exterior equivalence).
BSAction apply_equivalence(const BSAction& act,
                           const std::vector<AlgElement>& V,
                           double eps = 1e-9);

struct NormalizedAction {
  BSAction action;      // alpha'_1 = Id, u' = 1
  Transformation witness;  // from the normalised action to the input
};
NormalizedAction normalize_unit(const BSAction& act, Tolerance tol = {});

VerificationReport verify_transformation(const Transformation& t,
                                         Tolerance tol = {});

struct DecomposedTransformation {
  BSAction twisted;              // target twisted along V
  Transformation strict_part;    // (f, 1): source -> twisted
  Transformation equivalence_part;  // (Id, V): twisted -> target
};
DecomposedTransformation decompose_transformation(const Transformation& t,
                                                  Tolerance tol = {});

// Composite of t2 after t1 (t1: X -> Y, t2: Y -> Z).
Transformation compose_transformations(const Transformation& t2,
                                       const Transformation& t1);

// Covariant representation: a transformation into the trivially acted-on
// algebra B.
VerificationReport verify_covariant_rep(const BSAction& act, const StarHom& f,
                                        const std::vector<AlgElement>& V,
                                        Tolerance tol = {});

VerificationReport verify_modification(const Modification& m,
                                       Tolerance tol = {});

Transformation induce_modified_transformation(const Transformation& t,
                                              const AlgElement& W,
                                              double eps = 1e-9);

}  // namespace twist
