#pragma once

#include "twist/crossed.hpp"
#include "twist/fell.hpp"

// Untwisting of unitary-cocycle actions by tensoring with the matrix
// algebra of the group's coordinate space, and the full strictification
// pipeline for weak crossed-module actions by correspondences: first the
// arrows are trivialised to honest *-automorphisms, then the cocycle is
// absorbed into explicit unitaries on the inflated algebra.

namespace twist {

// B (x) M_n: every block dimension is multiplied by n. Entry (r1, c1) of a
// block tensor factor sits at (r1 * n + r2, c1 * n + c2) in the inflated
// block.
MatAlg matrix_tensor_algebra(const MatAlg& b, int n);

// a (x) m for a square matrix m; the result lives in
// matrix_tensor_algebra(a.alg, m.rows()).
AlgElement elem_tensor(const AlgElement& a, const Mat& m);

// f (x) id_n acting block-slice by block-slice.
StarHom inflate_hom(const StarHom& f, int n);

// The unital corner embedding a |-> a (x) 1_n.
StarHom inflation_embedding(const MatAlg& b, int n);

// Apply f (x) id_n to an element of matrix_tensor_algebra(f.source, n)
// without forming the inflated hom matrix.
AlgElement inflate_apply(const StarHom& f, int n, const AlgElement& x);

// (beta (x) id, omega (x) 1, u (x) 1) on B (x) M_{|G|}. Throws NotVerified
// when the input fails verification.
BSAction stabilize_action(const BSAction& act, Tolerance tol = {});

// The stabilisation of a unitary-cocycle action together with the
// untwisting unitaries V_g = sum_h omega(g, g^-1 h) (x) e_{h, g^-1 h} and
// the resulting untwisted action beta'_g = Ad(V_g) o (beta_g (x) id),
// whose cocycle is trivial up to roundoff.
struct StabilizedAction {
  BSAction original;
  MatAlg stabilized;           // B (x) M_{|G|}
  std::vector<AlgElement> V;   // unitaries of the stabilised algebra
  BSAction result;             // untwisted: omega' = 1, u' = 1

  // (Id, V) is a passing transformation from result to the stabilised
  // input action.
  Transformation witness() const;
};

StabilizedAction packer_raeburn(const BSAction& act, Tolerance tol = {});

// How far the family g |-> alpha_g is from being multiplicative, assuming
// the twisting unitaries implement composition: the defect is the operator
// distance of conjugation by omega(g1, g2) from the identity map,
// maximised over all pairs. On a block whose twisting unitary has
// eigenvalues z_p this conjugation scales matrix units by z_p conj(z_q),
// so the distance equals max |z_p conj(z_q) - 1|.
double composition_defect(const BSAction& act);

// A weak crossed-module action whose underlying action is given by
// correspondences; v[h] is the bigon alpha_1 => alpha_{partial(h)}.
struct CMCorrAction {
  CrossedModule cm;
  CorrAction action;
  std::vector<Intertwiner> v;  // indexed by H
};

CMCorrAction cm_corr_from_bs(const CMAction& act);

// Result of the strictification pipeline. The intermediate action is the
// unitary-cocycle form of the input obtained by trivialising every arrow;
// the output is the strict crossed-module action on the stabilised
// algebra. witness composes the corner embedding with the untwisting
// unitaries, so that together with corr_witness the chain connects the
// input to the output.
struct StrictificationResult {
  CMAction intermediate;
  std::vector<Intertwiner> trivialisers;  // alpha_g -> [phi_g]
  // From the input action to the correspondence form of the intermediate.
  CorrTransformation corr_witness;
  StabilizedAction stab;
  CMAction output;  // strict: omega = 1, u = 1, v'' satisfies the strict laws
  // From the intermediate to the output; f is the corner embedding.
  CMTransformation witness;
  // Identification of the final carrier. A finite-dimensional algebra is
  // never isomorphic to its inflation by n > 1, so the stabilised algebra
  // stays the carrier and this records the identity on it.
  StarHom phi;
};

// Throws InvalidCrossedModule, NotVerified, or NotTrivializable.
StrictificationResult strictify(const CMCorrAction& in, Tolerance tol = {});

}  // namespace twist
