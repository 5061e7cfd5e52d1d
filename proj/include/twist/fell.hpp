#pragma once

#include <memory>

#include "twist/actions.hpp"

// Saturated bundles of fibres over a finite group, with multiplication and
// involution tensors on coordinate fibres; the bidirectional translation
// between such bundles and actions by correspondences; bundle
// correspondences / Morita equivalences and their relation to
// transformations; bundle representations.

namespace twist {

struct CorrTransformation;

// Fibres are abstract coordinate spaces C^{d_g} with explicit structure
// tensors. mult[g1][g2] maps x (x) y (Kronecker order, index i*d2+j) to the
// fibre at g1*g2. star[g] is applied to conjugated coordinates:
// coords(xi^*) = star[g] * conj(coords(xi)).
struct FellBundle {
  FiniteGroup group;
  MatAlg base;  // C* structure of the unit fibre
  std::vector<int> dims;
  std::vector<std::vector<Mat>> mult;  // d_{g1g2} x (d_{g1} * d_{g2})
  std::vector<Mat> star;               // d_{g^-1} x d_g
  // Linear iso base -> unit fibre on flattened coordinates, d_1 x dim(base);
  // must be multiplicative and star-preserving.
  Mat unit_iso;
  // Provenance: when the bundle is built from an action we keep the fibre
  // correspondences (with matching frames) and the action itself, so that
  // inversion reproduces the input exactly.
  std::vector<Correspondence> carrier;
  std::shared_ptr<CorrAction> origin;

  int d(int g) const { return dims[g]; }
  // Pull a unit-fibre coordinate vector back to an algebra element.
  AlgElement from_unit(const Vec& x) const;
  Vec to_unit(const AlgElement& a) const;
};

VerificationReport verify_fell(const FellBundle& b, Tolerance tol = {});
bool check_saturated(const FellBundle& b, double eps = 1e-7);

// The group ring as a bundle: every fibre is C, multiplication is the scalar
// product, involution is conjugation.
FellBundle group_algebra_bundle(const FiniteGroup& g);
// Constant bundle with fibre B everywhere (trivial action).
FellBundle constant_bundle(const FiniteGroup& g, const MatAlg& b);
// A valid but non-saturated bundle: fibre a at the unit, zero elsewhere.
FellBundle unit_only_bundle(const FiniteGroup& g, const MatAlg& a);

// Fibre at g is the module of alpha_{g^-1}; multiplication comes from the
// coherence bigons, the involution from the dual-module pairing solved
// against the right inner product. The returned bundle carries the unit
// bigon as its unit fibre iso.
FellBundle action_to_fell(const CorrAction& act, Tolerance tol = {});
// Inverse construction; rejects non-saturated bundles. When the bundle
// remembers its originating action that action is returned unchanged,
// otherwise the fibres are realised as projection-cut modules through a
// normalised generating frame.
CorrAction fell_to_action(const FellBundle& b, Tolerance tol = {});

// A transformation between actions by correspondences: an arrow gamma
// together with bigons V[g]: gamma (x) beta_g => alpha_g (x) gamma.
struct CorrTransformation {
  CorrAction source, target;
  Correspondence gamma;
  std::vector<Intertwiner> V;
};

VerificationReport verify_corr_transformation(const CorrTransformation& t,
                                              Tolerance tol = {});
// The image of a unitary-cocycle transformation: gamma is the graph of f
// and the bigons act by multiplication with the V_g.
CorrTransformation corr_transformation_from_bs(const Transformation& t);

// A graded bimodule between two bundles over the same group, with a
// B-valued inner product (conjugate-linear in the first slot) and an
// optional A-valued one (conjugate-linear in the second slot; present
// exactly when the data is a Morita equivalence).
struct FellCorrespondence {
  FellBundle a, b;
  std::vector<int> dims;  // e_g
  std::vector<std::vector<Mat>> lmul;     // e_{g1g2} x (dA_{g1} * e_{g2})
  std::vector<std::vector<Mat>> rmul;     // e_{g1g2} x (e_{g1} * dB_{g2})
  std::vector<std::vector<Mat>> inner_b;  // dB_{g1^-1 g2} x (e_{g1} * e_{g2})
  std::vector<std::vector<Mat>> inner_a;  // dA_{g1 g2^-1} x (e_{g1} * e_{g2})
  bool has_left = false;
  std::shared_ptr<CorrTransformation> origin;
};

VerificationReport verify_fell_correspondence(const FellCorrespondence& c,
                                              Tolerance tol = {});
// Gamma = B with <xi, eta>_A = xi eta^*, <xi, eta>_B = xi^* eta.
FellCorrespondence identity_fell_equivalence(const FellBundle& b);

// Gamma_g := alpha_{g^-1} (x) gamma with module structures built from the
// bigons; produces a Morita equivalence when gamma is invertible.
FellCorrespondence transformation_to_fell_correspondence(
    const CorrTransformation& t, Tolerance tol = {});
CorrTransformation fell_correspondence_to_transformation(
    const FellCorrespondence& c, Tolerance tol = {});

// A representation on a Hilbert module over b: operators pi[g][j] for the
// j-th basis vector of the fibre at g, acting on the embedded module space.
struct FellRepresentation {
  FellBundle bundle;
  HilbertModule space;
  std::vector<Mat> space_basis;
  std::vector<std::vector<Mat>> pi;
};

VerificationReport verify_fell_representation(const FellRepresentation& r,
                                              Tolerance tol = {});
// Reads a correspondence into a constant bundle as a representation.
FellRepresentation representation_from_fell_correspondence(
    const FellCorrespondence& c);

}  // namespace twist
