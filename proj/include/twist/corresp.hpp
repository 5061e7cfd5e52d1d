#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twist/core.hpp"

// Hilbert bimodules between block matrix algebras, realised as
// projection-cut free modules: the module over B of rank k is p B^k for a
// projection p in M_k(B). Module elements are stored as "tall" matrices of
// shape (k*Nb) x Nb whose k row blocks are embedded elements of B; the inner
// product <xi, eta>_B is xi^* eta, computed as a plain matrix product.

namespace twist {

struct HilbertModule {
  MatAlg base;  // B
  int rank = 0;
  Mat proj;  // embedded (rank*Nb) x (rank*Nb), entries in M_rank(B)

  HilbertModule() = default;
  HilbertModule(MatAlg b, int k, Mat p);

  int esize() const { return rank * base.nrows(); }
  // Linear dimension over the complex numbers of the cut module.
  int cdim() const;
};

struct Correspondence {
  MatAlg left;  // A
  HilbertModule mod;
  // Images of the flattened basis of A under the left action, as embedded
  // matrices in the corner p M_k(B) p.
  std::vector<Mat> act;
  // Optional distinguished complex-linear basis of the module, as tall
  // matrices. When absent a deterministic one is computed on demand.
  std::vector<Mat> frame;

  const MatAlg& right() const { return mod.base; }
  Mat pi(const AlgElement& a) const;
  Mat pi_embedded(const Mat& a_embedded) const;
};

struct Intertwiner {
  Correspondence source, target;
  // Matrix in M_{k_target x k_source}(B), embedded.
  Mat u;

  Intertwiner() = default;
  Intertwiner(Correspondence s, Correspondence t, Mat m);

  Mat apply(const Mat& xi) const { return u * xi; }
  Intertwiner adjoint() const;
  // Vertical composition: this after inner.
  Intertwiner compose(const Intertwiner& inner) const;
  static Intertwiner identity(const Correspondence& e);
};

// Flattened coordinates of module elements (length rank * dim B).
Vec flatten_module(const HilbertModule& m, const Mat& xi);
Mat unflatten_module(const HilbertModule& m, const Vec& v);

// <xi, eta>_B = sum_i xi_i^* eta_i.
AlgElement module_inner(const HilbertModule& m, const Mat& xi, const Mat& eta);

// A deterministic complex-linear orthonormal basis of p B^k, or the stored
// frame when present.
std::vector<Mat> module_basis(const Correspondence& e);
// Coordinates of a module element in a given basis (assumes the basis spans).
Vec module_coords(const HilbertModule& m, const std::vector<Mat>& basis,
                  const Mat& xi);

bool in_matrix_pattern(const MatAlg& b, int rank, const Mat& m,
                       double eps = 1e-7);

VerificationReport check_correspondence(const Correspondence& e,
                                        Tolerance tol = {});
VerificationReport check_intertwiner(const Intertwiner& w, Tolerance tol = {});

Correspondence correspondence_from_hom(const StarHom& f);
Correspondence identity_correspondence(const MatAlg& a);

// Balanced tensor product E (x)_B F for E: A -> B and F: B -> C.
Correspondence tensor(const Correspondence& e, const Correspondence& f);
// Elementary tensor of module elements.
Mat tensor_elem(const Correspondence& e, const Correspondence& f,
                const Mat& xi, const Mat& eta);
// Functorial tensor of intertwiners.
Intertwiner tensor_int(const Intertwiner& u, const Intertwiner& v);

Intertwiner associator(const Correspondence& e, const Correspondence& f,
                       const Correspondence& g);
// left: [Id_A] (x) E -> E, right: E (x) [Id_B] -> E.
std::pair<Intertwiner, Intertwiner> unitors(const Correspondence& e);

struct EquivalenceWitness {
  bool ok = false;
  int corner_dim = 0;
  bool injective = false;
};

EquivalenceWitness is_equivalence(const Correspondence& e, double eps = 1e-7);

// A-valued inner product <xi, eta>_A defined by pi(<xi,eta>_A) = xi eta^*;
// only meaningful when is_equivalence holds.
AlgElement left_inner(const Correspondence& e, const Mat& xi, const Mat& eta);

struct Trivialization {
  Intertwiner witness;  // E -> [phi]
  StarHom phi;
};

// Unitary module isomorphism E = B (free of rank one) read through a frame
// column of p; throws NotTrivializable.
Trivialization trivialize(const Correspondence& e, double eps = 1e-7);

}  // namespace twist
