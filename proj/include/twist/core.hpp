#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Finite-dimensional C*-algebra arithmetic: direct sums of full complex
// matrix blocks, their elements, *-homomorphisms between them, and the
// numerical comparison policy shared by every verifier in this library.

namespace twist {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Tolerance {
  double eps = 1e-9;
};

struct TwistError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotUnitary : TwistError {
  using TwistError::TwistError;
};
struct ShapeMismatch : TwistError {
  using TwistError::TwistError;
};
struct AlgebraMismatch : TwistError {
  using TwistError::TwistError;
};
struct InvalidHom : TwistError {
  using TwistError::TwistError;
};
struct NotVerified : TwistError {
  using TwistError::TwistError;
};
struct NotTrivializable : TwistError {
  using TwistError::TwistError;
};
struct NotSaturated : TwistError {
  using TwistError::TwistError;
};
struct NotEquivalence : TwistError {
  using TwistError::TwistError;
};
struct MissingUnitIso : TwistError {
  using TwistError::TwistError;
};
struct InvalidCrossedModule : TwistError {
  using TwistError::TwistError;
};
struct ParseError : TwistError {
  using TwistError::TwistError;
};

// Direct sum of full matrix algebras M_{n_1} + ... + M_{n_r}.
struct MatAlg {
  std::vector<int> block_dims;
  std::string label;

  MatAlg() = default;
  MatAlg(std::vector<int> dims, std::string lbl = "");

  // Linear dimension, sum of n_i^2.
  int dim() const;
  // Size of the block-diagonal embedding, sum of n_i.
  int nrows() const;
  int num_blocks() const { return static_cast<int>(block_dims.size()); }

  bool same_shape(const MatAlg& other) const {
    return block_dims == other.block_dims;
  }
};

struct AlgElement {
  MatAlg alg;
  std::vector<Mat> blocks;

  AlgElement() = default;
  AlgElement(MatAlg a, std::vector<Mat> b);

  static AlgElement zero(const MatAlg& a);
  static AlgElement identity(const MatAlg& a);
  // Scalar multiple of the identity.
  static AlgElement scalar(const MatAlg& a, cx s);
  // Split a block-diagonal matrix back into blocks; off-block entries must
  // vanish within eps.
  static AlgElement from_embedded(const MatAlg& a, const Mat& m,
                                  double eps = 1e-7);
  static AlgElement unflatten(const MatAlg& a, const Vec& v);

  Mat embedded() const;
  Vec flatten() const;

  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement operator*(const AlgElement& o) const;
  AlgElement operator*(cx s) const;
  AlgElement adjoint() const;
  AlgElement inverse() const;

  // Maximum block operator norm (largest singular value per block).
  double norm() const;
  bool is_unitary(double eps = 1e-9) const;
};

// Distance in the blockwise operator norm.
double dist(const AlgElement& a, const AlgElement& b);

// The mu-th basis element under the flattening order (block by block,
// row-major matrix units).
AlgElement basis_element(const MatAlg& a, int mu);

struct VerificationReport {
  struct Entry {
    std::string law;
    double residual = 0.0;
    std::string worst;
    bool pass = true;
  };
  std::vector<Entry> entries;
  double eps = 1e-9;
  double time_seconds = 0.0;

  void add(const std::string& law, double residual,
           const std::string& worst = "");
  void add_flag(const std::string& law, bool ok,
                const std::string& detail = "");
  void merge(const VerificationReport& other, const std::string& prefix = "");
  bool pass() const;
  double max_residual() const;
  std::string summary() const;
};

// A *-homomorphism stored as a dense linear map on flattened coordinates.
struct StarHom {
  MatAlg source, target;
  Mat mat;  // dim(target) x dim(source)

  StarHom() = default;
  StarHom(MatAlg s, MatAlg t, Mat m);

  static StarHom identity(const MatAlg& a);
  // Build the matrix column by column from an action on embedded matrices.
  template <class F>
  static StarHom from_action(const MatAlg& s, const MatAlg& t, F&& f) {
    Mat m(t.dim(), s.dim());
    for (int mu = 0; mu < s.dim(); ++mu) {
      AlgElement img = f(basis_element(s, mu));
      m.col(mu) = img.flatten();
    }
    return StarHom(s, t, std::move(m));
  }

  AlgElement apply(const AlgElement& a) const;
  // this after inner, i.e. a |-> this(inner(a)).
  StarHom compose(const StarHom& inner) const;
  bool invertible(double eps = 1e-9) const;
  StarHom inverse() const;
};

double dist(const StarHom& f, const StarHom& g);

VerificationReport check_star_hom(const StarHom& phi, Tolerance tol = {});

// a |-> u a u*; throws NotUnitary.
StarHom ad_unitary(const AlgElement& u, double eps = 1e-9);

bool is_positive(const AlgElement& a, Tolerance tol = {});

double spectral_norm(const AlgElement& a);

// Positive square root / inverse square root of a positive element.
AlgElement sqrt_positive(const AlgElement& a);
Mat sqrt_positive(const Mat& m);
Mat inv_sqrt_positive(const Mat& m, double threshold = 1e-12);

// Deterministic pseudo-random generators used by tests and self-checks.
struct Rng {
  explicit Rng(std::uint64_t seed);
  double uniform();            // [0, 1)
  double gauss();              // standard normal
  cx cgauss();                 // complex standard normal
  int uniform_int(int n);      // [0, n)
  Mat ginibre(int rows, int cols);
  Mat unitary(int n);          // Haar, deterministic given the seed
  AlgElement random_element(const MatAlg& a);
  AlgElement random_unitary(const MatAlg& a);
  AlgElement random_positive(const MatAlg& a);

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace twist
