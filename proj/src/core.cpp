#include "twist/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace twist {

MatAlg::MatAlg(std::vector<int> dims, std::string lbl)
    : block_dims(std::move(dims)), label(std::move(lbl)) {
  if (block_dims.empty()) throw ShapeMismatch("algebra needs at least one block");
  for (int n : block_dims)
    if (n < 1) throw ShapeMismatch("block dimensions must be positive");
}

int MatAlg::dim() const {
  int d = 0;
  for (int n : block_dims) d += n * n;
  return d;
}

int MatAlg::nrows() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

AlgElement::AlgElement(MatAlg a, std::vector<Mat> b)
    : alg(std::move(a)), blocks(std::move(b)) {
  if (static_cast<int>(blocks.size()) != alg.num_blocks())
    throw ShapeMismatch("block count mismatch");
  for (int i = 0; i < alg.num_blocks(); ++i)
    if (blocks[i].rows() != alg.block_dims[i] ||
        blocks[i].cols() != alg.block_dims[i])
      throw ShapeMismatch("block shape mismatch");
}

AlgElement AlgElement::zero(const MatAlg& a) {
  std::vector<Mat> b;
  for (int n : a.block_dims) b.push_back(Mat::Zero(n, n));
  return AlgElement(a, std::move(b));
}

AlgElement AlgElement::identity(const MatAlg& a) {
  std::vector<Mat> b;
  for (int n : a.block_dims) b.push_back(Mat::Identity(n, n));
  return AlgElement(a, std::move(b));
}

AlgElement AlgElement::scalar(const MatAlg& a, cx s) {
  AlgElement e = identity(a);
  for (auto& blk : e.blocks) blk *= s;
  return e;
}

Mat AlgElement::embedded() const {
  int n = alg.nrows();
  Mat m = Mat::Zero(n, n);
  int off = 0;
  for (int i = 0; i < alg.num_blocks(); ++i) {
    int d = alg.block_dims[i];
    m.block(off, off, d, d) = blocks[i];
    off += d;
  }
  return m;
}

AlgElement AlgElement::from_embedded(const MatAlg& a, const Mat& m,
                                     double eps) {
  if (m.rows() != a.nrows() || m.cols() != a.nrows())
    throw ShapeMismatch("embedded matrix has wrong size");
  std::vector<Mat> blocks;
  int off = 0;
  for (int d : a.block_dims) {
    blocks.push_back(m.block(off, off, d, d));
    off += d;
  }
  AlgElement e(a, std::move(blocks));
  if ((m - e.embedded()).cwiseAbs().maxCoeff() > eps)
    throw ShapeMismatch("matrix is not block diagonal");
  return e;
}

Vec AlgElement::flatten() const {
  Vec v(alg.dim());
  int pos = 0;
  for (const Mat& b : blocks)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) v(pos++) = b(i, j);
  return v;
}

AlgElement AlgElement::unflatten(const MatAlg& a, const Vec& v) {
  if (v.size() != a.dim()) throw ShapeMismatch("flattened vector has wrong size");
  std::vector<Mat> blocks;
  int pos = 0;
  for (int d : a.block_dims) {
    Mat b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = v(pos++);
    blocks.push_back(std::move(b));
  }
  return AlgElement(a, std::move(blocks));
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
  if (!alg.same_shape(o.alg)) throw AlgebraMismatch("element addition");
  AlgElement r = *this;
  for (size_t i = 0; i < blocks.size(); ++i) r.blocks[i] += o.blocks[i];
  return r;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
  if (!alg.same_shape(o.alg)) throw AlgebraMismatch("element subtraction");
  AlgElement r = *this;
  for (size_t i = 0; i < blocks.size(); ++i) r.blocks[i] -= o.blocks[i];
  return r;
}

AlgElement AlgElement::operator*(const AlgElement& o) const {
  if (!alg.same_shape(o.alg)) throw AlgebraMismatch("element product");
  AlgElement r = *this;
  for (size_t i = 0; i < blocks.size(); ++i) r.blocks[i] *= o.blocks[i];
  return r;
}

AlgElement AlgElement::operator*(cx s) const {
  AlgElement r = *this;
  for (auto& b : r.blocks) b *= s;
  return r;
}

AlgElement AlgElement::adjoint() const {
  AlgElement r = *this;
  for (auto& b : r.blocks) b = b.adjoint().eval();
  return r;
}

AlgElement AlgElement::inverse() const {
  AlgElement r = *this;
  for (auto& b : r.blocks) b = b.inverse().eval();
  return r;
}

double AlgElement::norm() const {
  double m = 0.0;
  for (const Mat& b : blocks) {
    if (b.rows() == 1) {
      m = std::max(m, std::abs(b(0, 0)));
    } else {
      // largest singular value through the Gram matrix; cheaper than a
      // full SVD and exact to working precision for norm purposes
      Eigen::SelfAdjointEigenSolver<Mat> es(b.adjoint() * b,
                                            Eigen::EigenvaluesOnly);
      double top = es.eigenvalues().maxCoeff();
      m = std::max(m, std::sqrt(std::max(0.0, top)));
    }
  }
  return m;
}

bool AlgElement::is_unitary(double eps) const {
  return dist(adjoint() * (*this), identity(alg)) <= eps &&
         dist((*this) * adjoint(), identity(alg)) <= eps;
}

double dist(const AlgElement& a, const AlgElement& b) { return (a - b).norm(); }

AlgElement basis_element(const MatAlg& a, int mu) {
  Vec v = Vec::Zero(a.dim());
  v(mu) = 1.0;
  return AlgElement::unflatten(a, v);
}

void VerificationReport::add(const std::string& law, double residual,
                             const std::string& worst) {
  entries.push_back({law, residual, worst, residual <= eps});
}

void VerificationReport::add_flag(const std::string& law, bool ok,
                                  const std::string& detail) {
  entries.push_back({law, ok ? 0.0 : 1.0, detail, ok});
}

void VerificationReport::merge(const VerificationReport& other,
                               const std::string& prefix) {
  for (Entry e : other.entries) {
    if (!prefix.empty()) e.law = prefix + e.law;
    entries.push_back(std::move(e));
  }
}

bool VerificationReport::pass() const {
  for (const Entry& e : entries)
    if (!e.pass) return false;
  return true;
}

double VerificationReport::max_residual() const {
  double m = 0.0;
  for (const Entry& e : entries) m = std::max(m, e.residual);
  return m;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (pass() ? "PASS" : "FAIL") << " (eps=" << eps << ")\n";
  for (const Entry& e : entries) {
    os << "  " << (e.pass ? "ok  " : "FAIL") << " " << e.law
       << "  residual=" << e.residual;
    if (!e.worst.empty()) os << "  worst=" << e.worst;
    os << "\n";
  }
  return os.str();
}

StarHom::StarHom(MatAlg s, MatAlg t, Mat m)
    : source(std::move(s)), target(std::move(t)), mat(std::move(m)) {
  if (mat.rows() != target.dim() || mat.cols() != source.dim())
    throw ShapeMismatch("hom matrix has wrong shape");
}

StarHom StarHom::identity(const MatAlg& a) {
  return StarHom(a, a, Mat::Identity(a.dim(), a.dim()));
}

AlgElement StarHom::apply(const AlgElement& a) const {
  if (!a.alg.same_shape(source)) throw AlgebraMismatch("hom application");
  return AlgElement::unflatten(target, mat * a.flatten());
}

StarHom StarHom::compose(const StarHom& inner) const {
  if (!inner.target.same_shape(source))
    throw AlgebraMismatch("hom composition");
  return StarHom(inner.source, target, mat * inner.mat);
}

bool StarHom::invertible(double eps) const {
  if (mat.rows() != mat.cols()) return false;
  Eigen::JacobiSVD<Mat> svd(mat);
  return svd.singularValues()(svd.singularValues().size() - 1) > eps;
}

StarHom StarHom::inverse() const {
  if (!invertible()) throw InvalidHom("hom is not invertible");
  return StarHom(target, source, mat.inverse());
}

double dist(const StarHom& f, const StarHom& g) {
  if (!f.source.same_shape(g.source) || !f.target.same_shape(g.target))
    throw AlgebraMismatch("hom distance");
  double m = 0.0;
  for (int mu = 0; mu < f.source.dim(); ++mu) {
    AlgElement e = basis_element(f.source, mu);
    m = std::max(m, dist(f.apply(e), g.apply(e)));
  }
  return m;
}

VerificationReport check_star_hom(const StarHom& phi, Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const MatAlg& A = phi.source;
  int d = A.dim();
  std::vector<AlgElement> img;
  img.reserve(d);
  for (int mu = 0; mu < d; ++mu)
    img.push_back(phi.apply(basis_element(A, mu)));

  double mult_res = 0.0;
  std::string mult_worst;
  for (int mu = 0; mu < d; ++mu) {
    AlgElement emu = basis_element(A, mu);
    for (int nu = 0; nu < d; ++nu) {
      AlgElement prod = emu * basis_element(A, nu);
      double r = dist(phi.apply(prod), img[mu] * img[nu]);
      if (r > mult_res) {
        mult_res = r;
        mult_worst = "basis pair (" + std::to_string(mu) + "," +
                     std::to_string(nu) + ")";
      }
    }
  }
  rep.add("multiplicative", mult_res, mult_worst);

  double star_res = 0.0;
  for (int mu = 0; mu < d; ++mu) {
    AlgElement emu = basis_element(A, mu);
    star_res = std::max(star_res,
                        dist(phi.apply(emu.adjoint()), img[mu].adjoint()));
  }
  rep.add("star-preserving", star_res);

  rep.add("unital", dist(phi.apply(AlgElement::identity(A)),
                         AlgElement::identity(phi.target)));
  return rep;
}

StarHom ad_unitary(const AlgElement& u, double eps) {
  if (!u.is_unitary(eps)) throw NotUnitary("ad_unitary: element is not unitary");
  AlgElement ustar = u.adjoint();
  return StarHom::from_action(u.alg, u.alg, [&](const AlgElement& a) {
    return u * a * ustar;
  });
}

bool is_positive(const AlgElement& a, Tolerance tol) {
  if (dist(a, a.adjoint()) > tol.eps) return false;
  for (const Mat& b : a.blocks) {
    Eigen::SelfAdjointEigenSolver<Mat> es((b + b.adjoint()) / 2.0);
    if (es.eigenvalues()(0) < -tol.eps) return false;
  }
  return true;
}

double spectral_norm(const AlgElement& a) { return a.norm(); }

Mat sqrt_positive(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

AlgElement sqrt_positive(const AlgElement& a) {
  AlgElement r = a;
  for (auto& b : r.blocks) b = sqrt_positive(b);
  return r;
}

Mat inv_sqrt_positive(const Mat& m, double threshold) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd vals(es.eigenvalues().size());
  for (int i = 0; i < vals.size(); ++i) {
    double v = es.eigenvalues()(i);
    vals(i) = v > threshold ? 1.0 / std::sqrt(v) : 0.0;
  }
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

Rng::Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

// splitmix64 steps; self-contained so that corpus generation is stable
// across standard library implementations.
double Rng::uniform() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::gauss() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(2.0 * M_PI * u2);
  has_cached_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

cx Rng::cgauss() { return cx(gauss(), gauss()) / std::sqrt(2.0); }

int Rng::uniform_int(int n) {
  int k = static_cast<int>(uniform() * n);
  return k >= n ? n - 1 : k;
}

Mat Rng::ginibre(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
  return m;
}

Mat Rng::unitary(int n) {
  Mat g = ginibre(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : cx(1.0));
  }
  return q;
}

AlgElement Rng::random_element(const MatAlg& a) {
  std::vector<Mat> blocks;
  for (int n : a.block_dims) blocks.push_back(ginibre(n, n));
  return AlgElement(a, std::move(blocks));
}

AlgElement Rng::random_unitary(const MatAlg& a) {
  std::vector<Mat> blocks;
  for (int n : a.block_dims) blocks.push_back(unitary(n));
  return AlgElement(a, std::move(blocks));
}

AlgElement Rng::random_positive(const MatAlg& a) {
  std::vector<Mat> blocks;
  for (int n : a.block_dims) {
    Mat g = ginibre(n, n);
    blocks.push_back(g.adjoint() * g);
  }
  return AlgElement(a, std::move(blocks));
}

}  // namespace twist
