#include "twist/corresp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace twist {

namespace {

Vec vec_of(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

double mat_opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

HilbertModule::HilbertModule(MatAlg b, int k, Mat p)
    : base(std::move(b)), rank(k), proj(std::move(p)) {
  if (rank < 1) throw ShapeMismatch("module rank must be positive");
  if (proj.rows() != esize() || proj.cols() != esize())
    throw ShapeMismatch("projection has wrong size");
}

int HilbertModule::cdim() const {
  // rank of the projection acting on flattened coordinates; the trace of an
  // idempotent equals its rank.
  int nb = base.nrows();
  double tr = 0.0;
  for (int i = 0; i < rank; ++i) {
    Mat d = proj.block(i * nb, i * nb, nb, nb);
    // dimension contributed per B-block column space: trace over the
    // flattened coordinates equals sum_j n_j * tr(block j of p_ii).
    int off = 0;
    for (int n : base.block_dims) {
      tr += n * d.block(off, off, n, n).trace().real();
      off += n;
    }
  }
  return static_cast<int>(std::lround(tr));
}

Mat Correspondence::pi(const AlgElement& a) const {
  return pi_embedded(a.embedded());
}

Mat Correspondence::pi_embedded(const Mat& a_embedded) const {
  AlgElement a = AlgElement::from_embedded(left, a_embedded);
  Vec c = a.flatten();
  Mat r = Mat::Zero(mod.esize(), mod.esize());
  for (int mu = 0; mu < left.dim(); ++mu)
    if (std::abs(c(mu)) > 0) r += c(mu) * act[mu];
  return r;
}

Intertwiner::Intertwiner(Correspondence s, Correspondence t, Mat m)
    : source(std::move(s)), target(std::move(t)), u(std::move(m)) {
  if (u.rows() != target.mod.esize() || u.cols() != source.mod.esize())
    throw ShapeMismatch("intertwiner matrix has wrong shape");
}

Intertwiner Intertwiner::adjoint() const {
  return Intertwiner(target, source, u.adjoint());
}

Intertwiner Intertwiner::compose(const Intertwiner& inner) const {
  if (inner.target.mod.esize() != source.mod.esize())
    throw ShapeMismatch("intertwiner composition");
  return Intertwiner(inner.source, target, u * inner.u);
}

Intertwiner Intertwiner::identity(const Correspondence& e) {
  return Intertwiner(e, e, e.mod.proj);
}

Vec flatten_module(const HilbertModule& m, const Mat& xi) {
  int nb = m.base.nrows();
  if (xi.rows() != m.esize() || xi.cols() != nb)
    throw ShapeMismatch("module element has wrong shape");
  Vec v(m.rank * m.base.dim());
  for (int i = 0; i < m.rank; ++i) {
    AlgElement b = AlgElement::from_embedded(m.base, xi.block(i * nb, 0, nb, nb));
    v.segment(i * m.base.dim(), m.base.dim()) = b.flatten();
  }
  return v;
}

Mat unflatten_module(const HilbertModule& m, const Vec& v) {
  int nb = m.base.nrows();
  if (v.size() != m.rank * m.base.dim())
    throw ShapeMismatch("module coordinate vector has wrong size");
  Mat xi(m.esize(), nb);
  for (int i = 0; i < m.rank; ++i) {
    AlgElement b = AlgElement::unflatten(
        m.base, v.segment(i * m.base.dim(), m.base.dim()));
    xi.block(i * nb, 0, nb, nb) = b.embedded();
  }
  return xi;
}

AlgElement module_inner(const HilbertModule& m, const Mat& xi, const Mat& eta) {
  return AlgElement::from_embedded(m.base, xi.adjoint() * eta);
}

std::vector<Mat> module_basis(const Correspondence& e) {
  if (!e.frame.empty()) return e.frame;
  const HilbertModule& m = e.mod;
  int d = m.rank * m.base.dim();
  Mat pflat(d, d);
  for (int mu = 0; mu < d; ++mu) {
    Vec v = Vec::Zero(d);
    v(mu) = 1.0;
    pflat.col(mu) = flatten_module(m, m.proj * unflatten_module(m, v));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(pflat);
  std::vector<Mat> basis;
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > 0.5)
      basis.push_back(unflatten_module(m, es.eigenvectors().col(i)));
  return basis;
}

Vec module_coords(const HilbertModule& m, const std::vector<Mat>& basis,
                  const Mat& xi) {
  int nb = static_cast<int>(basis.size());
  Mat bas(m.rank * m.base.dim(), nb);
  for (int i = 0; i < nb; ++i) bas.col(i) = flatten_module(m, basis[i]);
  Vec target = flatten_module(m, xi);
  Vec c = bas.colPivHouseholderQr().solve(target);
  if ((bas * c - target).norm() > 1e-6 * (1.0 + target.norm()))
    throw ShapeMismatch("element is not in the span of the module basis");
  return c;
}

bool in_matrix_pattern(const MatAlg& b, int rank, const Mat& m, double eps) {
  int nb = b.nrows();
  if (m.rows() != rank * nb || m.cols() != rank * nb) return false;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Mat entry = m.block(i * nb, j * nb, nb, nb);
      // entry must be block diagonal with B's pattern
      Mat mask = entry;
      int off = 0;
      for (int n : b.block_dims) {
        mask.block(off, off, n, n).setZero();
        off += n;
      }
      if (mask.cwiseAbs().maxCoeff() > eps) return false;
    }
  return true;
}

VerificationReport check_correspondence(const Correspondence& e,
                                        Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const Mat& p = e.mod.proj;
  rep.add("projection-idempotent", mat_opnorm(p * p - p));
  rep.add("projection-selfadjoint", mat_opnorm(p - p.adjoint()));
  rep.add_flag("projection-pattern",
               in_matrix_pattern(e.mod.base, e.mod.rank, p));
  rep.add_flag("nondegenerate", mat_opnorm(p) > tol.eps);

  int d = e.left.dim();
  if (static_cast<int>(e.act.size()) != d) {
    rep.add_flag("left-action-shape", false, "wrong image count");
    return rep;
  }
  double mult = 0, star = 0, corner = 0;
  for (int mu = 0; mu < d; ++mu) {
    AlgElement emu = basis_element(e.left, mu);
    star = std::max(star,
                    mat_opnorm(e.pi(emu.adjoint()) - e.act[mu].adjoint()));
    corner = std::max(corner, mat_opnorm(p * e.act[mu] * p - e.act[mu]));
    for (int nu = 0; nu < d; ++nu) {
      AlgElement env = basis_element(e.left, nu);
      mult = std::max(mult,
                      mat_opnorm(e.pi(emu * env) - e.act[mu] * e.act[nu]));
    }
  }
  rep.add("left-action-multiplicative", mult);
  rep.add("left-action-star", star);
  rep.add("left-action-corner", corner);
  rep.add("left-action-unital",
          mat_opnorm(e.pi(AlgElement::identity(e.left)) - p));
  return rep;
}

VerificationReport check_intertwiner(const Intertwiner& w, Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  if (!w.source.left.same_shape(w.target.left) ||
      !w.source.right().same_shape(w.target.right())) {
    rep.add_flag("algebras-match", false);
    return rep;
  }
  rep.add("unitary-source", mat_opnorm(w.u.adjoint() * w.u - w.source.mod.proj));
  rep.add("unitary-target", mat_opnorm(w.u * w.u.adjoint() - w.target.mod.proj));
  rep.add_flag("matrix-pattern",
               w.source.mod.rank == 0 ||
                   [&] {
                     // rectangular pattern: treat as block grid over B
                     int nb = w.source.right().nrows();
                     int kt = w.target.mod.rank, ks = w.source.mod.rank;
                     for (int i = 0; i < kt; ++i)
                       for (int j = 0; j < ks; ++j) {
                         Mat entry = w.u.block(i * nb, j * nb, nb, nb);
                         Mat mask = entry;
                         int off = 0;
                         for (int n : w.source.right().block_dims) {
                           mask.block(off, off, n, n).setZero();
                           off += n;
                         }
                         if (mask.cwiseAbs().maxCoeff() > 1e-7) return false;
                       }
                     return true;
                   }());
  double lin = 0;
  for (int mu = 0; mu < w.source.left.dim(); ++mu) {
    AlgElement emu = basis_element(w.source.left, mu);
    lin = std::max(lin, mat_opnorm(w.u * w.source.pi(emu) -
                                   w.target.pi(emu) * w.u));
  }
  rep.add("left-linearity", lin);
  return rep;
}

Correspondence correspondence_from_hom(const StarHom& f) {
  if (!check_star_hom(f).pass())
    throw InvalidHom("correspondence_from_hom: map fails *-homomorphism laws");
  Correspondence e;
  e.left = f.source;
  int nb = f.target.nrows();
  e.mod = HilbertModule(f.target, 1, AlgElement::identity(f.target).embedded());
  e.act.reserve(f.source.dim());
  for (int mu = 0; mu < f.source.dim(); ++mu)
    e.act.push_back(f.apply(basis_element(f.source, mu)).embedded());
  (void)nb;
  return e;
}

Correspondence identity_correspondence(const MatAlg& a) {
  return correspondence_from_hom(StarHom::identity(a));
}

namespace {

// Apply F's left action entrywise to a matrix over B, producing a matrix
// over C on the inflated grid.
Mat entrywise_action(const Correspondence& f, const MatAlg& b, int rank,
                     const Mat& m) {
  int nb = b.nrows();
  int cell = f.mod.esize();
  Mat r = Mat::Zero(rank * cell, rank * cell);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Mat entry = m.block(i * nb, j * nb, nb, nb);
      if (entry.cwiseAbs().maxCoeff() == 0.0) continue;
      r.block(i * cell, j * cell, cell, cell) = f.pi_embedded(entry);
    }
  return r;
}

}  // namespace

Correspondence tensor(const Correspondence& e, const Correspondence& f) {
  if (!e.right().same_shape(f.left))
    throw AlgebraMismatch("tensor: middle algebras differ");
  Correspondence r;
  r.left = e.left;
  int k = e.mod.rank * f.mod.rank;
  Mat p = entrywise_action(f, e.right(), e.mod.rank, e.mod.proj);
  r.mod = HilbertModule(f.right(), k, std::move(p));
  r.act.reserve(e.left.dim());
  for (int mu = 0; mu < e.left.dim(); ++mu)
    r.act.push_back(
        entrywise_action(f, e.right(), e.mod.rank, e.act[mu]));
  return r;
}

Mat tensor_elem(const Correspondence& e, const Correspondence& f,
                const Mat& xi, const Mat& eta) {
  int nb = e.right().nrows();
  int nc = f.right().nrows();
  Mat r(e.mod.rank * f.mod.esize(), nc);
  for (int i = 0; i < e.mod.rank; ++i) {
    Mat entry = xi.block(i * nb, 0, nb, nb);
    r.block(i * f.mod.esize(), 0, f.mod.esize(), nc) =
        f.pi_embedded(entry) * eta;
  }
  return r;
}

Intertwiner tensor_int(const Intertwiner& u, const Intertwiner& v) {
  const Correspondence& e = u.source;
  const Correspondence& ep = u.target;
  const Correspondence& f = v.source;
  const Correspondence& fp = v.target;
  Correspondence src = tensor(e, f);
  Correspondence tgt = tensor(ep, fp);
  int nb = e.right().nrows();
  Mat m = Mat::Zero(tgt.mod.esize(), src.mod.esize());
  int cell_t = fp.mod.esize();
  int cell_s = f.mod.esize();
  for (int i = 0; i < ep.mod.rank; ++i)
    for (int j = 0; j < e.mod.rank; ++j) {
      Mat entry = u.u.block(i * nb, j * nb, nb, nb);
      if (entry.cwiseAbs().maxCoeff() == 0.0) continue;
      m.block(i * cell_t, j * cell_s, cell_t, cell_s) =
          fp.pi_embedded(entry) * v.u;
    }
  return Intertwiner(std::move(src), std::move(tgt), std::move(m));
}

Intertwiner associator(const Correspondence& e, const Correspondence& f,
                       const Correspondence& g) {
  Correspondence src = tensor(tensor(e, f), g);
  Correspondence tgt = tensor(e, tensor(f, g));
  if (src.mod.esize() != tgt.mod.esize())
    throw AlgebraMismatch("associator: incompatible shapes");
  // In the projection-cut realisation both iterated products live on the
  // same coordinate grid and the canonical regrouping map is the identity
  // on the cut module.
  Mat m = src.mod.proj;
  return Intertwiner(std::move(src), std::move(tgt), std::move(m));
}

std::pair<Intertwiner, Intertwiner> unitors(const Correspondence& e) {
  Correspondence ida = identity_correspondence(e.left);
  Correspondence idb = identity_correspondence(e.right());
  Correspondence lsrc = tensor(ida, e);
  Correspondence rsrc = tensor(e, idb);
  Intertwiner l(std::move(lsrc), e, e.mod.proj);
  Intertwiner r(std::move(rsrc), e, e.mod.proj);
  return {std::move(l), std::move(r)};
}

EquivalenceWitness is_equivalence(const Correspondence& e, double eps) {
  EquivalenceWitness w;
  int d = e.left.dim();
  int es = e.mod.esize();
  Mat actmat(es * es, d);
  for (int mu = 0; mu < d; ++mu) actmat.col(mu) = vec_of(e.act[mu]);
  Eigen::JacobiSVD<Mat> svd(actmat);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > eps) ++rank;
  w.injective = (rank == d);

  // dimension of the corner p M_k(B) p
  const MatAlg& b = e.mod.base;
  int k = e.mod.rank;
  int nb = b.nrows();
  int cols = k * k * b.dim();
  Mat corner(es * es, cols);
  int c = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int mu = 0; mu < b.dim(); ++mu) {
        Mat x = Mat::Zero(es, es);
        x.block(i * nb, j * nb, nb, nb) =
            basis_element(b, mu).embedded();
        corner.col(c++) = vec_of((e.mod.proj * x * e.mod.proj).eval());
      }
  Eigen::JacobiSVD<Mat> svd2(corner);
  int cdim = 0;
  for (int i = 0; i < svd2.singularValues().size(); ++i)
    if (svd2.singularValues()(i) > eps) ++cdim;
  w.corner_dim = cdim;
  w.ok = w.injective && (cdim == d);
  return w;
}

AlgElement left_inner(const Correspondence& e, const Mat& xi, const Mat& eta) {
  int d = e.left.dim();
  int es = e.mod.esize();
  Mat actmat(es * es, d);
  for (int mu = 0; mu < d; ++mu) actmat.col(mu) = vec_of(e.act[mu]);
  Mat t = xi * eta.adjoint();
  Vec rhs = vec_of(t);
  Vec x = actmat.colPivHouseholderQr().solve(rhs);
  if ((actmat * x - rhs).norm() > 1e-6 * (1.0 + rhs.norm()))
    throw NotEquivalence("rank-one operator is not in the image of the left action");
  return AlgElement::unflatten(e.left, x);
}

Trivialization trivialize(const Correspondence& e, double eps) {
  const HilbertModule& m = e.mod;
  const MatAlg& b = m.base;
  int nb = b.nrows();
  if (m.cdim() != b.dim())
    throw NotTrivializable("module dimension differs from the base algebra");

  // candidate generators: the frame columns of p
  int best = -1;
  double best_sv = 0.0;
  std::vector<Mat> cols;
  for (int c = 0; c < m.rank; ++c) {
    Mat xi = m.proj.block(0, c * nb, m.esize(), nb);
    cols.push_back(xi);
    Mat ip = xi.adjoint() * xi;
    Eigen::JacobiSVD<Mat> svd(ip);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin > best_sv + 1e-15) {
      best_sv = smin;
      best = c;
    }
  }
  std::vector<int> order;
  if (best >= 0) order.push_back(best);
  for (int c = 0; c < m.rank; ++c)
    if (c != best) order.push_back(c);

  auto try_generator =
      [&](const Mat& xi) -> std::optional<Trivialization> {
    Mat ip = xi.adjoint() * xi;
    Eigen::JacobiSVD<Mat> svd(ip);
    if (svd.singularValues()(svd.singularValues().size() - 1) <= eps)
      return std::nullopt;
    Mat xin = xi * inv_sqrt_positive(ip);
    Mat u = xin.adjoint();  // 1 x rank over B
    if (mat_opnorm(u.adjoint() * u - m.proj) > 1e-7) return std::nullopt;
    StarHom phi = StarHom::from_action(e.left, b, [&](const AlgElement& a) {
      return AlgElement::from_embedded(b, u * e.pi(a) * u.adjoint());
    });
    Correspondence free = correspondence_from_hom(phi);
    return Trivialization{Intertwiner(e, std::move(free), std::move(u)),
                          std::move(phi)};
  };

  for (int c : order)
    if (auto t = try_generator(cols[c])) return *t;

  // A generic element of a free rank-one module is a generator, so a few
  // deterministic random candidates settle the cases where no single frame
  // column of p does.
  Rng rng(0x7457);
  for (int trial = 0; trial < 12; ++trial) {
    Mat cand(m.esize(), nb);
    for (int i = 0; i < m.rank; ++i)
      cand.block(i * nb, 0, nb, nb) = rng.random_element(b).embedded();
    if (auto t = try_generator(m.proj * cand)) return *t;
  }
  throw NotTrivializable("no generator of the module was found");
}

}  // namespace twist
