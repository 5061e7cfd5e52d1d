#include "twist/fell.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace twist {

namespace {

Vec vec_of(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

double mat_opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // largest singular value through the Gram matrix of the smaller side
  Mat gram =
      m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// S (x (x) y) = y (x) x for x of size p, y of size q.
Mat swap_mat(int p, int q) {
  Mat s = Mat::Zero(p * q, p * q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) s(j * p + i, i * q + j) = 1.0;
  return s;
}

int mat_rank(const Mat& m, double eps) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  double top = svd.singularValues()(0);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > eps * (1.0 + top)) ++r;
  return r;
}

std::vector<Mat> basis_of_module(const HilbertModule& m,
                                 const std::vector<Mat>& frame) {
  if (!frame.empty()) return frame;
  Correspondence c;
  c.left = MatAlg({1}, "C");
  c.mod = m;
  return module_basis(c);
}

// A Parseval frame of the cut module: with T = sum_r x_r x_r^*, the vectors
// s_r = T^{-1/2} x_r reproduce every module element as sum_r s_r <s_r, xi>.
std::vector<Mat> parseval_frame(const Correspondence& e) {
  std::vector<Mat> basis = module_basis(e);
  int es = e.mod.esize();
  Mat t = Mat::Zero(es, es);
  for (const Mat& x : basis) t += x * x.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> solver(t);
  Mat r = Mat::Zero(es, es);
  for (int i = 0; i < es; ++i) {
    double lam = solver.eigenvalues()(i);
    if (lam > 1e-12)
      r += (1.0 / std::sqrt(lam)) * solver.eigenvectors().col(i) *
           solver.eigenvectors().col(i).adjoint();
  }
  std::vector<Mat> out;
  out.reserve(basis.size());
  for (const Mat& x : basis) out.push_back(r * x);
  return out;
}

// Build the unique adjointable intertwiner with given values on the module:
// u = sum_r fn(s_r) s_r^* over a Parseval frame, which is automatically in
// the rectangular matrix pattern over the base algebra.
template <class F>
Intertwiner intertwiner_from_map(const Correspondence& src,
                                 const Correspondence& tgt, F&& fn) {
  std::vector<Mat> frame = parseval_frame(src);
  Mat u = Mat::Zero(tgt.mod.esize(), src.mod.esize());
  for (const Mat& s : frame) u += fn(s) * s.adjoint();
  return Intertwiner(src, tgt, std::move(u));
}

Mat frame_combo(const std::vector<Mat>& frame, const Vec& coords) {
  Mat r = Mat::Zero(frame[0].rows(), frame[0].cols());
  for (int i = 0; i < static_cast<int>(frame.size()); ++i)
    r += coords(i) * frame[i];
  return r;
}

std::vector<Mat> product_basis(const Correspondence& e,
                               const Correspondence& f,
                               const std::vector<Mat>& ebasis,
                               const std::vector<Mat>& fbasis) {
  std::vector<Mat> out;
  out.reserve(ebasis.size() * fbasis.size());
  for (const Mat& x : ebasis)
    for (const Mat& y : fbasis) out.push_back(tensor_elem(e, f, x, y));
  return out;
}

Mat base_mult_tensor(const MatAlg& a) {
  int n = a.dim();
  Mat m(n, n * n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      m.col(mu * n + nu) =
          (basis_element(a, mu) * basis_element(a, nu)).flatten();
  return m;
}

Mat base_star_tensor(const MatAlg& a) {
  int n = a.dim();
  Mat m(n, n);
  for (int mu = 0; mu < n; ++mu)
    m.col(mu) = basis_element(a, mu).adjoint().flatten();
  return m;
}

std::string gname(const FiniteGroup& g, int i) { return g.names[i]; }

}  // namespace

AlgElement FellBundle::from_unit(const Vec& x) const {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(unit_iso);
  return AlgElement::unflatten(base, cod.solve(x));
}

Vec FellBundle::to_unit(const AlgElement& a) const {
  return unit_iso * a.flatten();
}

VerificationReport verify_fell(const FellBundle& b, Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& gr = b.group;
  int n = gr.order;

  bool shape = static_cast<int>(b.dims.size()) == n &&
               static_cast<int>(b.mult.size()) == n &&
               static_cast<int>(b.star.size()) == n;
  if (shape)
    for (int g = 0; g < n && shape; ++g) {
      shape = static_cast<int>(b.mult[g].size()) == n &&
              b.star[g].rows() == b.dims[gr.inv[g]] &&
              b.star[g].cols() == b.dims[g];
      for (int h = 0; h < n && shape; ++h)
        shape = b.mult[g][h].rows() == b.dims[gr.mul(g, h)] &&
                b.mult[g][h].cols() == b.dims[g] * b.dims[h];
    }
  rep.add_flag("fibre-shapes", shape);
  if (!shape) return rep;
  if (b.unit_iso.rows() != b.dims[gr.identity] ||
      b.unit_iso.cols() != b.base.dim())
    throw MissingUnitIso("unit fibre iso has the wrong shape");

  double assoc = 0;
  std::string assoc_at;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        int hk = gr.mul(h, k), gh = gr.mul(g, h);
        int dg = b.dims[g], dh = b.dims[h], dk = b.dims[k];
        int dhk = b.dims[hk], dgh = b.dims[gh];
        int dout = b.dims[gr.mul(g, hk)];
        // b.mult[g][hk] * kron(Id, b.mult[h][k]) without forming the
        // Kronecker factor: the product is block-diagonal in the first index
        const Mat& A = b.mult[g][hk];
        const Mat& M = b.mult[h][k];
        Mat lhs(dout, dg * dh * dk);
        for (int i = 0; i < dg; ++i)
          lhs.middleCols(i * dh * dk, dh * dk) =
              A.middleCols(i * dhk, dhk) * M;
        // b.mult[gh][k] * kron(b.mult[g][h], Id): contract the middle fibre
        // index while the last coordinate rides along
        const Mat& B = b.mult[gh][k];
        const Mat& N = b.mult[g][h];
        Mat rhs(dout, dg * dh * dk);
        Mat bt(dout, dgh);
        for (int t = 0; t < dk; ++t) {
          for (int m = 0; m < dgh; ++m) bt.col(m) = B.col(m * dk + t);
          Mat ct = bt * N;
          for (int c = 0; c < dg * dh; ++c) rhs.col(c * dk + t) = ct.col(c);
        }
        double r = mat_opnorm(lhs - rhs);
        if (r > assoc) {
          assoc = r;
          assoc_at = gname(gr, g) + "," + gname(gr, h) + "," + gname(gr, k);
        }
      }
  rep.add("multiplication-associative", assoc, assoc_at);

  double invol = 0, antimult = 0;
  std::string invol_at, anti_at;
  for (int g = 0; g < n; ++g) {
    int gi = gr.inv[g];
    double r = mat_opnorm(Mat(b.star[gi] * b.star[g].conjugate()) -
                          Mat::Identity(b.dims[g], b.dims[g]));
    if (r > invol) {
      invol = r;
      invol_at = gname(gr, g);
    }
    for (int h = 0; h < n; ++h) {
      int gh = gr.mul(g, h);
      Mat lhs = b.star[gh] * b.mult[g][h].conjugate();
      Mat rhs = b.mult[gr.inv[h]][gi] * kron(b.star[h], b.star[g]) *
                swap_mat(b.dims[g], b.dims[h]);
      double r2 = mat_opnorm(lhs - rhs);
      if (r2 > antimult) {
        antimult = r2;
        anti_at = gname(gr, g) + "," + gname(gr, h);
      }
    }
  }
  rep.add("involution-involutive", invol, invol_at);
  rep.add("involution-antimultiplicative", antimult, anti_at);

  int e = gr.identity;
  rep.add_flag("unit-iso-invertible",
               mat_rank(b.unit_iso, 1e-9) == b.base.dim() &&
                   b.dims[e] == b.base.dim());
  rep.add("unit-iso-multiplicative",
          mat_opnorm(b.unit_iso * base_mult_tensor(b.base) -
                     b.mult[e][e] * kron(b.unit_iso, b.unit_iso)));
  rep.add("unit-iso-star", mat_opnorm(b.star[e] * b.unit_iso.conjugate() -
                                      b.unit_iso * base_star_tensor(b.base)));

  Rng rng(20240811);
  bool positive = true;
  std::string pos_at;
  double normlaw = 0;
  std::string norm_at;
  for (int g = 0; g < n; ++g) {
    int d = b.dims[g];
    if (d == 0) continue;
    std::vector<Vec> samples;
    for (int i = 0; i < d; ++i) {
      Vec v = Vec::Zero(d);
      v(i) = 1.0;
      samples.push_back(std::move(v));
    }
    for (int s = 0; s < 3; ++s) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v(i) = rng.cgauss();
      samples.push_back(std::move(v));
    }
    for (const Vec& x : samples) {
      Vec xs = b.star[g] * x.conjugate();
      AlgElement left = b.from_unit(b.mult[gr.inv[g]][g] * kron(xs, x));
      AlgElement right = b.from_unit(b.mult[g][gr.inv[g]] * kron(x, xs));
      if (!is_positive(left, {1e-7})) {
        positive = false;
        pos_at = gname(gr, g);
      }
      double r = std::abs(left.norm() - right.norm());
      if (r > normlaw) {
        normlaw = r;
        norm_at = gname(gr, g);
      }
    }
  }
  rep.add_flag("positivity", positive, pos_at);
  rep.add("norm-identity", normlaw, norm_at);
  return rep;
}

bool check_saturated(const FellBundle& b, double eps) {
  const FiniteGroup& gr = b.group;
  for (int g = 0; g < gr.order; ++g)
    for (int h = 0; h < gr.order; ++h)
      if (mat_rank(b.mult[g][h], eps) != b.dims[gr.mul(g, h)]) return false;
  return true;
}

FellBundle group_algebra_bundle(const FiniteGroup& g) {
  FellBundle b;
  b.group = g;
  b.base = MatAlg({1}, "C");
  b.dims.assign(g.order, 1);
  b.mult.assign(g.order, std::vector<Mat>(g.order, Mat::Ones(1, 1)));
  b.star.assign(g.order, Mat::Ones(1, 1));
  b.unit_iso = Mat::Ones(1, 1);
  return b;
}

FellBundle constant_bundle(const FiniteGroup& g, const MatAlg& a) {
  FellBundle b;
  b.group = g;
  b.base = a;
  int n = a.dim();
  b.dims.assign(g.order, n);
  Mat m = base_mult_tensor(a);
  Mat s = base_star_tensor(a);
  b.mult.assign(g.order, std::vector<Mat>(g.order, m));
  b.star.assign(g.order, s);
  b.unit_iso = Mat::Identity(n, n);
  return b;
}

FellBundle unit_only_bundle(const FiniteGroup& g, const MatAlg& a) {
  FellBundle b;
  b.group = g;
  b.base = a;
  int n = a.dim();
  b.dims.assign(g.order, 0);
  b.dims[g.identity] = n;
  b.mult.resize(g.order);
  b.star.resize(g.order);
  for (int x = 0; x < g.order; ++x) {
    b.star[x] = Mat::Zero(b.dims[g.inv[x]], b.dims[x]);
    b.mult[x].resize(g.order);
    for (int y = 0; y < g.order; ++y)
      b.mult[x][y] =
          Mat::Zero(b.dims[g.mul(x, y)], b.dims[x] * b.dims[y]);
  }
  b.mult[g.identity][g.identity] = base_mult_tensor(a);
  b.star[g.identity] = base_star_tensor(a);
  b.unit_iso = Mat::Identity(n, n);
  return b;
}

FellBundle action_to_fell(const CorrAction& act, Tolerance tol) {
  if (!verify_corr_action(act, tol).pass())
    throw NotVerified("action_to_fell: input action fails verification");
  for (const Correspondence& e : act.alpha)
    if (!is_equivalence(e).ok)
      throw NotEquivalence("action_to_fell: an arrow is not an equivalence");

  const FiniteGroup& gr = act.group;
  int n = gr.order;
  FellBundle b;
  b.group = gr;
  b.base = act.algebra;
  b.dims.resize(n);
  b.carrier.resize(n);
  for (int g = 0; g < n; ++g) {
    b.carrier[g] = act.alpha[gr.inv[g]];
    b.carrier[g].frame = module_basis(b.carrier[g]);
    b.dims[g] = static_cast<int>(b.carrier[g].frame.size());
  }

  b.mult.assign(n, std::vector<Mat>(n));
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      int g12 = gr.mul(g1, g2);
      int d1 = b.dims[g1], d2 = b.dims[g2];
      const Intertwiner& w = act.omega[gr.inv[g2]][gr.inv[g1]];
      Mat m(b.dims[g12], d1 * d2);
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j) {
          Mat te = tensor_elem(act.alpha[gr.inv[g1]], act.alpha[gr.inv[g2]],
                               b.carrier[g1].frame[i],
                               b.carrier[g2].frame[j]);
          m.col(i * d2 + j) = module_coords(
              b.carrier[g12].mod, b.carrier[g12].frame, w.apply(te));
        }
      b.mult[g1][g2] = std::move(m);
    }

  // The involution solves <xi^*, zeta_j> = (u^{-1} omega(g, g^{-1}))(xi (x)
  // zeta_j) against the frame of the opposite fibre.
  b.star.resize(n);
  int na = act.algebra.dim();
  for (int g = 0; g < n; ++g) {
    int gi = gr.inv[g];
    const std::vector<Mat>& zeta = b.carrier[gi].frame;
    int dp = b.dims[gi];
    Mat gram(dp * na, dp);
    for (int i = 0; i < dp; ++i)
      for (int j = 0; j < dp; ++j)
        gram.block(j * na, i, na, 1) =
            module_inner(b.carrier[gi].mod, zeta[i], zeta[j]).flatten();
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(gram);
    Mat s(dp, b.dims[g]);
    for (int c = 0; c < b.dims[g]; ++c) {
      Vec rhs(dp * na);
      for (int j = 0; j < dp; ++j) {
        Mat te = tensor_elem(act.alpha[gi], act.alpha[g],
                             b.carrier[g].frame[c], zeta[j]);
        Mat y = act.u.adjoint().apply(act.omega[g][gi].apply(te));
        rhs.segment(j * na, na) =
            AlgElement::from_embedded(act.algebra, y).flatten();
      }
      s.col(c) = cod.solve(rhs).conjugate();
    }
    b.star[g] = std::move(s);
  }

  b.unit_iso = Mat(b.dims[gr.identity], na);
  for (int mu = 0; mu < na; ++mu) {
    Mat y = act.u.apply(basis_element(act.algebra, mu).embedded());
    b.unit_iso.col(mu) = module_coords(b.carrier[gr.identity].mod,
                                       b.carrier[gr.identity].frame, y);
  }

  CorrAction with_frames = act;
  for (int g = 0; g < n; ++g)
    with_frames.alpha[g].frame = b.carrier[gr.inv[g]].frame;
  b.origin = std::make_shared<CorrAction>(std::move(with_frames));
  return b;
}

namespace {

// Realise an abstractly given Hilbert module with finitely many generators
// as a projection-cut free module via the Parseval frame z = T^{-1/2} x.
struct RealizedModule {
  Correspondence corr;
  // Fibre coordinates of the Parseval generators, z_i = columns.
  Mat zmat;
};

template <class RightAct, class Inner, class LeftAct>
RealizedModule realize_module(const MatAlg& left, const MatAlg& base, int d,
                              RightAct&& ract, Inner&& inner,
                              LeftAct&& lact) {
  Mat t = Mat::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    Vec ec = Vec::Zero(d);
    ec(c) = 1.0;
    Vec col = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
      Vec ei = Vec::Zero(d);
      ei(i) = 1.0;
      col += ract(ei, inner(ei, ec));
    }
    t.col(c) = col;
  }
  Eigen::ComplexEigenSolver<Mat> es(t);
  Mat tinvsqrt = Mat::Zero(d, d);
  {
    Mat p = es.eigenvectors();
    Vec lam = es.eigenvalues();
    Mat dm = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      double re = lam(i).real();
      dm(i, i) = re > 1e-12 ? 1.0 / std::sqrt(re) : 0.0;
    }
    tinvsqrt = p * dm * p.inverse();
  }

  int nb = base.nrows();
  Mat z = tinvsqrt;
  Mat proj(d * nb, d * nb);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      proj.block(i * nb, j * nb, nb, nb) =
          inner(Vec(z.col(i)), Vec(z.col(j))).embedded();

  RealizedModule r;
  r.corr.left = left;
  r.corr.mod = HilbertModule(base, d, std::move(proj));
  r.corr.act.reserve(left.dim());
  for (int mu = 0; mu < left.dim(); ++mu) {
    AlgElement a = basis_element(left, mu);
    Mat m(d * nb, d * nb);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m.block(i * nb, j * nb, nb, nb) =
            inner(Vec(z.col(i)), lact(a, Vec(z.col(j)))).embedded();
    r.corr.act.push_back(std::move(m));
  }
  r.corr.frame.reserve(d);
  for (int c = 0; c < d; ++c) {
    Vec ec = Vec::Zero(d);
    ec(c) = 1.0;
    Mat f(d * nb, nb);
    for (int i = 0; i < d; ++i)
      f.block(i * nb, 0, nb, nb) = inner(Vec(z.col(i)), ec).embedded();
    r.corr.frame.push_back(std::move(f));
  }
  r.zmat = std::move(z);
  return r;
}

}  // namespace

CorrAction fell_to_action(const FellBundle& b, Tolerance tol) {
  if (!check_saturated(b))
    throw NotSaturated("fell_to_action: bundle is not saturated");
  if (b.origin) return *b.origin;

  const FiniteGroup& gr = b.group;
  int n = gr.order;
  const MatAlg& alg = b.base;
  int e = gr.identity;

  // Realise the fibre at h as a projection-cut module over the base.
  std::vector<Correspondence> fib(n);
  for (int h = 0; h < n; ++h) {
    int d = b.dims[h];
    auto ract = [&](const Vec& x, const AlgElement& a) -> Vec {
      return b.mult[h][e] * kron(x, Vec(b.to_unit(a)));
    };
    auto inner = [&](const Vec& x, const Vec& y) -> AlgElement {
      Vec xs = b.star[h] * x.conjugate();
      return b.from_unit(b.mult[gr.inv[h]][h] * kron(xs, y));
    };
    auto lact = [&](const AlgElement& a, const Vec& x) -> Vec {
      return b.mult[e][h] * kron(Vec(b.to_unit(a)), x);
    };
    fib[h] = realize_module(alg, alg, d, ract, inner, lact).corr;
  }

  CorrAction act;
  act.group = gr;
  act.algebra = alg;
  act.alpha.resize(n);
  for (int g = 0; g < n; ++g) act.alpha[g] = fib[gr.inv[g]];

  act.omega.resize(n);
  for (int g1 = 0; g1 < n; ++g1) {
    act.omega[g1].reserve(n);
    for (int g2 = 0; g2 < n; ++g2) {
      int g12 = gr.mul(g1, g2);
      const Correspondence& ce = act.alpha[g2];
      const Correspondence& cf = act.alpha[g1];
      Correspondence src = tensor(ce, cf);
      std::vector<Mat> pb =
          product_basis(ce, cf, ce.frame, cf.frame);
      const Mat& mu = b.mult[gr.inv[g2]][gr.inv[g1]];
      const Correspondence& tgt = act.alpha[g12];
      act.omega[g1].push_back(intertwiner_from_map(
          src, tgt, [&](const Mat& s) -> Mat {
            Vec c = module_coords(src.mod, pb, s);
            return frame_combo(tgt.frame, Vec(mu * c));
          }));
    }
  }

  Correspondence ida = identity_correspondence(alg);
  const Correspondence& a1 = act.alpha[e];
  act.u = intertwiner_from_map(ida, a1, [&](const Mat& s) -> Mat {
    AlgElement a = AlgElement::from_embedded(alg, s);
    return frame_combo(a1.frame, Vec(b.unit_iso * a.flatten()));
  });
  (void)tol;
  return act;
}

VerificationReport verify_corr_transformation(const CorrTransformation& t,
                                              Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& gr = t.source.group;
  int n = gr.order;

  VerificationReport gc = check_correspondence(t.gamma, tol);
  rep.add("gamma-is-correspondence", gc.max_residual());
  double bigon = 0;
  std::string bigon_at;
  for (int g = 0; g < n; ++g) {
    double r = check_intertwiner(t.V[g], tol).max_residual();
    if (r > bigon) {
      bigon = r;
      bigon_at = gname(gr, g);
    }
  }
  rep.add("bigons-are-unitary-intertwiners", bigon, bigon_at);

  // Unit coherence: the two canonical bigons gamma => alpha_1 (x) gamma
  // agree.
  {
    int e = gr.identity;
    Intertwiner idg = Intertwiner::identity(t.gamma);
    Intertwiner lhs = t.V[e].compose(tensor_int(idg, t.target.u));
    auto un_src = unitors(t.gamma);
    Mat left_path = lhs.u * un_src.second.u.adjoint();
    Intertwiner rhs = tensor_int(t.source.u, idg);
    Mat right_path = rhs.u * un_src.first.u.adjoint();
    rep.add("unit-coherence",
            mat_opnorm((left_path - right_path) * t.gamma.mod.proj));
  }

  double coh = 0;
  std::string coh_at;
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      int g12 = gr.mul(g1, g2);
      Intertwiner idg = Intertwiner::identity(t.gamma);
      Intertwiner idb1 = Intertwiner::identity(t.target.alpha[g1]);
      Intertwiner ida2 = Intertwiner::identity(t.source.alpha[g2]);

      Intertwiner top_in = tensor_int(idg, t.target.omega[g1][g2]);
      Mat top = t.V[g12].u * top_in.u;

      Intertwiner a1 =
          associator(t.gamma, t.target.alpha[g2], t.target.alpha[g1]);
      Intertwiner s1 = tensor_int(t.V[g2], idb1);
      Intertwiner a2 = associator(t.source.alpha[g2], t.gamma,
                                  t.target.alpha[g1]);
      Intertwiner s2 = tensor_int(ida2, t.V[g1]);
      Intertwiner a3 = associator(t.source.alpha[g2], t.source.alpha[g1],
                                  t.gamma);
      Intertwiner s3 = tensor_int(t.source.omega[g1][g2], idg);
      Mat bottom = s3.u * a3.u.adjoint() * s2.u * a2.u * s1.u *
                   a1.u.adjoint();
      double r = mat_opnorm((top - bottom) * top_in.source.mod.proj);
      if (r > coh) {
        coh = r;
        coh_at = gname(gr, g1) + "," + gname(gr, g2);
      }
    }
  rep.add("composition-coherence", coh, coh_at);
  return rep;
}

CorrTransformation corr_transformation_from_bs(const Transformation& t) {
  CorrTransformation out;
  out.source = corr_action_from_bs(t.source);
  out.target = corr_action_from_bs(t.target);
  out.gamma = correspondence_from_hom(t.f);
  int n = t.source.group.order;
  out.V.reserve(n);
  for (int g = 0; g < n; ++g) {
    Correspondence src = tensor(out.gamma, out.target.alpha[g]);
    Correspondence tgt = tensor(out.source.alpha[g], out.gamma);
    out.V.emplace_back(std::move(src), std::move(tgt),
                       t.V[g].embedded());
  }
  return out;
}

FellCorrespondence identity_fell_equivalence(const FellBundle& b) {
  FellCorrespondence c;
  c.a = b;
  c.b = b;
  c.dims = b.dims;
  c.lmul = b.mult;
  c.rmul = b.mult;
  const FiniteGroup& gr = b.group;
  int n = gr.order;
  c.inner_b.assign(n, std::vector<Mat>(n));
  c.inner_a.assign(n, std::vector<Mat>(n));
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      c.inner_b[g1][g2] =
          b.mult[gr.inv[g1]][g2] *
          kron(b.star[g1], Mat::Identity(b.dims[g2], b.dims[g2]));
      c.inner_a[g1][g2] =
          b.mult[g1][gr.inv[g2]] *
          kron(Mat::Identity(b.dims[g1], b.dims[g1]), b.star[g2]);
    }
  c.has_left = true;
  return c;
}

VerificationReport verify_fell_correspondence(const FellCorrespondence& c,
                                              Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& gr = c.a.group;
  int n = gr.order;
  auto dA = [&](int g) { return c.a.dims[g]; };
  auto dB = [&](int g) { return c.b.dims[g]; };
  auto e = [&](int g) { return c.dims[g]; };
  auto idm = [](int d) { return Mat::Identity(d, d); };

  double lassoc = 0, rassoc = 0, mixed = 0;
  bool nondeg = true;
  std::string nondeg_at;
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2)
      for (int g3 = 0; g3 < n; ++g3) {
        int g23 = gr.mul(g2, g3), g12 = gr.mul(g1, g2);
        lassoc = std::max(
            lassoc,
            mat_opnorm(c.lmul[g1][g23] * kron(idm(dA(g1)), c.lmul[g2][g3]) -
                       c.lmul[g12][g3] *
                           kron(c.a.mult[g1][g2], idm(e(g3)))));
        rassoc = std::max(
            rassoc,
            mat_opnorm(c.rmul[g12][g3] * kron(c.rmul[g1][g2], idm(dB(g3))) -
                       c.rmul[g1][g23] *
                           kron(idm(e(g1)), c.b.mult[g2][g3])));
        Mat lhs = c.rmul[g12][g3] * kron(c.lmul[g1][g2], idm(dB(g3)));
        Mat rhs = c.lmul[g1][g23] * kron(idm(dA(g1)), c.rmul[g2][g3]);
        mixed = std::max(mixed, mat_opnorm(lhs - rhs));
        int g123 = gr.mul(g12, g3);
        if (mat_rank(lhs, 1e-7) != e(g123)) {
          nondeg = false;
          nondeg_at = gname(gr, g1) + "," + gname(gr, g2) + "," +
                      gname(gr, g3);
        }
      }
  rep.add("left-module-associative", lassoc);
  rep.add("right-module-associative", rassoc);
  rep.add("bimodule-actions-commute", mixed);
  rep.add_flag("multiplication-nondegenerate", nondeg, nondeg_at);

  double adjb = 0, rlin = 0, herm = 0;
  for (int g0 = 0; g0 < n; ++g0)
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2) {
        int g01 = gr.mul(g0, g1);
        Mat lhs = c.inner_b[g01][g2] *
                  kron(c.lmul[g0][g1].conjugate(), idm(e(g2)));
        Mat rhs = c.inner_b[g1][gr.mul(gr.inv[g0], g2)] *
                  kron(idm(e(g1)), c.lmul[gr.inv[g0]][g2]) *
                  kron(idm(e(g1)), kron(c.a.star[g0], idm(e(g2)))) *
                  kron(swap_mat(dA(g0), e(g1)), idm(e(g2)));
        adjb = std::max(adjb, mat_opnorm(lhs - rhs));
        Mat lhs2 = c.inner_b[g0][gr.mul(g1, g2)] *
                   kron(idm(e(g0)), c.rmul[g1][g2]);
        Mat rhs2 = c.b.mult[gr.mul(gr.inv[g0], g1)][g2] *
                   kron(c.inner_b[g0][g1], idm(dB(g2)));
        rlin = std::max(rlin, mat_opnorm(lhs2 - rhs2));
      }
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      Mat lhs = c.b.star[gr.mul(gr.inv[g1], g2)] *
                c.inner_b[g1][g2].conjugate();
      Mat rhs = c.inner_b[g2][g1] * swap_mat(e(g1), e(g2));
      herm = std::max(herm, mat_opnorm(lhs - rhs));
    }
  rep.add("inner-B-adjointable", adjb);
  rep.add("inner-B-right-linear", rlin);
  rep.add("inner-B-hermitian", herm);

  Rng rng(20240812);
  bool positive = true;
  double normlaw = 0;
  for (int g = 0; g < n; ++g) {
    int d = e(g);
    for (int s = 0; s < 3 && d > 0; ++s) {
      Vec x(d);
      for (int i = 0; i < d; ++i) x(i) = rng.cgauss();
      AlgElement q =
          c.b.from_unit(c.inner_b[g][g] * kron(Vec(x.conjugate()), x));
      if (!is_positive(q, {1e-7})) positive = false;
      if (c.has_left) {
        AlgElement p =
            c.a.from_unit(c.inner_a[g][g] * kron(x, Vec(x.conjugate())));
        if (!is_positive(p, {1e-7})) positive = false;
        normlaw = std::max(normlaw, std::abs(p.norm() - q.norm()));
      }
    }
  }
  rep.add_flag("inner-products-positive", positive);
  if (c.has_left) rep.add("inner-norms-agree", normlaw);

  // informational: a correspondence without left inner products is valid
  // but is not a Morita equivalence
  rep.add_flag("morita", true, c.has_left ? "yes" : "no");
  if (!c.has_left) return rep;

  double herma = 0, llin = 0, adja = 0, compat = 0;
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      Mat lhs = c.a.star[gr.mul(g1, gr.inv[g2])] *
                c.inner_a[g1][g2].conjugate();
      Mat rhs = c.inner_a[g2][g1] * swap_mat(e(g1), e(g2));
      herma = std::max(herma, mat_opnorm(lhs - rhs));
    }
  for (int g0 = 0; g0 < n; ++g0)
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2) {
        Mat lhs = c.inner_a[gr.mul(g0, g1)][g2] *
                  kron(c.lmul[g0][g1], idm(e(g2)));
        Mat rhs = c.a.mult[g0][gr.mul(g1, gr.inv[g2])] *
                  kron(idm(dA(g0)), c.inner_a[g1][g2]);
        llin = std::max(llin, mat_opnorm(lhs - rhs));

        Mat lhs2 = c.inner_a[gr.mul(g0, g1)][g2] *
                   kron(c.rmul[g0][g1], idm(e(g2)));
        Mat rhs2 = c.inner_a[g0][gr.mul(g2, gr.inv[g1])] *
                   kron(idm(e(g0)), c.rmul[g2][gr.inv[g1]].conjugate()) *
                   kron(idm(e(g0)),
                        swap_mat(dB(gr.inv[g1]), e(g2))) *
                   kron(idm(e(g0)),
                        kron(c.b.star[g1].conjugate(), idm(e(g2))));
        adja = std::max(adja, mat_opnorm(lhs2 - rhs2));

        Mat lhs3 = c.lmul[gr.mul(g0, gr.inv[g1])][g2] *
                   kron(c.inner_a[g0][g1], idm(e(g2)));
        Mat rhs3 = c.rmul[g0][gr.mul(gr.inv[g1], g2)] *
                   kron(idm(e(g0)), c.inner_b[g1][g2]);
        compat = std::max(compat, mat_opnorm(lhs3 - rhs3));
      }
  rep.add("inner-A-hermitian", herma);
  rep.add("inner-A-left-linear", llin);
  rep.add("inner-A-adjointable", adja);
  rep.add("inner-products-compatible", compat);
  int ei = gr.identity;
  rep.add_flag("inner-A-full",
               mat_rank(c.inner_a[ei][ei], 1e-7) == dA(ei));
  rep.add_flag("inner-B-full",
               mat_rank(c.inner_b[ei][ei], 1e-7) == dB(ei));
  return rep;
}

FellCorrespondence transformation_to_fell_correspondence(
    const CorrTransformation& t, Tolerance tol) {
  if (!verify_corr_transformation(t, tol).pass())
    throw NotVerified(
        "transformation_to_fell_correspondence: coherence laws fail");

  FellCorrespondence c;
  c.a = action_to_fell(t.source, tol);
  c.b = action_to_fell(t.target, tol);
  const FiniteGroup& gr = t.source.group;
  int n = gr.order;

  // Gamma_g realised as alpha_{g^-1} (x) gamma with its computed basis.
  std::vector<Correspondence> gam(n);
  std::vector<std::vector<Mat>> gframe(n);
  c.dims.resize(n);
  for (int g = 0; g < n; ++g) {
    gam[g] = tensor(t.source.alpha[gr.inv[g]], t.gamma);
    gframe[g] = module_basis(gam[g]);
    c.dims[g] = static_cast<int>(gframe[g].size());
  }

  Intertwiner idg = Intertwiner::identity(t.gamma);
  c.lmul.assign(n, std::vector<Mat>(n));
  c.rmul.assign(n, std::vector<Mat>(n));
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      int g12 = gr.mul(g1, g2);
      int i1 = gr.inv[g1], i2 = gr.inv[g2];
      // a . xi: regroup and apply the source cocycle bigon.
      {
        Intertwiner asc =
            associator(t.source.alpha[i1], t.source.alpha[i2], t.gamma);
        Intertwiner w = tensor_int(t.source.omega[i2][i1], idg);
        Mat map = w.u * asc.u.adjoint();
        Mat m(c.dims[g12], c.a.dims[g1] * c.dims[g2]);
        for (int i = 0; i < c.a.dims[g1]; ++i)
          for (int j = 0; j < c.dims[g2]; ++j) {
            Mat te = tensor_elem(t.source.alpha[i1], gam[g2],
                                 c.a.carrier[g1].frame[i], gframe[g2][j]);
            m.col(i * c.dims[g2] + j) =
                module_coords(gam[g12].mod, gframe[g12], map * te);
          }
        c.lmul[g1][g2] = std::move(m);
      }
      // xi . b: move b across V and fold with the source cocycle.
      {
        Intertwiner asc1 =
            associator(t.source.alpha[i1], t.gamma, t.target.alpha[i2]);
        Intertwiner s1 = tensor_int(
            Intertwiner::identity(t.source.alpha[i1]), t.V[i2]);
        Intertwiner asc2 =
            associator(t.source.alpha[i1], t.source.alpha[i2], t.gamma);
        Intertwiner w = tensor_int(t.source.omega[i2][i1], idg);
        Mat map = w.u * asc2.u.adjoint() * s1.u * asc1.u;
        Mat m(c.dims[g12], c.dims[g1] * c.b.dims[g2]);
        for (int i = 0; i < c.dims[g1]; ++i)
          for (int j = 0; j < c.b.dims[g2]; ++j) {
            Mat te = tensor_elem(gam[g1], t.target.alpha[i2], gframe[g1][i],
                                 c.b.carrier[g2].frame[j]);
            m.col(i * c.b.dims[g2] + j) =
                module_coords(gam[g12].mod, gframe[g12], map * te);
          }
        c.rmul[g1][g2] = std::move(m);
      }
    }

  // B-valued inner product through the identifications Gamma_g ~ gamma (x)
  // B_g given by the bigons V.
  std::vector<Mat> gamma_basis = module_basis(t.gamma);
  int ng = static_cast<int>(gamma_basis.size());
  std::vector<std::vector<Vec>> ip1(ng, std::vector<Vec>(ng));
  for (int r = 0; r < ng; ++r)
    for (int s = 0; s < ng; ++s)
      ip1[r][s] =
          c.b.to_unit(module_inner(t.gamma.mod, gamma_basis[r],
                                   gamma_basis[s]));
  int be = c.b.group.identity;
  c.inner_b.assign(n, std::vector<Mat>(n));
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      int tg = gr.mul(gr.inv[g1], g2);
      // decompose the transported frames in the product basis of
      // gamma (x) beta_{g^-1}
      auto transported = [&](int g) {
        Correspondence rep = tensor(t.gamma, t.target.alpha[gr.inv[g]]);
        std::vector<Mat> pb = product_basis(
            t.gamma, t.target.alpha[gr.inv[g]], gamma_basis,
            c.b.carrier[g].frame);
        std::vector<Vec> coords;
        coords.reserve(c.dims[g]);
        Mat vadj = t.V[gr.inv[g]].u.adjoint();
        for (int i = 0; i < c.dims[g]; ++i)
          coords.push_back(
              module_coords(rep.mod, pb, vadj * gframe[g][i]));
        return coords;
      };
      std::vector<Vec> c1 = transported(g1), c2 = transported(g2);
      int db1 = c.b.dims[g1], db2 = c.b.dims[g2];
      Mat m = Mat::Zero(c.b.dims[tg], c.dims[g1] * c.dims[g2]);
      for (int p = 0; p < c.dims[g1]; ++p)
        for (int q = 0; q < c.dims[g2]; ++q) {
          Vec val = Vec::Zero(c.b.dims[tg]);
          for (int r = 0; r < ng; ++r)
            for (int s = 0; s < db1; ++s) {
              cx z1 = std::conj(c1[p](r * db1 + s));
              if (std::abs(z1) < 1e-14) continue;
              Vec bs = c.b.star[g1].col(s);
              for (int r2 = 0; r2 < ng; ++r2) {
                Vec t1 = c.b.mult[gr.inv[g1]][be] * kron(bs, ip1[r][r2]);
                for (int s2 = 0; s2 < db2; ++s2) {
                  cx z2 = c2[q](r2 * db2 + s2);
                  if (std::abs(z1 * z2) < 1e-14) continue;
                  Vec es = Vec::Zero(db2);
                  es(s2) = 1.0;
                  val += z1 * z2 *
                         (c.b.mult[gr.inv[g1]][g2] * kron(t1, es));
                }
              }
            }
          m.col(p * c.dims[g2] + q) = val;
        }
      c.inner_b[g1][g2] = std::move(m);
    }

  c.has_left = is_equivalence(t.gamma).ok;
  if (c.has_left) {
    int ae = gr.identity;
    std::vector<std::vector<Vec>> lip(ng, std::vector<Vec>(ng));
    for (int r = 0; r < ng; ++r)
      for (int s = 0; s < ng; ++s)
        lip[r][s] = c.a.to_unit(
            left_inner(t.gamma, gamma_basis[r], gamma_basis[s]));
    c.inner_a.assign(n, std::vector<Mat>(n));
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2) {
        int tg = gr.mul(g1, gr.inv[g2]);
        auto decompose = [&](int g) {
          std::vector<Mat> pb = product_basis(
              t.source.alpha[gr.inv[g]], t.gamma, c.a.carrier[g].frame,
              gamma_basis);
          std::vector<Vec> coords;
          for (int i = 0; i < c.dims[g]; ++i)
            coords.push_back(module_coords(gam[g].mod, pb, gframe[g][i]));
          return coords;
        };
        std::vector<Vec> d1 = decompose(g1), d2 = decompose(g2);
        int da1 = c.a.dims[g1], da2 = c.a.dims[g2];
        Mat m = Mat::Zero(c.a.dims[tg], c.dims[g1] * c.dims[g2]);
        for (int p = 0; p < c.dims[g1]; ++p)
          for (int q = 0; q < c.dims[g2]; ++q) {
            Vec val = Vec::Zero(c.a.dims[tg]);
            for (int i = 0; i < da1; ++i)
              for (int r = 0; r < ng; ++r) {
                cx z1 = d1[p](i * ng + r);
                if (std::abs(z1) < 1e-14) continue;
                Vec ei = Vec::Zero(da1);
                ei(i) = 1.0;
                for (int r2 = 0; r2 < ng; ++r2) {
                  Vec t1 = c.a.mult[g1][ae] * kron(ei, lip[r][r2]);
                  for (int j = 0; j < da2; ++j) {
                    cx z2 = std::conj(d2[q](j * ng + r2));
                    if (std::abs(z1 * z2) < 1e-14) continue;
                    val += z1 * z2 *
                           (c.a.mult[g1][gr.inv[g2]] *
                            kron(t1, Vec(c.a.star[g2].col(j))));
                  }
                }
              }
            m.col(p * c.dims[g2] + q) = val;
          }
        c.inner_a[g1][g2] = std::move(m);
      }
  }
  c.origin = std::make_shared<CorrTransformation>(t);
  return c;
}

CorrTransformation fell_correspondence_to_transformation(
    const FellCorrespondence& c, Tolerance tol) {
  if (c.origin) return *c.origin;
  if (!verify_fell_correspondence(c, tol).pass())
    throw NotVerified(
        "fell_correspondence_to_transformation: axioms fail");

  CorrTransformation t;
  t.source = fell_to_action(c.a, tol);
  t.target = fell_to_action(c.b, tol);
  const FiniteGroup& gr = c.a.group;
  int n = gr.order;
  int e = gr.identity;

  auto ia = [&](const AlgElement& a) { return Vec(c.a.to_unit(a)); };
  auto ib = [&](const AlgElement& a) { return Vec(c.b.to_unit(a)); };
  RealizedModule rm = realize_module(
      c.a.base, c.b.base, c.dims[e],
      [&](const Vec& x, const AlgElement& b) -> Vec {
        return c.rmul[e][e] * kron(x, ib(b));
      },
      [&](const Vec& x, const Vec& y) -> AlgElement {
        return c.b.from_unit(c.inner_b[e][e] * kron(Vec(x.conjugate()), y));
      },
      [&](const AlgElement& a, const Vec& x) -> Vec {
        return c.lmul[e][e] * kron(ia(a), x);
      });
  t.gamma = rm.corr;

  t.V.reserve(n);
  for (int g = 0; g < n; ++g) {
    int gi = gr.inv[g];
    Correspondence src = tensor(t.gamma, t.target.alpha[g]);
    Correspondence tgt = tensor(t.source.alpha[g], t.gamma);
    std::vector<Mat> src_pb = product_basis(
        t.gamma, t.target.alpha[g], t.gamma.frame, t.target.alpha[g].frame);
    std::vector<Mat> tgt_basis = module_basis(tgt);
    std::vector<Mat> tgt_pb = product_basis(
        t.source.alpha[g], t.gamma, t.source.alpha[g].frame, t.gamma.frame);
    // matrix of the multiplication A_{g^-1} x Gamma_1 -> Gamma_{g^-1} on
    // the C-basis of the target module
    Mat m2(c.dims[gi], static_cast<int>(tgt_basis.size()));
    for (int k = 0; k < static_cast<int>(tgt_basis.size()); ++k) {
      Vec pc = module_coords(tgt.mod, tgt_pb, tgt_basis[k]);
      m2.col(k) = c.lmul[gi][e] * pc;
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(m2);
    Mat r1 = c.rmul[e][gi];
    t.V.push_back(intertwiner_from_map(src, tgt, [&](const Mat& s) -> Mat {
      Vec pc = module_coords(src.mod, src_pb, s);
      Vec fibre = r1 * pc;
      Vec ct = cod.solve(fibre);
      return frame_combo(tgt_basis, ct);
    }));
  }
  return t;
}

VerificationReport verify_fell_representation(const FellRepresentation& r,
                                              Tolerance tol) {
  VerificationReport rep;
  rep.eps = tol.eps;
  const FiniteGroup& gr = r.bundle.group;
  int n = gr.order;
  int es = r.space.esize();

  double multlaw = 0, starlaw = 0;
  std::string mult_at, star_at;
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      int gh = gr.mul(g, h);
      for (int i = 0; i < r.bundle.dims[g]; ++i)
        for (int j = 0; j < r.bundle.dims[h]; ++j) {
          Mat lhs = Mat::Zero(es, es);
          for (int cc = 0; cc < r.bundle.dims[gh]; ++cc)
            lhs += r.bundle.mult[g][h](cc, i * r.bundle.dims[h] + j) *
                   r.pi[gh][cc];
          double res = mat_opnorm(lhs - r.pi[g][i] * r.pi[h][j]);
          if (res > multlaw) {
            multlaw = res;
            mult_at = gname(gr, g) + "," + gname(gr, h);
          }
        }
    }
    int gi = gr.inv[g];
    for (int i = 0; i < r.bundle.dims[g]; ++i) {
      Mat rhs = Mat::Zero(es, es);
      for (int cc = 0; cc < r.bundle.dims[gi]; ++cc)
        rhs += r.bundle.star[g](cc, i) * r.pi[gi][cc];
      double res = mat_opnorm(Mat(r.pi[g][i].adjoint()) - rhs);
      if (res > starlaw) {
        starlaw = res;
        star_at = gname(gr, g);
      }
    }
  }
  rep.add("multiplicative", multlaw, mult_at);
  rep.add("star-preserving", starlaw, star_at);

  std::vector<Mat> hb = basis_of_module(r.space, r.space_basis);
  int e = gr.identity;
  int cols = r.bundle.dims[e] * static_cast<int>(hb.size());
  Mat span(r.space.rank * r.space.base.dim(), cols);
  int cidx = 0;
  for (int mu = 0; mu < r.bundle.dims[e]; ++mu)
    for (const Mat& xi : hb)
      span.col(cidx++) = flatten_module(r.space, r.pi[e][mu] * xi);
  rep.add_flag("nondegenerate",
               mat_rank(span, 1e-7) == static_cast<int>(hb.size()));
  return rep;
}

FellRepresentation representation_from_fell_correspondence(
    const FellCorrespondence& c) {
  const FiniteGroup& gr = c.a.group;
  int n = gr.order;
  int e = gr.identity;

  auto ib = [&](const AlgElement& a) { return Vec(c.b.to_unit(a)); };
  RealizedModule rm = realize_module(
      MatAlg({1}, "C"), c.b.base, c.dims[e],
      [&](const Vec& x, const AlgElement& b) -> Vec {
        return c.rmul[e][e] * kron(x, ib(b));
      },
      [&](const Vec& x, const Vec& y) -> AlgElement {
        return c.b.from_unit(c.inner_b[e][e] * kron(Vec(x.conjugate()), y));
      },
      [&](const AlgElement&, const Vec& x) -> Vec { return x; });

  FellRepresentation r;
  r.bundle = c.a;
  r.space = rm.corr.mod;
  r.space_basis = rm.corr.frame;
  r.pi.resize(n);

  std::vector<Mat> frame = parseval_frame(rm.corr);
  AlgElement one = AlgElement::identity(c.b.base);
  for (int g = 0; g < n; ++g) {
    // identify Gamma_g with Gamma_1 through right multiplication by the
    // unit of the constant fibre
    Mat kmap(c.dims[g], c.dims[e]);
    for (int x = 0; x < c.dims[e]; ++x) {
      Vec ex = Vec::Zero(c.dims[e]);
      ex(x) = 1.0;
      kmap.col(x) = c.rmul[e][g] * kron(ex, ib(one));
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(kmap);
    r.pi[g].resize(c.a.dims[g]);
    for (int j = 0; j < c.a.dims[g]; ++j) {
      Vec ej = Vec::Zero(c.a.dims[g]);
      ej(j) = 1.0;
      Mat lmap(c.dims[g], c.dims[e]);
      for (int x = 0; x < c.dims[e]; ++x) {
        Vec ex = Vec::Zero(c.dims[e]);
        ex(x) = 1.0;
        lmap.col(x) = c.lmul[g][e] * kron(ej, ex);
      }
      Mat fibre_op = cod.solve(lmap);  // Gamma_1 -> Gamma_1 coordinates
      Mat op = Mat::Zero(rm.corr.mod.esize(), rm.corr.mod.esize());
      for (const Mat& s : frame) {
        Vec coords = module_coords(rm.corr.mod, rm.corr.frame, s);
        op += frame_combo(rm.corr.frame, Vec(fibre_op * coords)) *
              s.adjoint();
      }
      r.pi[g][j] = std::move(op);
    }
  }
  return r;
}

}  // namespace twist
