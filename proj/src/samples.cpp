#include "twist/samples.hpp"

namespace twist {

namespace {

// Place a matrix acting on (C^k tensor block j of B) into the embedded
// k x k grid over B.
Mat embed_block(const MatAlg& b, int k, int j, const Mat& m) {
  int nb = b.nrows();
  int off = 0;
  for (int t = 0; t < j; ++t) off += b.block_dims[t];
  int mj = b.block_dims[j];
  Mat r = Mat::Zero(k * nb, k * nb);
  for (int i = 0; i < k; ++i)
    for (int i2 = 0; i2 < k; ++i2)
      r.block(i * nb + off, i2 * nb + off, mj, mj) =
          m.block(i * mj, i2 * mj, mj, mj);
  return r;
}

}  // namespace

Mat random_matB_unitary(const MatAlg& b, int rank, Rng& rng) {
  Mat r = Mat::Zero(rank * b.nrows(), rank * b.nrows());
  for (int j = 0; j < b.num_blocks(); ++j)
    r += embed_block(b, rank, j, rng.unitary(rank * b.block_dims[j]));
  return r;
}

Correspondence random_correspondence(const MatAlg& a, const MatAlg& b,
                                     Rng& rng, int max_rank) {
  int k = 1 + rng.uniform_int(max_rank);
  int nblk_a = a.num_blocks();
  // multiplicities t[j][i] of A-block i inside (C^k tensor B-block j)
  std::vector<std::vector<int>> t(b.num_blocks(),
                                  std::vector<int>(nblk_a, 0));
  bool any = false;
  for (int j = 0; j < b.num_blocks(); ++j) {
    int cap = k * b.block_dims[j];
    int used = 0;
    for (int i = 0; i < nblk_a; ++i) {
      int room = (cap - used) / a.block_dims[i];
      if (room <= 0) continue;
      int m = rng.uniform_int(room + 1);
      t[j][i] = m;
      used += m * a.block_dims[i];
      if (m > 0) any = true;
    }
  }
  if (!any) {
    // force a non-degenerate left action
    int i = 0;
    for (int ii = 1; ii < nblk_a; ++ii)
      if (a.block_dims[ii] < a.block_dims[i]) i = ii;
    for (int j = 0; j < b.num_blocks(); ++j)
      if (k * b.block_dims[j] >= a.block_dims[i]) {
        t[j][i] = 1;
        break;
      }
  }

  Correspondence e;
  e.left = a;
  int es = k * b.nrows();

  auto embed_basis = [&](const AlgElement& x) {
    Mat r = Mat::Zero(es, es);
    for (int j = 0; j < b.num_blocks(); ++j) {
      int cap = k * b.block_dims[j];
      Mat blk = Mat::Zero(cap, cap);
      int pos = 0;
      for (int i = 0; i < nblk_a; ++i)
        for (int copy = 0; copy < t[j][i]; ++copy) {
          blk.block(pos, pos, a.block_dims[i], a.block_dims[i]) =
              x.blocks[i];
          pos += a.block_dims[i];
        }
      r += embed_block(b, k, j, blk);
    }
    return r;
  };

  Mat u = random_matB_unitary(b, k, rng);
  Mat p = u * embed_basis(AlgElement::identity(a)) * u.adjoint();
  e.mod = HilbertModule(b, k, std::move(p));
  for (int mu = 0; mu < a.dim(); ++mu)
    e.act.push_back(u * embed_basis(basis_element(a, mu)) * u.adjoint());
  return e;
}

Mat random_module_element(const Correspondence& e, Rng& rng) {
  int nb = e.right().nrows();
  Mat xi(e.mod.esize(), nb);
  for (int i = 0; i < e.mod.rank; ++i)
    xi.block(i * nb, 0, nb, nb) =
        rng.random_element(e.right()).embedded();
  return e.mod.proj * xi;
}

AlgElement clock_matrix(int n) {
  MatAlg mn({n}, "M" + std::to_string(n));
  AlgElement u = AlgElement::zero(mn);
  for (int j = 0; j < n; ++j)
    u.blocks[0](j, j) = std::polar(1.0, 2.0 * M_PI * j / n);
  return u;
}

AlgElement shift_matrix(int n) {
  MatAlg mn({n}, "M" + std::to_string(n));
  AlgElement v = AlgElement::zero(mn);
  for (int i = 0; i < n; ++i) v.blocks[0](i, (i + 1) % n) = 1.0;
  return v;
}

BSAction clock_shift_action(int n) {
  FiniteGroup zn = FiniteGroup::cyclic(n);
  FiniteGroup g = FiniteGroup::product(zn, zn);
  MatAlg mn({n}, "M" + std::to_string(n));
  AlgElement u = clock_matrix(n);
  AlgElement v = shift_matrix(n);

  BSAction act;
  act.group = g;
  act.algebra = mn;
  auto word = [&](int idx) {
    int a = idx / n, b = idx % n;
    AlgElement w = AlgElement::identity(mn);
    for (int i = 0; i < a; ++i) w = w * u;
    for (int i = 0; i < b; ++i) w = w * v;
    return w;
  };
  for (int idx = 0; idx < g.order; ++idx)
    act.alpha.push_back(ad_unitary(word(idx)));
  act.omega.resize(g.order);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j) {
      int b1 = i % n, a2 = j / n;
      // omega* is the bicharacter z^{b1 a2}
      cx z = std::polar(1.0, -2.0 * M_PI * (b1 * a2 % n) / n);
      act.omega[i].push_back(AlgElement::scalar(mn, z));
    }
  act.u = AlgElement::identity(mn);
  return act;
}

BSAction clock_double_shift_action() {
  FiniteGroup g =
      FiniteGroup::product(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
  MatAlg m4({4}, "M4");
  AlgElement u = clock_matrix(4);
  AlgElement s = shift_matrix(4);
  AlgElement w = s * s;  // order two, anticommutes with the clock

  BSAction act;
  act.group = g;
  act.algebra = m4;
  auto word = [&](int idx) {
    int a = idx / 2, b = idx % 2;
    AlgElement r = AlgElement::identity(m4);
    for (int i = 0; i < a; ++i) r = r * u;
    for (int i = 0; i < b; ++i) r = r * w;
    return r;
  };
  for (int idx = 0; idx < g.order; ++idx)
    act.alpha.push_back(ad_unitary(word(idx)));
  act.omega.resize(g.order);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j) {
      int b1 = i % 2, a2 = j / 2;
      cx z = (b1 * a2) % 2 ? cx(-1.0) : cx(1.0);
      act.omega[i].push_back(AlgElement::scalar(m4, z));
    }
  act.u = AlgElement::identity(m4);
  return act;
}

BSAction sign_twist_action() {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  MatAlg m2({2}, "M2");
  BSAction act = BSAction::trivial(z2, m2);
  act.omega[1][1] = AlgElement::scalar(m2, -1.0);
  return act;
}

BSAction random_twisted_action(const FiniteGroup& g, const MatAlg& a,
                               Rng& rng) {
  std::vector<AlgElement> v;
  for (int i = 0; i < g.order; ++i) v.push_back(rng.random_unitary(a));
  return apply_equivalence(BSAction::trivial(g, a), v);
}

Intertwiner random_conjugate(const Correspondence& e, Rng& rng) {
  Mat w = random_matB_unitary(e.right(), e.mod.rank, rng);
  Correspondence ep = e;
  ep.mod.proj = w * e.mod.proj * w.adjoint();
  for (auto& m : ep.act) m = (w * m * w.adjoint()).eval();
  ep.frame.clear();
  Mat u = w * e.mod.proj;
  return Intertwiner(e, std::move(ep), std::move(u));
}

}  // namespace twist
