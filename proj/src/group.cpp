#include "twist/group.hpp"

#include <algorithm>
#include <array>

namespace twist {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley,
                         std::vector<std::string> elem_names, std::string lbl)
    : order(static_cast<int>(cayley.size())),
      names(std::move(elem_names)),
      table(std::move(cayley)),
      label(std::move(lbl)) {
  if (order == 0) throw TwistError("empty group table");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != order)
      throw TwistError("group table is not square");
  if (names.empty()) {
    for (int i = 0; i < order; ++i) names.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != order)
    throw TwistError("group name count mismatch");

  identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int a = 0; a < order; ++a)
      if (table[e][a] != a || table[a][e] != a) {
        ok = false;
        break;
      }
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw TwistError("group has no identity");

  inv.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (table[a][b] == identity && table[b][a] == identity) {
        inv[a] = b;
        break;
      }
    if (inv[a] < 0) throw TwistError("group element has no inverse");
  }
  validate();
}

void FiniteGroup::validate() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      if (table[a][b] < 0 || table[a][b] >= order)
        throw TwistError("group table entry out of range");
      for (int c = 0; c < order; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw TwistError("group table is not associative");
    }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return FiniteGroup(std::move(t), std::move(names),
                     "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order * b.order;
  auto idx = [&](int i, int j) { return i * b.order + j; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int i1 = 0; i1 < a.order; ++i1)
    for (int j1 = 0; j1 < b.order; ++j1) {
      names[idx(i1, j1)] = "(" + a.names[i1] + "," + b.names[j1] + ")";
      for (int i2 = 0; i2 < a.order; ++i2)
        for (int j2 = 0; j2 < b.order; ++j2)
          t[idx(i1, j1)][idx(i2, j2)] =
              idx(a.mul(i1, i2), b.mul(j1, j2));
    }
  return FiniteGroup(std::move(t), std::move(names),
                     a.label + "x" + b.label);
}

FiniteGroup FiniteGroup::symmetric3() {
  // permutations of {0,1,2} listed as id, (01), (02), (12), (012), (021)
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto find = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  int n = 6;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = find(c);
    }
  std::vector<std::string> names = {"e",    "(01)",  "(02)",
                                    "(12)", "(012)", "(021)"};
  return FiniteGroup(std::move(t), std::move(names), "S3");
}

FiniteGroup FiniteGroup::trivial() {
  return FiniteGroup({{0}}, {"e"}, "1");
}

}  // namespace twist
