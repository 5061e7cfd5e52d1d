#pragma once

#include <string>
#include <vector>

#include "twist/core.hpp"

namespace twist {

// A finite group given by its Cayley table. Element i*j is table[i][j].
struct FiniteGroup {
  int order = 0;
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> inv;
  std::string label;

  FiniteGroup() = default;
  FiniteGroup(std::vector<std::vector<int>> cayley,
              std::vector<std::string> elem_names = {},
              std::string lbl = "");

  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const { return inv[a]; }
  bool same_table(const FiniteGroup& o) const {
    return table == o.table;
  }

  // Throws TwistError if associativity, identity or inverses fail.
  void validate() const;

  static FiniteGroup cyclic(int n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric3();
  static FiniteGroup trivial();
};

}  // namespace twist
