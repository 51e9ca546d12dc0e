#pragma once

#include <optional>
#include <vector>

#include "tc/lattice.hpp"

namespace tc {

// Linear systems A*x == b over Z with a modulus per row (0 = exact
// equation). Realized by adjoining one slack column m_i * e_i per
// modular row and solving over Z.
struct CongruenceSystem {
  IntMatrix a;            // p x q
  std::vector<Int> mods;  // length p, 0 = exact

  CongruenceSystem(IntMatrix m, std::vector<Int> moduli)
      : a(std::move(m)), mods(std::move(moduli)) {
    if (mods.size() != a.rows) throw Error("CongruenceSystem: modulus count mismatch");
  }

  IntMatrix augmented() const {
    std::vector<ExpVec> slack;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (mods[i] == 0) continue;
      ExpVec e(a.rows, Int(0));
      e[i] = mods[i];
      slack.push_back(e);
    }
    return a.hstack(IntMatrix::from_columns(a.rows, slack));
  }

  // Some x with A*x == b modulo the row moduli, or nothing.
  std::optional<ExpVec> solve(const ExpVec& b) const {
    auto full = solve_in_span(augmented(), b);
    if (!full) return std::nullopt;
    ExpVec x(a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) x[j] = (*full)[j];
    return x;
  }

  // Canonical basis of {x : A*x == 0 modulo the row moduli}.
  Lattice kernel() const {
    IntMatrix k = kernel_lattice(augmented());
    IntMatrix proj(a.cols, k.cols);
    for (std::size_t i = 0; i < a.cols; ++i)
      for (std::size_t j = 0; j < k.cols; ++j) proj.at(i, j) = k.at(i, j);
    return Lattice::from_columns(a.cols, proj);
  }
};

}  // namespace tc
