#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace iia {

// A basis monomial e^{i1...ik} of the exterior algebra over the fixed
// 6-dimensional space, stored as a 6-bit mask (bit i-1 <-> index i).
using Blade = std::uint8_t;

constexpr int kDim = 6;
constexpr Blade kFullBlade = 0x3F;  // e^{123456}

constexpr int blade_degree(Blade b) { return std::popcount(static_cast<unsigned>(b)); }

constexpr Blade blade_bit(int index1) {  // index1 in 1..6
  return static_cast<Blade>(1u << (index1 - 1));
}

inline Blade blade_of(std::initializer_list<int> indices) {
  Blade b = 0;
  for (int i : indices) {
    if (i < 1 || i > kDim) throw std::out_of_range("blade index out of range");
    Blade bit = blade_bit(i);
    if (b & bit) throw std::invalid_argument("repeated blade index");
    b |= bit;
  }
  return b;
}

// Sign of e^a ^ e^b as (-1)^(inversions), 0 if the blades overlap.
constexpr int wedge_sign(Blade a, Blade b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j = 0; j < kDim; ++j) {
    if (b & (1u << j)) {
      // count indices of a strictly greater than j
      unsigned higher = a & ~((1u << (j + 1)) - 1u);
      inversions += std::popcount(higher);
    }
  }
  return (inversions & 1) ? -1 : 1;
}

// iota_{e_i} e^b: sign (-1)^(position of i in b), or 0 if i not in b.
// Result blade is b with i removed.
constexpr int interior_sign(int index1, Blade b) {
  Blade bit = blade_bit(index1);
  if (!(b & bit)) return 0;
  unsigned lower = b & (bit - 1u);
  return (std::popcount(lower) & 1) ? -1 : 1;
}

// Lexicographic order on the sorted index sequences ({1,4} before {2,3}),
// used everywhere a deterministic basis ordering matters.
struct BladeLexLess {
  constexpr bool operator()(Blade a, Blade b) const {
    Blade diff = a ^ b;
    if (diff == 0) {
      return false;
    }
    Blade low = diff & static_cast<Blade>(-diff);
    return (a & low) != 0;
  }
};

inline const std::vector<Blade>& blades_of_degree(int k) {
  static const std::vector<std::vector<Blade>> tables = [] {
    std::vector<std::vector<Blade>> t(kDim + 1);
    for (unsigned m = 0; m <= kFullBlade; ++m) t[blade_degree(static_cast<Blade>(m))].push_back(static_cast<Blade>(m));
    BladeLexLess less;
    for (auto& v : t) std::sort(v.begin(), v.end(), less);
    return t;
  }();
  if (k < 0 || k > kDim) throw std::out_of_range("blade degree out of range");
  return tables[k];
}

// Position of a blade within blades_of_degree(degree(b)).
inline int blade_lex_index(Blade b) {
  static const std::vector<int> pos = [] {
    std::vector<int> p(kFullBlade + 1, -1);
    for (int k = 0; k <= kDim; ++k) {
      const auto& list = blades_of_degree(k);
      for (size_t i = 0; i < list.size(); ++i) p[list[i]] = static_cast<int>(i);
    }
    return p;
  }();
  return pos[b];
}

inline std::string blade_str(Blade b) {
  if (b == 0) return "1";
  std::string s = "e";
  for (int i = 1; i <= kDim; ++i)
    if (b & blade_bit(i)) s += static_cast<char>('0' + i);
  return s;
}

}  // namespace iia
