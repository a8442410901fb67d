#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

// Basis blades of the spacetime algebra Cl(1,3), signature (+,-,-,-).
// A blade is encoded as a 4-bit mask: bit mu set <=> gamma_mu is a factor.
// Canonical factor order inside a blade is ascending index, so mask 0b1111
// is gamma_0 gamma_1 gamma_2 gamma_3 (the unit pseudoscalar).

namespace sta {

inline constexpr int kDim = 4;
inline constexpr int kBladeCount = 16;

// gamma_0^2 = +1, gamma_k^2 = -1 for k = 1..3.
inline constexpr std::array<int, kDim> kMetric{+1, -1, -1, -1};

constexpr int metric(int mu) { return kMetric[static_cast<std::size_t>(mu)]; }

struct BladeIndex {
  std::uint8_t bits = 0;

  constexpr int grade() const { return std::popcount(bits); }
  constexpr bool operator==(const BladeIndex&) const = default;
};

constexpr int blade_grade(unsigned mask) { return std::popcount(mask & 0xFu); }

// Sign of the geometric product of two basis blades: count the transpositions
// needed to merge the factor lists, then contract repeated vectors with the
// metric.
constexpr int blade_product_sign(unsigned a, unsigned b) {
  int swaps = 0;
  unsigned t = a >> 1;
  while (t != 0) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  int sign = (swaps & 1) ? -1 : +1;
  unsigned common = a & b;
  while (common != 0) {
    sign *= kMetric[static_cast<std::size_t>(std::countr_zero(common))];
    common &= common - 1;
  }
  return sign;
}

struct CayleyEntry {
  std::uint8_t target;
  std::int8_t sign;
};

using CayleyTable = std::array<std::array<CayleyEntry, kBladeCount>, kBladeCount>;

constexpr CayleyTable make_cayley_table() {
  CayleyTable t{};
  for (unsigned a = 0; a < kBladeCount; ++a) {
    for (unsigned b = 0; b < kBladeCount; ++b) {
      t[a][b] = CayleyEntry{static_cast<std::uint8_t>(a ^ b),
                            static_cast<std::int8_t>(blade_product_sign(a, b))};
    }
  }
  return t;
}

// Precomputed once; all products in the library go through this table.
inline constexpr CayleyTable kCayley = make_cayley_table();

// Reversion flips grades 2 and 3; grade involution flips odd grades.
constexpr double reversion_sign(int grade) {
  return (grade == 2 || grade == 3) ? -1.0 : 1.0;
}

constexpr double involution_sign(int grade) { return (grade & 1) ? -1.0 : 1.0; }

// Debug name, e.g. "1", "e0", "e13", "e0123".
inline std::string blade_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string s = "e";
  for (int mu = 0; mu < kDim; ++mu) {
    if (mask & (1u << mu)) s += static_cast<char>('0' + mu);
  }
  return s;
}

}  // namespace sta
