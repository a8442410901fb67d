#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "sta/blades.hpp"
#include "sta/errors.hpp"

// General element of Cl(1,3): 16 real coefficients over the blade basis.
// All operations are pure functions on immutable values; nothing here keeps
// state, so everything is safe to share across threads.

namespace sta {

struct Multivector {
  std::array<double, kBladeCount> c{};

  constexpr double operator[](std::size_t i) const { return c[i]; }
  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](BladeIndex b) const { return c[b.bits]; }
  constexpr double& operator[](BladeIndex b) { return c[b.bits]; }

  static constexpr Multivector scalar(double v) {
    Multivector m;
    m.c[0] = v;
    return m;
  }

  static constexpr Multivector blade(unsigned mask, double v = 1.0) {
    Multivector m;
    m.c[mask & 0xFu] = v;
    return m;
  }

  constexpr double scalar_part() const { return c[0]; }
  constexpr double pseudoscalar_part() const { return c[15]; }

  constexpr Multivector operator+(const Multivector& o) const {
    Multivector r;
    for (std::size_t i = 0; i < kBladeCount; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }

  constexpr Multivector operator-(const Multivector& o) const {
    Multivector r;
    for (std::size_t i = 0; i < kBladeCount; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }

  constexpr Multivector operator-() const {
    Multivector r;
    for (std::size_t i = 0; i < kBladeCount; ++i) r.c[i] = -c[i];
    return r;
  }

  constexpr Multivector operator*(double s) const {
    Multivector r;
    for (std::size_t i = 0; i < kBladeCount; ++i) r.c[i] = c[i] * s;
    return r;
  }

  constexpr Multivector& operator+=(const Multivector& o) {
    for (std::size_t i = 0; i < kBladeCount; ++i) c[i] += o.c[i];
    return *this;
  }

  constexpr Multivector& operator-=(const Multivector& o) {
    for (std::size_t i = 0; i < kBladeCount; ++i) c[i] -= o.c[i];
    return *this;
  }
};

constexpr Multivector operator*(double s, const Multivector& m) { return m * s; }

inline Multivector gamma(int mu) { return Multivector::blade(1u << mu); }

inline Multivector pseudoscalar_unit() { return Multivector::blade(0xFu); }

namespace detail {

// Table-parameterized product kernel. The public product uses kCayley; the
// self-check suite can pass a deliberately corrupted copy to prove the
// invariant checks catch a wrong table.
constexpr Multivector multiply_with_table(const Multivector& a, const Multivector& b,
                                          const CayleyTable& table) {
  Multivector r;
  for (std::size_t i = 0; i < kBladeCount; ++i) {
    const double ai = a.c[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < kBladeCount; ++j) {
      const CayleyEntry e = table[i][j];
      r.c[e.target] += static_cast<double>(e.sign) * ai * b.c[j];
    }
  }
  return r;
}

}  // namespace detail

constexpr Multivector geometric_product(const Multivector& a, const Multivector& b) {
  return detail::multiply_with_table(a, b, kCayley);
}

constexpr Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

// psi~ : grade-k part picks up (-1)^{k(k-1)/2}.
constexpr Multivector reverse(const Multivector& a) {
  Multivector r;
  for (std::size_t i = 0; i < kBladeCount; ++i)
    r.c[i] = reversion_sign(blade_grade(static_cast<unsigned>(i))) * a.c[i];
  return r;
}

// psi^bar : every basis vector reversed in direction, sign (-1)^k.
constexpr Multivector grade_involution(const Multivector& a) {
  Multivector r;
  for (std::size_t i = 0; i < kBladeCount; ++i)
    r.c[i] = involution_sign(blade_grade(static_cast<unsigned>(i))) * a.c[i];
  return r;
}

inline Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > kDim) throw GradeError("grade_project: grade must be in 0..4");
  Multivector r;
  for (std::size_t i = 0; i < kBladeCount; ++i)
    if (blade_grade(static_cast<unsigned>(i)) == k) r.c[i] = a.c[i];
  return r;
}

// (even, odd) pair; even holds grades {0,2,4}, odd holds {1,3}.
constexpr std::pair<Multivector, Multivector> parity_split(const Multivector& a) {
  Multivector even, odd;
  for (std::size_t i = 0; i < kBladeCount; ++i) {
    if (blade_grade(static_cast<unsigned>(i)) & 1)
      odd.c[i] = a.c[i];
    else
      even.c[i] = a.c[i];
  }
  return {even, odd};
}

constexpr double max_coeff(const Multivector& a) {
  double m = 0.0;
  for (double v : a.c) {
    const double av = v < 0 ? -v : v;
    if (av > m) m = av;
  }
  return m;
}

constexpr double max_coeff_diff(const Multivector& a, const Multivector& b) {
  return max_coeff(a - b);
}

constexpr bool is_even(const Multivector& a, double tol = 0.0) {
  for (std::size_t i = 0; i < kBladeCount; ++i)
    if ((blade_grade(static_cast<unsigned>(i)) & 1) && std::abs(a.c[i]) > tol)
      return false;
  return true;
}

// Inner and outer parts of the geometric product.  inner keeps the
// grade-|r-s| terms with scalar factors excluded, outer keeps grade r+s;
// for a grade-1 factor the two reassemble the full product exactly.  For
// general grades the product has middle-grade terms neither part captures.
Multivector inner_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);

// Exponential on the even subalgebra, input restricted to grades {2,4}.
// Closed form when B*B is scalar + pseudoscalar, scaled-and-squared series
// otherwise; either path is accurate to better than 1e-13 in max coefficient
// norm.
Multivector exp_even(const Multivector& B);

// Debug rendering, e.g. "3 + 2 e01 - 1 e0123".
std::string to_string(const Multivector& a);

}  // namespace sta
