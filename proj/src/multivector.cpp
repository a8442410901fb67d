#include "sta/multivector.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

namespace sta {

namespace {

enum class ProductPart { inner, outer };

Multivector graded_product(const Multivector& a, const Multivector& b, ProductPart part) {
  Multivector r;
  for (std::size_t i = 0; i < kBladeCount; ++i) {
    const double ai = a.c[i];
    if (ai == 0.0) continue;
    const int gi = blade_grade(static_cast<unsigned>(i));
    for (std::size_t j = 0; j < kBladeCount; ++j) {
      const double bj = b.c[j];
      if (bj == 0.0) continue;
      const int gj = blade_grade(static_cast<unsigned>(j));
      const CayleyEntry e = kCayley[i][j];
      const int gt = blade_grade(e.target);
      bool keep = false;
      if (part == ProductPart::inner) {
        keep = gi != 0 && gj != 0 && gt == std::abs(gi - gj);
      } else {
        keep = gt == gi + gj;
      }
      if (keep) r.c[e.target] += static_cast<double>(e.sign) * ai * bj;
    }
  }
  return r;
}

// exp(B) for B*B = z (scalar + pseudoscalar): the subalgebra R + R*I acts as
// the complex numbers (I^2 = -1, I central on evens), so
// exp(B) = cosh(w) + B sinh(w)/w with w = sqrt(z).
Multivector exp_closed_form(const Multivector& B, std::complex<double> z) {
  const std::complex<double> w = std::sqrt(z);
  const std::complex<double> ch = std::cosh(w);
  std::complex<double> shw;  // sinh(w)/w
  if (std::abs(w) < 1e-4) {
    shw = 1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0;
  } else {
    shw = std::sinh(w) / w;
  }
  const Multivector I = pseudoscalar_unit();
  Multivector r = Multivector::scalar(ch.real()) + I * ch.imag();
  r += (Multivector::scalar(shw.real()) + I * shw.imag()) * B;
  return r;
}

Multivector exp_series_scaled(const Multivector& B) {
  // Scale until the coefficients are small, sum 24 Taylor terms, square back.
  int k = 0;
  double m = max_coeff(B);
  while (m > 0.125 && k < 64) {
    m *= 0.5;
    ++k;
  }
  const Multivector Bs = B * std::ldexp(1.0, -k);
  Multivector sum = Multivector::scalar(1.0);
  Multivector term = Multivector::scalar(1.0);
  for (int n = 1; n <= 24; ++n) {
    term = term * Bs * (1.0 / n);
    sum += term;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

Multivector inner_product(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, ProductPart::inner);
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, ProductPart::outer);
}

Multivector exp_even(const Multivector& B) {
  const double scale = 1.0 + max_coeff(B);
  for (std::size_t i = 0; i < kBladeCount; ++i) {
    const int g = blade_grade(static_cast<unsigned>(i));
    if (g != 2 && g != 4 && std::abs(B.c[i]) > 1e-12 * scale)
      throw GradeError("exp_even: input must contain grades 2 and 4 only");
  }
  const Multivector B2 = B * B;
  double offdiag = 0.0;
  for (std::size_t i = 1; i < kBladeCount - 1; ++i)
    offdiag = std::max(offdiag, std::abs(B2.c[i]));
  if (offdiag <= 1e-14 * (1.0 + max_coeff(B2)))
    return exp_closed_form(B, {B2.scalar_part(), B2.pseudoscalar_part()});
  return exp_series_scaled(B);
}

std::string to_string(const Multivector& a) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < kBladeCount; ++i) {
    const double v = a.c[i];
    if (v == 0.0) continue;
    const double mag = std::abs(v);
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += (v < 0) ? " - " : " + ";
    }
    std::snprintf(buf, sizeof buf, "%.12g", mag);
    out += buf;
    if (i != 0) {
      out += " ";
      out += blade_name(static_cast<unsigned>(i));
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace sta
