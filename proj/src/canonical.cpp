#include "sta/canonical.hpp"

#include <cmath>

namespace sta {

namespace {

// Blade masks used by the even-subalgebra views.
constexpr unsigned kE01 = 0b0011, kE02 = 0b0101, kE03 = 0b1001;
constexpr unsigned kE12 = 0b0110, kE13 = 0b1010, kE23 = 0b1100;
constexpr unsigned kI = 0b1111;

void require_even(const Multivector& psi, const char* who) {
  const double tol = 1e-13 * (1.0 + max_coeff(psi));
  if (!is_even(psi, tol)) throw NotEvenError(std::string(who) + ": odd grades present");
}

}  // namespace

CanonicalForm to_canonical(const Multivector& psi, double epsilon_null) {
  require_even(psi, "to_canonical");
  const Multivector q = psi * reverse(psi);  // scalar + pseudoscalar for even psi
  const double s = q.scalar_part();
  const double p = q.pseudoscalar_part();
  if (std::max(std::abs(s), std::abs(p)) < epsilon_null)
    throw NullStateError("to_canonical: psi psi~ is null");
  const double rho = std::hypot(s, p);
  const double beta = std::atan2(p, s);
  // (rho e^{I beta})^{-1/2} = rho^{-1/2} (cos(beta/2) - I sin(beta/2))
  const double inv_sqrt_rho = 1.0 / std::sqrt(rho);
  const Multivector root_inv =
      (Multivector::scalar(std::cos(beta / 2)) - pseudoscalar_unit() * std::sin(beta / 2)) *
      inv_sqrt_rho;
  return CanonicalForm{rho, beta, root_inv * psi};
}

Multivector from_canonical(const CanonicalForm& cf) {
  const double sqrt_rho = std::sqrt(cf.rho);
  const Multivector root =
      (Multivector::scalar(std::cos(cf.beta / 2)) + pseudoscalar_unit() * std::sin(cf.beta / 2)) *
      sqrt_rho;
  return root * cf.rotor;
}

bool validate_rotor(const Multivector& R, double tol) {
  return max_coeff_diff(R * reverse(R), Multivector::scalar(1.0)) <= tol;
}

Biquaternion biquaternion_view(const Multivector& psi) {
  require_even(psi, "biquaternion_view");
  Biquaternion b;
  b.re.w = psi.scalar_part();
  b.re.v = {psi[kE23], -psi[kE13], psi[kE12]};  // gamma_3 gamma_1 = -e13
  // I * (i, j, k) = (gamma_1 gamma_0, gamma_2 gamma_0, gamma_3 gamma_0) = -(e01, e02, e03)
  b.im.w = psi[kI];
  b.im.v = {-psi[kE01], -psi[kE02], -psi[kE03]};
  return b;
}

Multivector from_biquaternion(const Biquaternion& b) {
  Multivector m;
  m[0u] = b.re.w;
  m[kE23] = b.re.v[0];
  m[kE13] = -b.re.v[1];
  m[kE12] = b.re.v[2];
  m[kI] = b.im.w;
  m[kE01] = -b.im.v[0];
  m[kE02] = -b.im.v[1];
  m[kE03] = -b.im.v[2];
  return m;
}

Multivector primitive_idempotent() {
  return (Multivector::scalar(1.0) + gamma(0)) * 0.5;
}

IdealElement ideal_project(const Multivector& psi) {
  static const Multivector u = primitive_idempotent();
  static const Multivector phase = Multivector::blade(kE12, -1.0);  // gamma_2 gamma_1
  const Multivector pu = psi * u;
  const Multivector value = (pu - phase * pu * phase) * 0.5;
  return IdealElement{value, "half(1+g0), commutant of g2g1"};
}

}  // namespace sta
