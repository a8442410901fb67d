#pragma once

#include <array>
#include <string>

#include "sta/multivector.hpp"

// Canonical decomposition psi = (rho e^{I beta})^{1/2} R of even multivectors,
// quaternion/biquaternion views of the even subalgebra, and the spinor-ideal
// projection.

namespace sta {

struct CanonicalForm {
  double rho = 1.0;          // probability density, > 0
  double beta = 0.0;         // in (-pi, pi]; 0 tags an electron, pi a positron
  Multivector rotor;         // even, rotor * reverse(rotor) = 1

  CanonicalForm() : rotor(Multivector::scalar(1.0)) {}
  CanonicalForm(double rho_, double beta_, Multivector rotor_)
      : rho(rho_), beta(beta_), rotor(rotor_) {}
};

inline constexpr double kEpsilonNull = 1e-10;

// Decompose an even psi with |psi psi~| above epsilon_null.  psi psi~ is
// always scalar + pseudoscalar for even psi; rho and beta are its polar form
// and R = (rho e^{I beta})^{-1/2} psi.  Throws NotEvenError / NullStateError.
CanonicalForm to_canonical(const Multivector& psi, double epsilon_null = kEpsilonNull);

// sqrt(rho) (cos(beta/2) + I sin(beta/2)) R.  Principal branch: the rotor is
// fixed only up to overall sign, so comparisons are made modulo that sign.
Multivector from_canonical(const CanonicalForm& cf);

// True iff R * reverse(R) = 1 within tol.  Odd versors (e.g. gamma_0) pass.
bool validate_rotor(const Multivector& R, double tol = 1e-10);

// Hamilton quaternion on the spatial-rotation blades.
// Basis map: i -> gamma_2 gamma_3, j -> gamma_3 gamma_1, k -> gamma_1 gamma_2.
struct Quaternion {
  double w = 0.0;
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Quaternion operator*(const Quaternion& o) const {
    return Quaternion{
        w * o.w - v[0] * o.v[0] - v[1] * o.v[1] - v[2] * o.v[2],
        {w * o.v[0] + v[0] * o.w + v[1] * o.v[2] - v[2] * o.v[1],
         w * o.v[1] + v[1] * o.w + v[2] * o.v[0] - v[0] * o.v[2],
         w * o.v[2] + v[2] * o.w + v[0] * o.v[1] - v[1] * o.v[0]}};
  }
  Quaternion operator+(const Quaternion& o) const {
    return Quaternion{w + o.w, {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}};
  }
  Quaternion operator-(const Quaternion& o) const {
    return Quaternion{w - o.w, {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}};
  }
};

// q + I q' with I the unit pseudoscalar; a linear bijection onto the even
// subalgebra (4 + 4 = 8 dimensions), and a ring isomorphism since I is
// central on evens with I^2 = -1.
struct Biquaternion {
  Quaternion re;  // q
  Quaternion im;  // q'

  Biquaternion operator*(const Biquaternion& o) const {
    return Biquaternion{re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

Biquaternion biquaternion_view(const Multivector& psi);  // throws NotEvenError
Multivector from_biquaternion(const Biquaternion& b);

// Element of the minimal left ideal Cl(1,3) * (1+gamma_0)/2, cut down to the
// 4-dimensional slice commuting with the phase blade gamma_2 gamma_1 (the
// Dirac-spinor realization: i acts as right-multiplication by the phase
// blade's reverse).
struct IdealElement {
  Multivector value;
  std::string idempotent_id;
};

// (1 + gamma_0)/2, the primitive idempotent that right-stabilizes the ideal.
Multivector primitive_idempotent();

// value = the gamma_2 gamma_1 - commuting component of psi * (1+gamma_0)/2.
// The projection operator is idempotent and its image over all 16 basis
// blades spans exactly 4 real dimensions.
IdealElement ideal_project(const Multivector& psi);

}  // namespace sta
