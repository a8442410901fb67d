#include "sta/interference.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

namespace sta {

namespace {

constexpr unsigned kE12 = 0b0110;

Multivector scan_rotor(double phi) {
  // exp(gamma_2 gamma_1 phi)
  Multivector r = Multivector::scalar(std::cos(phi));
  r[kE12] = -std::sin(phi);
  return r;
}

void require_versor(const Multivector& R, const char* who) {
  if (!validate_rotor(R)) throw VersorError(std::string(who) + ": input is not a versor");
}

}  // namespace

BeamState make_beam(const CanonicalForm& cf, double phase) {
  return BeamState{cf.rho, cf.beta, cf.rotor, phase};
}

Multivector beam_amplitude(const BeamState& b) {
  const double sqrt_rho = std::sqrt(b.rho);
  const Multivector root =
      (Multivector::scalar(std::cos(b.beta / 2)) + pseudoscalar_unit() * std::sin(b.beta / 2)) *
      sqrt_rho;
  return root * b.rotor * scan_rotor(b.phase);
}

Multivector superpose(const BeamState& b1, const BeamState& b2) {
  return beam_amplitude(b1) + beam_amplitude(b2);
}

Multivector cross_term(const Multivector& R1, const Multivector& R2) {
  require_versor(R1, "cross_term");
  require_versor(R2, "cross_term");
  return geometric_product(R1, reverse(R2)) + geometric_product(reverse(R1), R2);
}

double intensity(const Multivector& psi) {
  return (psi * reverse(psi)).scalar_part();
}

double intensity_pseudoscalar(const Multivector& psi) {
  return (psi * reverse(psi)).pseudoscalar_part();
}

namespace {

InterferencePattern scan_pattern(const Multivector& R1, const Multivector& R2, double rho1,
                                 double rho2, const std::vector<double>& phi_grid) {
  require_versor(R1, "pattern");
  require_versor(R2, "pattern");
  const auto [R1_ev, R1_od] = parity_split(R1);
  const double w = std::sqrt(rho1 * rho2);

  InterferencePattern p;
  p.phases = phi_grid;
  for (double phi : phi_grid) {
    const Multivector R2p = R2 * scan_rotor(phi);
    const auto [R2_ev, R2_od] = parity_split(R2p);

    const Multivector cross = geometric_product(R1, reverse(R2p)) +
                              geometric_product(reverse(R1), R2p);
    const Multivector ee = R1_ev * reverse(R2_ev) + reverse(R1_ev) * R2_ev;
    const Multivector oo = R1_od * reverse(R2_od) + reverse(R1_od) * R2_od;
    // Often-quoted two-term form: R1ev R2ev - R1od R2od, no reversion marks.
    const Multivector printed = R1_ev * R2_ev - R1_od * R2_od;

    p.cross_scalar.push_back(w * cross.scalar_part());
    p.even_even_scalar.push_back(w * ee.scalar_part());
    p.odd_odd_scalar.push_back(w * oo.scalar_part());
    p.intensity.push_back(rho1 + rho2 + w * cross.scalar_part());
    p.intensity_as_printed.push_back(rho1 + rho2 + w * printed.scalar_part());
  }
  return p;
}

}  // namespace

InterferencePattern pattern_even(double rho1, double rho2,
                                 const std::vector<double>& phi_grid) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0))
    throw DomainError("pattern_even: densities must be positive");
  InterferencePattern p;
  p.phases = phi_grid;
  const double w = std::sqrt(rho1 * rho2);
  for (double phi : phi_grid) {
    const Multivector R2 = scan_rotor(-phi);  // exp(-g2g1 phi)
    const Multivector cross = cross_term(Multivector::scalar(1.0), R2);
    const double cs = cross.scalar_part();  // equals 2 cos(phi)
    p.cross_scalar.push_back(w * cs);
    p.even_even_scalar.push_back(w * cs);
    p.odd_odd_scalar.push_back(0.0);
    p.intensity.push_back(rho1 + rho2 + w * cs);
    p.intensity_as_printed.push_back(rho1 + rho2 + w * std::cos(phi));
  }
  return p;
}

InterferencePattern pattern_mixed(const Multivector& R1, const Multivector& R2,
                                  const std::vector<double>& phi_grid) {
  return scan_pattern(R1, R2, 1.0, 1.0, phi_grid);
}

InterferencePattern beam_pattern(const BeamState& b1, const BeamState& b2,
                                 const std::vector<double>& phi_grid) {
  return scan_pattern(b1.rotor * scan_rotor(b1.phase), b2.rotor * scan_rotor(b2.phase),
                      b1.rho, b2.rho, phi_grid);
}

RegionResult region_sequence(const BeamState& b, const std::vector<RegionTransform>& regions) {
  RegionResult out;
  out.beam = b;
  for (const RegionTransform& reg : regions) {
    require_versor(reg.R, "region_sequence");
    out.beam.rotor = out.beam.rotor * reg.R;
    const Multivector rr = out.beam.rotor * reverse(out.beam.rotor);
    if (max_coeff_diff(rr, Multivector::scalar(1.0)) > 1e-8) {
      // R <- R (R R~)^{-1/2}; R R~ is scalar + pseudoscalar.
      const std::complex<double> z{rr.scalar_part(), rr.pseudoscalar_part()};
      const std::complex<double> inv_sqrt = 1.0 / std::sqrt(z);
      out.beam.rotor = out.beam.rotor * (Multivector::scalar(inv_sqrt.real()) +
                                         pseudoscalar_unit() * inv_sqrt.imag());
      ++out.renormalizations;
    }
  }
  return out;
}

double commutator_norm(const Multivector& Ra, const Multivector& Rb) {
  return max_coeff(Ra * Rb - Rb * Ra);
}

std::string pattern_to_csv(const InterferencePattern& p) {
  std::string out = "phase,intensity_exact,cross_scalar,even_even_scalar,odd_odd_scalar,intensity_as_printed\n";
  char line[256];
  for (std::size_t i = 0; i < p.phases.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.phases[i],
                  p.intensity[i], p.cross_scalar[i], p.even_even_scalar[i],
                  p.odd_odd_scalar[i], p.intensity_as_printed[i]);
    out += line;
  }
  return out;
}

}  // namespace sta
