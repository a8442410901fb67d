#pragma once

#include <string>
#include <vector>

#include "sta/canonical.hpp"
#include "sta/multivector.hpp"

// Two-beam superposition of canonical-form states: the exact cross term
// R1 R2~ + R1~ R2, the even-rotor cosine law, the even/odd decomposition of
// the cross term, and the non-commuting region-sequence experiment.

namespace sta {

// A beam in canonical form.  Region transforms may carry odd parts, so the
// accumulated rotor is a general versor (R R~ = 1), not necessarily even;
// electron beams have beta = 0.
struct BeamState {
  double rho = 1.0;
  double beta = 0.0;
  Multivector rotor = Multivector::scalar(1.0);
  double phase = 0.0;  // plane-wave phase offset, applied as a right factor
};

BeamState make_beam(const CanonicalForm& cf, double phase = 0.0);

// sqrt(rho e^{I beta}) rotor exp(g2g1 phase).
Multivector beam_amplitude(const BeamState& b);

// psi_1 + psi_2.
Multivector superpose(const BeamState& b1, const BeamState& b2);

// R1 R2~ + R1~ R2, computed exactly by the algebra; the ground truth the
// printed interference formulas are tested against.  Throws VersorError.
Multivector cross_term(const Multivector& R1, const Multivector& R2);

// Scalar part of psi psi~ (the observable intensity); the pseudoscalar part
// is reported separately and is nonzero only for mixed-beta superpositions.
double intensity(const Multivector& psi);
double intensity_pseudoscalar(const Multivector& psi);

struct InterferencePattern {
  std::vector<double> phases;
  std::vector<double> intensity;             // rho1 + rho2 + cross_scalar
  std::vector<double> cross_scalar;          // sqrt(rho1 rho2) <cross term>_0
  std::vector<double> even_even_scalar;      // even/even block of the cross term
  std::vector<double> odd_odd_scalar;        // odd/odd block of the cross term
  std::vector<double> intensity_as_printed;  // often-quoted form (no factor 2)
};

// Cosine law for even rotors: R1 = 1, R2 = exp(-g2g1 phi), scanned over
// phi_grid.  The algebra gives cross = 2 cos(phi); the as-printed column
// keeps the often-quoted sqrt(rho1 rho2) cos(phi) for side-by-side comparison.
InterferencePattern pattern_even(double rho1, double rho2, const std::vector<double>& phi_grid);

// General versors at unit density; the phase scan is applied as a right
// factor on R2.  even/even and odd/odd contributions are separated so the
// two-term reduction can be compared against the exact cross term.
InterferencePattern pattern_mixed(const Multivector& R1, const Multivector& R2,
                                  const std::vector<double>& phi_grid);

// Pattern of two beams with the scan applied to b2.
InterferencePattern beam_pattern(const BeamState& b1, const BeamState& b2,
                                 const std::vector<double>& phi_grid);

struct RegionTransform {
  Multivector R;  // versor, possibly with both even and odd parts
  std::string label;
};

struct RegionResult {
  BeamState beam;
  int renormalizations = 0;  // versor-drift warnings
};

// Right-multiplies the beam rotor by each region transform in order.  If the
// composed versor drifts from R R~ = 1 by more than 1e-8 it is renormalized
// and the warning counter bumped.
RegionResult region_sequence(const BeamState& b, const std::vector<RegionTransform>& regions);

// Max-coefficient norm of Ra Rb - Rb Ra; zero iff both region orders give
// identical beams.
double commutator_norm(const Multivector& Ra, const Multivector& Rb);

// CSV with the columns the interfere/regions commands emit.
std::string pattern_to_csv(const InterferencePattern& p);

}  // namespace sta
