#pragma once

#include <array>
#include <utility>
#include <vector>

#include "sta/field.hpp"
#include "sta/multivector.hpp"

// Solutions of the geometric Dirac equation: plane monochromatic waves with a
// residual check on the grid, and the Coulomb problem as a radial eigenvalue
// system solved by two-sided shooting.  Units: hbar = c = 1, energies are
// reported against the mass mu.

namespace sta {

// psi(x) = sqrt(rho) u exp(g2g1 (p.x + phase)), p.x = p[0] x0 - p.x.
struct PlaneWaveParams {
  double rho = 1.0;
  Multivector u = Multivector::scalar(1.0);  // even, u u~ = 1
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};  // (E, p1, p2, p3), E > 0
  double phase = 0.0;
};

MultivectorField plane_wave(const PlaneWaveParams& params, const Grid4& grid);

// Max coefficient of p u - mu u gamma_0 with p = sum_mu p[mu] gamma_mu;
// zero exactly on solutions (rest frame and boosts of it).
double plane_wave_constraint_residual(const PlaneWaveParams& params, double mu);

// Max norm over interior points of  d psi . g1g2 - mu psi gamma_0 - V psi,
// the real-form transcription of the Dirac equation consistent with the
// plane-wave phase convention above.  V = potential_scale * (-zalpha/r) gamma_0
// acting from the left (Coulomb); pass potential_scale = 0 for a free wave.
double dirac_residual(const MultivectorField& psi, double mu,
                      double potential_scale = 0.0, double zalpha = 0.0);

struct CoulombParams {
  int Z = 1;
  double alpha = 7.2973525693e-3;  // fine-structure constant
  double mu = 1.0;                 // electron mass, sets the energy scale

  double zalpha() const { return static_cast<double>(Z) * alpha; }
};

enum class SpectrumVariant { printed, corrected };

// Closed-form spectrum E/mu for orbital number l = |kappa| and radial number
// n_r.  `printed` keeps a commonly mis-quoted variant with n_r^2 added to the
// root instead of n_r before squaring; `corrected` is the Sommerfeld form
// with (sqrt(l^2-(Za)^2) + n_r)^2.  The shooting solver arbitrates which one
// matches the radial system.
double sommerfeld_energy(int n_r, int l, double zalpha, SpectrumVariant variant);

// Radial system for the large/small components (G, F):
//   dG/dr = -(kappa/r) G + (E + mu - U) F
//   dF/dr =  (kappa/r) F - (E - mu - U) G,     U = -Z alpha / r.
std::pair<double, double> radial_rhs(double r, double G, double F, double E, int kappa,
                                     const CoulombParams& params);

struct RadialSolution {
  double energy = 0.0;  // in the same units as params.mu, 0 < E < mu
  int kappa = -1;
  int n_r = 0;
  std::vector<double> r;  // log-spaced radial points
  std::vector<double> G;
  std::vector<double> F;
};

struct ShootingOptions {
  double r_min = 1e-6;  // in units of 1/(mu Z alpha)
  double r_max = 80.0;  // far enough that tail truncation stays below 1e-10
  int points = 6000;    // log-grid points
};

// Two-sided shooting: r^gamma series start outward, exponential-decay start
// inward, bisection on the Wronskian mismatch at the matching point until
// |dE|/mu < 1e-10.  The returned G has exactly n_r nodes for kappa < 0;
// for kappa > 0 the extra radial excitation sits in F and G has n_r - 1.
// Throws DomainError (bad bracket / supercritical), BracketError (no sign
// change) or NodeCountError.
RadialSolution shoot_eigenvalue(const CoulombParams& params, int kappa, int n_r,
                                std::pair<double, double> E_bracket,
                                const ShootingOptions& opts = {});

// Bracket between the midpoints to the adjacent corrected-variant levels.
std::pair<double, double> default_bracket(const CoulombParams& params, int kappa, int n_r);

}  // namespace sta
