#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sta/multivector.hpp"

// Discrete calculus for multivector fields on a uniform 4-grid: the Dirac
// derivative d = gamma^mu d_mu, its divergence/curl split, the structure
// equations Omega = d psi - psi omega and F = d omega - omega omega, gauge
// transformation, and the action functional.
//
// Fields are immutable after construction; every operation is a pure map
// over grid points, deterministic regardless of evaluation order.

namespace sta {

struct Grid4 {
  std::array<std::int64_t, 4> extents{3, 3, 3, 3};  // points per axis, >= 3
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
  bool periodic = false;

  std::int64_t point_count() const {
    return extents[0] * extents[1] * extents[2] * extents[3];
  }
  double coord(int axis, std::int64_t index) const {
    return origin[static_cast<std::size_t>(axis)] +
           spacing[static_cast<std::size_t>(axis)] * static_cast<double>(index);
  }
  double cell_volume() const {
    return spacing[0] * spacing[1] * spacing[2] * spacing[3];
  }
  bool operator==(const Grid4&) const = default;
};

class MultivectorField {
 public:
  explicit MultivectorField(const Grid4& grid);
  MultivectorField(const Grid4& grid, std::vector<Multivector> values);

  const Grid4& grid() const { return grid_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  std::int64_t flat_index(std::int64_t i0, std::int64_t i1, std::int64_t i2,
                          std::int64_t i3) const {
    return ((i0 * grid_.extents[1] + i1) * grid_.extents[2] + i2) * grid_.extents[3] + i3;
  }

  const Multivector& at(std::int64_t i0, std::int64_t i1, std::int64_t i2,
                        std::int64_t i3) const {
    return values_[static_cast<std::size_t>(flat_index(i0, i1, i2, i3))];
  }
  Multivector& at(std::int64_t i0, std::int64_t i1, std::int64_t i2, std::int64_t i3) {
    return values_[static_cast<std::size_t>(flat_index(i0, i1, i2, i3))];
  }

  const Multivector& operator[](std::int64_t i) const {
    return values_[static_cast<std::size_t>(i)];
  }
  Multivector& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

  const std::vector<Multivector>& values() const { return values_; }

 private:
  Grid4 grid_;
  std::vector<Multivector> values_;
};

// Fill a field from a callable (x0, x1, x2, x3) -> Multivector.
template <typename F>
MultivectorField sample_field(const Grid4& g, F&& f) {
  MultivectorField out(g);
  std::int64_t n = 0;
  for (std::int64_t i0 = 0; i0 < g.extents[0]; ++i0)
    for (std::int64_t i1 = 0; i1 < g.extents[1]; ++i1)
      for (std::int64_t i2 = 0; i2 < g.extents[2]; ++i2)
        for (std::int64_t i3 = 0; i3 < g.extents[3]; ++i3)
          out[n++] = f(g.coord(0, i0), g.coord(1, i1), g.coord(2, i2), g.coord(3, i3));
  return out;
}

// d_mu f by central differences; second-order one-sided at the boundary, or
// wrap-around when the grid is periodic.
MultivectorField partial_derivative(const MultivectorField& f, int mu);

// d f = sum_mu gamma^mu d_mu f, with gamma^mu = metric(mu) gamma_mu.
MultivectorField dirac_d(const MultivectorField& f);

// (div, curl): grade-lowering and grade-raising parts of each gamma^mu d_mu
// term.  div + curl = dirac_d exactly.
std::pair<MultivectorField, MultivectorField> div_curl_split(const MultivectorField& f);

// Omega = d psi - psi omega (connection acts by right multiplication).
MultivectorField covariant_derivative(const MultivectorField& psi,
                                      const MultivectorField& omega);

struct GaugeResult {
  MultivectorField psi;    // psi' = psi R
  MultivectorField omega;  // omega' = R~ omega R + R~ dR
};

// Transforms (psi, omega) by a rotor field.  The connection law is the
// convention that makes Omega' = Omega R hold for commuting field families;
// every grid point of R must satisfy validate_rotor.
GaugeResult gauge_transform(const MultivectorField& psi, const MultivectorField& omega,
                            const MultivectorField& R);

// F = d omega - omega omega.
MultivectorField curvature(const MultivectorField& omega);

struct ActionValue {
  double total = 0.0;  // omega_term + curvature_term
  double omega_term = 0.0;
  double curvature_term = 0.0;
  double norm = 0.0;  // integral of <psi psi~>_0
  // Pseudoscalar components of the two invariants, reported for diagnostics
  // but not added to the action.
  double omega_term_pseudo = 0.0;
  double curvature_term_pseudo = 0.0;
};

ActionValue action(const MultivectorField& psi, const MultivectorField& omega);

// Rescale so the integral of <psi psi~>_0 is 1.  Throws NormError when the
// norm is not positive.
MultivectorField normalize(const MultivectorField& psi);

// Max coefficient difference over interior points (all points when the grid
// is periodic).  The covariance and convergence studies measure this.
double max_interior_diff(const MultivectorField& a, const MultivectorField& b);

// Flat binary layout: header = extents (4 x u64), spacing and origin
// (4 + 4 x f64), little-endian; body = 16 f64 per point in blade order.
// A JSON sidecar at path + ".json" describes the layout.
void write_field(const std::string& path, const MultivectorField& f);
MultivectorField read_field(const std::string& path);

}  // namespace sta
