#include "sta/field.hpp"

#include <cmath>

#include "sta/canonical.hpp"

namespace sta {

namespace {

void require_grid_ok(const Grid4& g) {
  for (int mu = 0; mu < 4; ++mu) {
    if (g.extents[static_cast<std::size_t>(mu)] < 3)
      throw GridError("grid needs at least 3 points per axis");
    if (!(g.spacing[static_cast<std::size_t>(mu)] > 0.0))
      throw GridError("grid spacing must be positive");
  }
}

void require_same_grid(const MultivectorField& a, const MultivectorField& b) {
  if (!(a.grid() == b.grid())) throw GridError("fields live on different grids");
}

}  // namespace

MultivectorField::MultivectorField(const Grid4& grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.point_count())) {
  require_grid_ok(grid);
}

MultivectorField::MultivectorField(const Grid4& grid, std::vector<Multivector> values)
    : grid_(grid), values_(std::move(values)) {
  require_grid_ok(grid);
  if (static_cast<std::int64_t>(values_.size()) != grid.point_count())
    throw GridError("value array does not match grid point count");
}

MultivectorField partial_derivative(const MultivectorField& f, int mu) {
  const Grid4& g = f.grid();
  require_grid_ok(g);
  const std::int64_t n = g.extents[static_cast<std::size_t>(mu)];
  const double inv2h = 1.0 / (2.0 * g.spacing[static_cast<std::size_t>(mu)]);

  // Stride of one step along axis mu in the flattened layout.
  std::int64_t stride = 1;
  for (int a = 3; a > mu; --a) stride *= g.extents[static_cast<std::size_t>(a)];

  MultivectorField out(g);
  const std::int64_t total = g.point_count();
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::int64_t i = (idx / stride) % n;  // index along axis mu
    if (g.periodic) {
      const std::int64_t up = (i + 1 < n) ? idx + stride : idx - (n - 1) * stride;
      const std::int64_t dn = (i > 0) ? idx - stride : idx + (n - 1) * stride;
      out[idx] = (f[up] - f[dn]) * inv2h;
    } else if (i == 0) {
      out[idx] =
          (f[idx] * -3.0 + f[idx + stride] * 4.0 - f[idx + 2 * stride]) * inv2h;
    } else if (i == n - 1) {
      out[idx] =
          (f[idx] * 3.0 - f[idx - stride] * 4.0 + f[idx - 2 * stride]) * inv2h;
    } else {
      out[idx] = (f[idx + stride] - f[idx - stride]) * inv2h;
    }
  }
  return out;
}

MultivectorField dirac_d(const MultivectorField& f) {
  MultivectorField out(f.grid());
  for (int mu = 0; mu < 4; ++mu) {
    const Multivector gu = gamma(mu) * static_cast<double>(metric(mu));
    const MultivectorField d = partial_derivative(f, mu);
    for (std::int64_t i = 0; i < f.size(); ++i) out[i] += gu * d[i];
  }
  return out;
}

std::pair<MultivectorField, MultivectorField> div_curl_split(const MultivectorField& f) {
  MultivectorField div(f.grid()), curl(f.grid());
  for (int mu = 0; mu < 4; ++mu) {
    const Multivector gu = gamma(mu) * static_cast<double>(metric(mu));
    const MultivectorField d = partial_derivative(f, mu);
    for (std::int64_t i = 0; i < f.size(); ++i) {
      div[i] += inner_product(gu, d[i]);
      curl[i] += outer_product(gu, d[i]);
    }
  }
  return {std::move(div), std::move(curl)};
}

MultivectorField covariant_derivative(const MultivectorField& psi,
                                      const MultivectorField& omega) {
  require_same_grid(psi, omega);
  MultivectorField out = dirac_d(psi);
  for (std::int64_t i = 0; i < psi.size(); ++i) out[i] -= psi[i] * omega[i];
  return out;
}

GaugeResult gauge_transform(const MultivectorField& psi, const MultivectorField& omega,
                            const MultivectorField& R) {
  require_same_grid(psi, omega);
  require_same_grid(psi, R);
  for (std::int64_t i = 0; i < R.size(); ++i)
    if (!validate_rotor(R[i]))
      throw VersorError("gauge_transform: R is not a rotor at some grid point");

  const MultivectorField dR = dirac_d(R);
  MultivectorField psi_p(psi.grid()), omega_p(psi.grid());
  for (std::int64_t i = 0; i < psi.size(); ++i) {
    const Multivector rt = reverse(R[i]);
    psi_p[i] = psi[i] * R[i];
    omega_p[i] = rt * omega[i] * R[i] + rt * dR[i];
  }
  return GaugeResult{std::move(psi_p), std::move(omega_p)};
}

MultivectorField curvature(const MultivectorField& omega) {
  MultivectorField out = dirac_d(omega);
  for (std::int64_t i = 0; i < omega.size(); ++i) out[i] -= omega[i] * omega[i];
  return out;
}

ActionValue action(const MultivectorField& psi, const MultivectorField& omega) {
  require_same_grid(psi, omega);
  const MultivectorField Omega = covariant_derivative(psi, omega);
  const MultivectorField F = curvature(omega);
  const double dv = psi.grid().cell_volume();

  ActionValue a;
  for (std::int64_t i = 0; i < psi.size(); ++i) {
    const Multivector oo = Omega[i] * reverse(Omega[i]);
    const Multivector ff = F[i] * reverse(F[i]);
    const Multivector pp = psi[i] * reverse(psi[i]);
    a.omega_term += oo.scalar_part() * dv;
    a.omega_term_pseudo += oo.pseudoscalar_part() * dv;
    a.curvature_term += ff.scalar_part() * dv;
    a.curvature_term_pseudo += ff.pseudoscalar_part() * dv;
    a.norm += pp.scalar_part() * dv;
  }
  a.total = a.omega_term + a.curvature_term;
  return a;
}

MultivectorField normalize(const MultivectorField& psi) {
  const double dv = psi.grid().cell_volume();
  double norm = 0.0;
  for (std::int64_t i = 0; i < psi.size(); ++i)
    norm += (psi[i] * reverse(psi[i])).scalar_part() * dv;
  if (!(norm > 0.0)) throw NormError("normalize: nonpositive norm");
  const double s = 1.0 / std::sqrt(norm);
  MultivectorField out(psi.grid());
  for (std::int64_t i = 0; i < psi.size(); ++i) out[i] = psi[i] * s;
  return out;
}

double max_interior_diff(const MultivectorField& a, const MultivectorField& b) {
  require_same_grid(a, b);
  const Grid4& g = a.grid();
  double m = 0.0;
  for (std::int64_t i0 = 0; i0 < g.extents[0]; ++i0)
    for (std::int64_t i1 = 0; i1 < g.extents[1]; ++i1)
      for (std::int64_t i2 = 0; i2 < g.extents[2]; ++i2)
        for (std::int64_t i3 = 0; i3 < g.extents[3]; ++i3) {
          if (!g.periodic) {
            const std::int64_t idx[4] = {i0, i1, i2, i3};
            bool interior = true;
            for (int mu = 0; mu < 4; ++mu)
              if (idx[mu] == 0 || idx[mu] == g.extents[static_cast<std::size_t>(mu)] - 1) {
                // Axes with only 3 points carry constant directions; their
                // boundary layers are the whole axis, so keep them.
                if (g.extents[static_cast<std::size_t>(mu)] > 3) interior = false;
              }
            if (!interior) continue;
          }
          const std::int64_t i = a.flat_index(i0, i1, i2, i3);
          const double d = max_coeff_diff(a[i], b[i]);
          if (d > m) m = d;
        }
  return m;
}

}  // namespace sta
