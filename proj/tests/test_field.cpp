#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "sta/canonical.hpp"
#include "sta/field.hpp"

using namespace sta;

namespace {

Grid4 line_grid(std::int64_t n, double extent, bool periodic = false) {
  Grid4 g;
  g.extents = {n, 3, 3, 3};
  g.spacing = {extent / static_cast<double>(n - 1), 1.0, 1.0, 1.0};
  g.periodic = periodic;
  return g;
}

Grid4 null_grid(std::int64_t n, double extent) {
  Grid4 g;
  g.extents = {n, 3, 3, n};
  const double h = extent / static_cast<double>(n - 1);
  g.spacing = {h, 1.0, 1.0, h};
  return g;
}

// Periodic torus covering [0,1) x [0,1) in (x0, x3) with different spacings
// on the two axes.  Periodic wrap keeps every stencil central (no one-sided
// boundary layers polluting second derivatives of the discretization error),
// and the anisotropy keeps the two directional errors from cancelling
// bit-exactly on functions of x0 + x3.
Grid4 null_torus(std::int64_t n) {
  Grid4 g;
  g.extents = {n, 3, 3, 2 * n};
  g.spacing = {1.0 / static_cast<double>(n), 1.0, 1.0, 0.5 / static_cast<double>(n)};
  g.periodic = true;
  return g;
}

const Multivector B12 = gamma(1) * gamma(2);

}  // namespace

TEST_CASE("derivative of a constant field vanishes everywhere") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField f = sample_field(g, [](double, double, double, double) {
    return Multivector::scalar(3.5) + gamma(0) * gamma(1) * 2.0;
  });
  const MultivectorField d = dirac_d(f);
  for (std::int64_t i = 0; i < d.size(); ++i) CHECK(max_coeff(d[i]) <= 1e-14);
}

TEST_CASE("derivative of x1 * scalar is -gamma_1 exactly (affine fields)") {
  Grid4 g;
  g.extents = {3, 5, 3, 3};
  g.spacing = {1.0, 0.25, 1.0, 1.0};
  const MultivectorField f = sample_field(
      g, [](double, double x1, double, double) { return Multivector::scalar(x1); });
  const MultivectorField d = dirac_d(f);
  // gamma^1 = -gamma_1 with the (+,-,-,-) signature.
  for (std::int64_t i = 0; i < d.size(); ++i)
    CHECK(max_coeff_diff(d[i], -gamma(1)) <= 1e-13);
}

TEST_CASE("derivative converges at second order on sin(k x0)") {
  const double k = 2.0 * std::numbers::pi;
  auto err_for = [&](std::int64_t n) {
    const Grid4 g = line_grid(n, 1.0);
    const MultivectorField f = sample_field(
        g, [&](double x0, double, double, double) { return Multivector::scalar(std::sin(k * x0)); });
    const MultivectorField d = dirac_d(f);
    const MultivectorField exact = sample_field(g, [&](double x0, double, double, double) {
      return gamma(0) * (k * std::cos(k * x0));
    });
    return max_interior_diff(d, exact);
  };
  const double e1 = err_for(17);
  const double e2 = err_for(33);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.9);
  CHECK(order <= 2.1);
}

TEST_CASE("derivative is linear") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField f = sample_field(g, [](double x0, double, double, double) {
    return Multivector::scalar(std::sin(3.0 * x0)) + gamma(1) * x0 * x0;
  });
  const MultivectorField h = sample_field(g, [](double x0, double, double, double) {
    return (gamma(2) * gamma(1)) * std::cos(2.0 * x0);
  });
  const double a = 2.5, b = -1.25;
  MultivectorField combo(g);
  for (std::int64_t i = 0; i < f.size(); ++i) combo[i] = f[i] * a + h[i] * b;
  const MultivectorField d_combo = dirac_d(combo);
  const MultivectorField df = dirac_d(f);
  const MultivectorField dh = dirac_d(h);
  for (std::int64_t i = 0; i < f.size(); ++i)
    CHECK(max_coeff_diff(d_combo[i], df[i] * a + dh[i] * b) <= 1e-12);
}

TEST_CASE("grids smaller than 3 points are rejected") {
  Grid4 g;
  g.extents = {2, 3, 3, 3};
  CHECK_THROWS_AS(MultivectorField{g}, GridError);
}

TEST_CASE("div/curl split: scalar and pseudoscalar fields") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField fs = sample_field(
      g, [](double x0, double, double, double) { return Multivector::scalar(x0 * x0); });
  const auto [div_s, curl_s] = div_curl_split(fs);
  const MultivectorField dfs = dirac_d(fs);
  for (std::int64_t i = 0; i < fs.size(); ++i) {
    CHECK(max_coeff(div_s[i]) <= 1e-13);                    // nothing to lower
    CHECK(max_coeff_diff(curl_s[i], dfs[i]) <= 1e-13);      // full gradient
  }

  const MultivectorField fp = sample_field(g, [](double x0, double, double, double) {
    return pseudoscalar_unit() * std::sin(x0);
  });
  const auto [div_p, curl_p] = div_curl_split(fp);
  for (std::int64_t i = 0; i < fp.size(); ++i) CHECK(max_coeff(curl_p[i]) <= 1e-13);
}

TEST_CASE("div/curl split of the vector field x1 gamma_1") {
  Grid4 g;
  g.extents = {3, 5, 3, 3};
  g.spacing = {1.0, 0.25, 1.0, 1.0};
  const MultivectorField f =
      sample_field(g, [](double, double x1, double, double) { return gamma(1) * x1; });
  const auto [div, curl] = div_curl_split(f);
  const MultivectorField d = dirac_d(f);
  // Hand stencil: d f = gamma^1 gamma_1 = -gamma_1 gamma_1 = +1, all scalar,
  // so the divergence carries the metric-contracted unit and the curl is 0.
  for (std::int64_t i = 0; i < f.size(); ++i) {
    CHECK(max_coeff_diff(div[i], Multivector::scalar(1.0)) <= 1e-13);
    CHECK(max_coeff(curl[i]) <= 1e-13);
    CHECK(max_coeff_diff(div[i] + curl[i], d[i]) <= 1e-13);
  }
}

TEST_CASE("div + curl reassembles the Dirac derivative on a general field") {
  const Grid4 g = null_grid(9, 1.0);
  const MultivectorField f = sample_field(g, [](double x0, double, double, double x3) {
    Multivector m = Multivector::scalar(std::sin(x0)) + gamma(2) * (x3 * x3) +
                    (gamma(0) * gamma(3)) * std::cos(x0 + x3) +
                    pseudoscalar_unit() * (0.5 * x0 * x3);
    return m;
  });
  const auto [div, curl] = div_curl_split(f);
  const MultivectorField d = dirac_d(f);
  for (std::int64_t i = 0; i < f.size(); ++i)
    CHECK(max_coeff_diff(div[i] + curl[i], d[i]) <= 1e-12);
}

TEST_CASE("covariant derivative: trivial and constant-connection cases") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField psi_const = sample_field(
      g, [](double, double, double, double) { return Multivector::scalar(1.0); });
  const MultivectorField zero(g);
  const MultivectorField omega_c = sample_field(g, [](double, double, double, double) {
    return (gamma(2) * gamma(1)) * 0.7 + Multivector::scalar(0.1);
  });

  const MultivectorField t1 = covariant_derivative(psi_const, zero);
  for (std::int64_t i = 0; i < t1.size(); ++i) CHECK(max_coeff(t1[i]) <= 1e-14);

  const MultivectorField t2 = covariant_derivative(psi_const, omega_c);
  for (std::int64_t i = 0; i < t2.size(); ++i)
    CHECK(max_coeff_diff(t2[i], -omega_c[i]) <= 1e-14);
}

TEST_CASE("pure-gauge connection makes the covariant derivative O(h^2)") {
  const double k = 1.5;
  auto residual = [&](std::int64_t n) {
    const Grid4 g = line_grid(n, 1.0);
    const MultivectorField psi = sample_field(g, [&](double x0, double, double, double) {
      return exp_even((gamma(2) * gamma(1)) * (k * x0));
    });
    // omega = psi^{-1} d psi evaluated analytically: gamma^0 (g2 g1) k is
    // constant here since psi commutes with its derivative factor.
    const MultivectorField omega = sample_field(g, [&](double, double, double, double) {
      return gamma(0) * (gamma(2) * gamma(1)) * k;
    });
    const MultivectorField Omega = covariant_derivative(psi, omega);
    MultivectorField zero(g);
    return max_interior_diff(Omega, zero);
  };
  const double r1 = residual(17);
  const double r2 = residual(33);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 <= 1e-2);
}

TEST_CASE("gauge transform: identity and constant rotor") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField psi = sample_field(g, [](double x0, double, double, double) {
    return exp_even(B12 * (0.8 * x0)) * (1.0 + 0.2 * x0);
  });
  const MultivectorField omega = sample_field(g, [](double x0, double, double, double) {
    return B12 * std::cos(x0);
  });

  const MultivectorField id_field = sample_field(
      g, [](double, double, double, double) { return Multivector::scalar(1.0); });
  const GaugeResult unchanged = gauge_transform(psi, omega, id_field);
  for (std::int64_t i = 0; i < psi.size(); ++i) {
    CHECK(max_coeff_diff(unchanged.psi[i], psi[i]) <= 1e-14);
    CHECK(max_coeff_diff(unchanged.omega[i], omega[i]) <= 1e-12);
  }

  // Constant rotor, omega = 0: omega' stays 0 and Omega' = Omega R exactly.
  const MultivectorField zero(g);
  const Multivector R0 = exp_even(B12 * 0.6);
  const MultivectorField Rf =
      sample_field(g, [&](double, double, double, double) { return R0; });
  const GaugeResult gt = gauge_transform(psi, zero, Rf);
  for (std::int64_t i = 0; i < psi.size(); ++i)
    CHECK(max_coeff(gt.omega[i]) <= 1e-12);
  const MultivectorField Omega = covariant_derivative(psi, zero);
  const MultivectorField Omega_p = covariant_derivative(gt.psi, gt.omega);
  for (std::int64_t i = 0; i < psi.size(); ++i)
    CHECK(max_coeff_diff(Omega_p[i], Omega[i] * R0) <= 1e-10);
}

TEST_CASE("gauge covariance of Omega converges at second order (x0 family)") {
  const double alpha = 0.9;
  auto residual = [&](std::int64_t n) {
    const Grid4 g = line_grid(n, 1.0);
    const MultivectorField psi = sample_field(g, [&](double x0, double, double, double) {
      return exp_even(B12 * (0.5 * std::sin(x0))) * (1.0 + 0.3 * x0);
    });
    const MultivectorField omega = sample_field(g, [&](double x0, double, double, double) {
      return B12 * (0.4 * std::cos(x0));
    });
    const MultivectorField R = sample_field(g, [&](double x0, double, double, double) {
      return exp_even(B12 * (alpha * x0));
    });
    const MultivectorField Omega = covariant_derivative(psi, omega);
    const GaugeResult gt = gauge_transform(psi, omega, R);
    const MultivectorField Omega_p = covariant_derivative(gt.psi, gt.omega);
    MultivectorField Omega_R(g);
    for (std::int64_t i = 0; i < psi.size(); ++i) Omega_R[i] = Omega[i] * R[i];
    return max_interior_diff(Omega_p, Omega_R);
  };
  const double r1 = residual(17);
  const double r2 = residual(33);
  CHECK(r1 / r2 >= 3.5);
}

TEST_CASE("gauge transform rejects non-rotor fields") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField psi(g), omega(g);
  const MultivectorField bad = sample_field(g, [](double, double, double, double) {
    return Multivector::scalar(1.0) + gamma(0) * gamma(1);
  });
  CHECK_THROWS_AS(gauge_transform(psi, omega, bad), VersorError);
}

TEST_CASE("curvature: zero, constant and pure-gauge connections") {
  const Grid4 g = line_grid(9, 1.0);
  const MultivectorField zero(g);
  const MultivectorField Fz = curvature(zero);
  for (std::int64_t i = 0; i < Fz.size(); ++i) CHECK(max_coeff(Fz[i]) <= 1e-14);

  // Constant omega = c: F = -c c pointwise.
  const Multivector c = B12 * 0.7 + gamma(0) * gamma(3) * 0.2;
  const MultivectorField omega_c =
      sample_field(g, [&](double, double, double, double) { return c; });
  const MultivectorField Fc = curvature(omega_c);
  for (std::int64_t i = 0; i < Fc.size(); ++i)
    CHECK(max_coeff_diff(Fc[i], -(c * c)) <= 1e-13);
}

TEST_CASE("pure-gauge flatness on the null-profile family") {
  const double w = 2.0 * std::numbers::pi;  // period 1 in xi = x0 + x3
  auto flatness = [&](std::int64_t n) {
    const Grid4 g = null_torus(n);
    const MultivectorField R = sample_field(g, [&](double x0, double, double, double x3) {
      return exp_even(B12 * (0.8 * std::sin(w * (x0 + x3))));
    });
    // omega = R~ dR: proportional to the null vector g0 - g3, so omega^2 = 0
    // and F vanishes in the continuum.
    const MultivectorField dR = dirac_d(R);
    MultivectorField omega(g);
    for (std::int64_t i = 0; i < R.size(); ++i) omega[i] = reverse(R[i]) * dR[i];
    const MultivectorField F = curvature(omega);
    MultivectorField zero(g);
    return max_interior_diff(F, zero);
  };
  const double f1 = flatness(32);
  const double f2 = flatness(64);
  CHECK(f1 / f2 >= 3.5);
  CHECK(f2 <= 0.1);
}

TEST_CASE("gauge covariance of Omega and F on the null family (three levels)") {
  const Multivector nvec = gamma(0) - gamma(3);
  const double w = 2.0 * std::numbers::pi;
  auto residuals = [&](std::int64_t n) {
    const Grid4 g = null_torus(n);
    const MultivectorField psi = sample_field(g, [&](double x0, double, double, double x3) {
      const double xi = x0 + x3;
      return exp_even(B12 * (0.7 * std::sin(w * xi))) + nvec * (0.3 * std::cos(w * xi));
    });
    const MultivectorField omega =
        sample_field(g, [&](double x0, double, double, double x3) {
          const double xi = x0 + x3;
          return nvec * (0.5 * std::sin(w * xi)) + nvec * B12 * (0.2 * std::cos(w * xi));
        });
    const MultivectorField R = sample_field(g, [&](double x0, double, double, double x3) {
      return exp_even(B12 * (0.6 * std::sin(w * (x0 + x3))));
    });
    const MultivectorField Omega = covariant_derivative(psi, omega);
    const MultivectorField F = curvature(omega);
    const GaugeResult gt = gauge_transform(psi, omega, R);
    const MultivectorField Omega_p = covariant_derivative(gt.psi, gt.omega);
    const MultivectorField F_p = curvature(gt.omega);
    MultivectorField Omega_R(g), F_conj(g);
    for (std::int64_t i = 0; i < psi.size(); ++i) {
      Omega_R[i] = Omega[i] * R[i];
      F_conj[i] = reverse(R[i]) * F[i] * R[i];
    }
    return std::pair<double, double>{max_interior_diff(Omega_p, Omega_R),
                                     max_interior_diff(F_p, F_conj)};
  };
  const auto [o1, f1] = residuals(16);
  const auto [o2, f2] = residuals(32);
  const auto [o3, f3] = residuals(64);
  CHECK(o1 / o2 >= 3.5);
  CHECK(o2 / o3 >= 3.5);
  CHECK(f1 / f2 >= 3.5);
  CHECK(f2 / f3 >= 3.5);
}

TEST_CASE("action: zero, unit and constant-connection values") {
  // Unit-volume grid: 5 points spaced 0.25 on one axis covers [0,1] with the
  // rectangle rule weighting each point by h = 0.25 ... total volume is
  // n0 h0 * ... so pick spacings that multiply to 1 / point_count.
  Grid4 g;
  g.extents = {5, 3, 3, 3};
  g.spacing = {1.0 / 5.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const MultivectorField zero(g);
  const ActionValue a0 = action(zero, zero);
  CHECK(a0.total == 0.0);
  CHECK(a0.norm == 0.0);

  const MultivectorField one = sample_field(
      g, [](double, double, double, double) { return Multivector::scalar(1.0); });
  const ActionValue a1 = action(one, zero);
  CHECK(a1.norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a1.total == doctest::Approx(0.0));

  // Constant omega = g2 g1 c with psi = 0: F = -c^2 (g2g1)^2 = c^2, so the
  // curvature term integrates to c^4 over unit volume.
  const double c = 0.7;
  const MultivectorField omega_c = sample_field(
      g, [&](double, double, double, double) { return (gamma(2) * gamma(1)) * c; });
  const ActionValue a2 = action(zero, omega_c);
  CHECK(a2.curvature_term == doctest::Approx(c * c * c * c).epsilon(1e-12));
  CHECK(a2.omega_term == 0.0);
  CHECK(a2.total == doctest::Approx(a2.omega_term + a2.curvature_term));
}

TEST_CASE("action is invariant under constant-rotor gauge transformations") {
  Grid4 g = line_grid(9, 1.0);
  const MultivectorField psi = sample_field(g, [](double x0, double, double, double) {
    return exp_even(B12 * (0.5 * x0)) * (1.0 + 0.1 * std::sin(x0));
  });
  const MultivectorField omega = sample_field(g, [](double x0, double, double, double) {
    return B12 * (0.3 * std::cos(x0));
  });
  const Multivector R0 = exp_even((gamma(3) * gamma(1)) * 0.7);
  const MultivectorField Rf =
      sample_field(g, [&](double, double, double, double) { return R0; });
  const GaugeResult gt = gauge_transform(psi, omega, Rf);
  const ActionValue before = action(psi, omega);
  const ActionValue after = action(gt.psi, gt.omega);
  CHECK(std::abs(before.omega_term - after.omega_term) <= 1e-10 * (1.0 + std::abs(before.omega_term)));
  CHECK(std::abs(before.curvature_term - after.curvature_term) <=
        1e-10 * (1.0 + std::abs(before.curvature_term)));
  CHECK(std::abs(before.norm - after.norm) <= 1e-10);
}

TEST_CASE("normalize rescales to unit norm and rejects null fields") {
  Grid4 g;
  g.extents = {5, 3, 3, 3};
  g.spacing = {1.0 / 5.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const MultivectorField two = sample_field(
      g, [](double, double, double, double) { return Multivector::scalar(2.0); });
  const MultivectorField n1 = normalize(two);
  for (std::int64_t i = 0; i < n1.size(); ++i)
    CHECK(max_coeff_diff(n1[i], Multivector::scalar(1.0)) <= 1e-12);
  const ActionValue a = action(n1, MultivectorField(g));
  CHECK(a.norm == doctest::Approx(1.0).epsilon(1e-12));

  // Already normalized: unchanged.
  const MultivectorField n2 = normalize(n1);
  for (std::int64_t i = 0; i < n2.size(); ++i)
    CHECK(max_coeff_diff(n2[i], n1[i]) <= 1e-12);

  // Gaussian-enveloped rotor field normalizes too.
  const MultivectorField wave = sample_field(g, [](double x0, double, double, double) {
    return exp_even(B12 * (2.0 * x0)) * std::exp(-4.0 * (x0 - 0.5) * (x0 - 0.5));
  });
  const ActionValue aw = action(normalize(wave), MultivectorField(g));
  CHECK(aw.norm == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(normalize(MultivectorField(g)), NormError);
}

TEST_CASE("grid mismatch is rejected") {
  const Grid4 g1 = line_grid(9, 1.0);
  const Grid4 g2 = line_grid(11, 1.0);
  CHECK_THROWS_AS(covariant_derivative(MultivectorField(g1), MultivectorField(g2)),
                  GridError);
  CHECK_THROWS_AS(action(MultivectorField(g1), MultivectorField(g2)), GridError);
}

TEST_CASE("field binary roundtrip preserves grid and values bit-exactly") {
  Grid4 g;
  g.extents = {4, 3, 3, 5};
  g.spacing = {0.5, 1.0, 1.0, 0.125};
  g.origin = {-1.0, 0.0, 0.0, 2.0};
  const MultivectorField f = sample_field(g, [](double x0, double, double, double x3) {
    Multivector m = Multivector::scalar(x0 + 0.3) + gamma(2) * x3;
    m[7] = x0 * x3;
    return m;
  });
  const std::string path =
      (std::filesystem::temp_directory_path() / "sta_field_roundtrip.field").string();
  write_field(path, f);
  const MultivectorField back = read_field(path);
  REQUIRE(back.grid() == f.grid());
  for (std::int64_t i = 0; i < f.size(); ++i) CHECK(max_coeff_diff(back[i], f[i]) == 0.0);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}

TEST_CASE("periodic grids differentiate smooth periodic data cleanly") {
  const double k = 2.0 * std::numbers::pi;
  auto err_for = [&](std::int64_t n) {
    Grid4 g;
    g.extents = {n, 3, 3, 3};
    g.spacing = {1.0 / static_cast<double>(n), 1.0, 1.0, 1.0};
    g.periodic = true;
    const MultivectorField f = sample_field(g, [&](double x0, double, double, double) {
      return Multivector::scalar(std::cos(k * x0));
    });
    const MultivectorField d = dirac_d(f);
    const MultivectorField exact = sample_field(g, [&](double x0, double, double, double) {
      return gamma(0) * (-k * std::sin(k * x0));
    });
    return max_interior_diff(d, exact);
  };
  const double e1 = err_for(16);
  const double e2 = err_for(32);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e1 / e2) <= 2.1);
}
