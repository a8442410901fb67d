#include "sta/check_suite.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sta/canonical.hpp"
#include "sta/multivector.hpp"
#include "sta/rng.hpp"

namespace sta {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

Multivector random_mv(SplitMix64& rng) {
  Multivector m;
  for (std::size_t i = 0; i < kBladeCount; ++i) m[i] = rng.uniform(-1.0, 1.0);
  return m;
}

Multivector random_even(SplitMix64& rng) {
  Multivector m;
  for (std::size_t i = 0; i < kBladeCount; ++i)
    if (!(blade_grade(static_cast<unsigned>(i)) & 1)) m[i] = rng.uniform(-1.0, 1.0);
  return m;
}

Multivector random_grade(SplitMix64& rng, int k) {
  Multivector m;
  for (std::size_t i = 0; i < kBladeCount; ++i)
    if (blade_grade(static_cast<unsigned>(i)) == k) m[i] = rng.uniform(-1.0, 1.0);
  return m;
}

CheckResult check_anticommutation(const CheckOptions& opts) {
  CayleyTable table = kCayley;
  if (opts.corrupt_cayley) table[1][2].sign = static_cast<std::int8_t>(-table[1][2].sign);
  for (int mu = 0; mu < kDim; ++mu) {
    for (int nu = 0; nu < kDim; ++nu) {
      const Multivector a = gamma(mu), b = gamma(nu);
      const Multivector anti =
          detail::multiply_with_table(a, b, table) + detail::multiply_with_table(b, a, table);
      const Multivector expect =
          (mu == nu) ? Multivector::scalar(2.0 * metric(mu)) : Multivector{};
      const double err = max_coeff_diff(anti, expect);
      if (err > 1e-15) {
        return {"anticommutation", false,
                "g" + std::to_string(mu) + " g" + std::to_string(nu) +
                    " counterexample: g_mu g_nu + g_nu g_mu = " + to_string(anti)};
      }
    }
  }
  return {"anticommutation", true, "exhaustive over 16 generator pairs"};
}

CheckResult check_associativity(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xA55Au);
  double worst = 0.0;
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector a = random_mv(rng), b = random_mv(rng), c = random_mv(rng);
    const Multivector lhs = (a * b) * c;
    const Multivector rhs = a * (b * c);
    const double scale = std::max({max_coeff(lhs), max_coeff(rhs), 1.0});
    const double err = max_coeff_diff(lhs, rhs) / scale;
    if (err > 1e-12)
      return {"associativity", false,
              "relative error " + fmt("%.3e", err) + " at trial " + std::to_string(t)};
    worst = std::max(worst, err);
  }
  return {"associativity", true,
          std::to_string(opts.trials) + " random triples, max rel err " + fmt("%.2e", worst)};
}

CheckResult check_reversion(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x9E37u);
  double worst = 0.0;
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector a = random_mv(rng), b = random_mv(rng);
    const double err = max_coeff_diff(reverse(a * b), reverse(b) * reverse(a));
    if (err > 1e-12)
      return {"reversion-antiautomorphism", false, "error " + fmt("%.3e", err)};
    worst = std::max(worst, err);
  }
  return {"reversion-antiautomorphism", true,
          std::to_string(opts.trials) + " pairs, max err " + fmt("%.2e", worst)};
}

CheckResult check_involution(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x1234u);
  double worst = 0.0;
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector a = random_mv(rng), b = random_mv(rng);
    const double err =
        max_coeff_diff(grade_involution(a * b), grade_involution(a) * grade_involution(b));
    if (err > 1e-12)
      return {"grade-involution-automorphism", false, "error " + fmt("%.3e", err)};
    worst = std::max(worst, err);
  }
  return {"grade-involution-automorphism", true,
          std::to_string(opts.trials) + " pairs, max err " + fmt("%.2e", worst)};
}

CheckResult check_grading(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xBEEFu);
  // grade_project(a_r b_s, k) = 0 unless |r-s| <= k <= r+s and k = r+s (mod 2)
  for (int t = 0; t < opts.trials / 10 + 1; ++t) {
    for (int r = 0; r <= 4; ++r) {
      for (int s = 0; s <= 4; ++s) {
        const Multivector prod = random_grade(rng, r) * random_grade(rng, s);
        for (int k = 0; k <= 4; ++k) {
          const bool allowed =
              k >= std::abs(r - s) && k <= r + s && ((k ^ (r + s)) & 1) == 0;
          if (!allowed && max_coeff(grade_project(prod, k)) > 1e-14)
            return {"grade-grading", false,
                    "grade " + std::to_string(k) + " leak from grades (" +
                        std::to_string(r) + "," + std::to_string(s) + ")"};
        }
      }
    }
  }
  return {"grade-grading", true, "selection rule holds over random graded products"};
}

CheckResult check_parity(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xFACEu);
  for (int t = 0; t < opts.trials / 5 + 1; ++t) {
    const auto [ae, ao] = parity_split(random_mv(rng));
    const auto [be, bo] = parity_split(random_mv(rng));
    if (!is_even(ae * be, 1e-14) || !is_even(ao * bo, 1e-14))
      return {"parity-grading", false, "even product left the even subalgebra"};
    const auto [mix_even, mix_odd] = parity_split(ae * bo);
    if (max_coeff(mix_even) > 1e-14)
      return {"parity-grading", false, "even*odd has an even part"};
  }
  return {"parity-grading", true, "even/odd products land in the right parity"};
}

CheckResult check_vector_split(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x5EEDu);
  double worst = 0.0;
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector v = random_grade(rng, 1);
    const Multivector m = random_mv(rng);
    const Multivector sum = inner_product(v, m) + outer_product(v, m);
    const double err = max_coeff_diff(sum, v * m);
    if (err > 1e-13)
      return {"inner-outer-vector-split", false, "split misses " + fmt("%.3e", err)};
    worst = std::max(worst, err);
  }
  return {"inner-outer-vector-split", true,
          "inner + outer = product for grade-1 factors, max err " + fmt("%.2e", worst)};
}

CheckResult check_exp_rotor(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xE4B0u);
  double worst = 0.0;
  for (int t = 0; t < opts.trials / 5 + 1; ++t) {
    const Multivector B = random_grade(rng, 2);
    const Multivector R = exp_even(B);
    const double err = max_coeff_diff(R * reverse(R), Multivector::scalar(1.0));
    if (err > 1e-12)
      return {"exp-rotor-normalization", false,
              "R R~ - 1 = " + fmt("%.3e", err) + " for B = " + to_string(B)};
    worst = std::max(worst, err);
  }
  return {"exp-rotor-normalization", true, "bivector exponentials stay rotors, max err " +
                                               fmt("%.2e", worst)};
}

CheckResult check_canonical_roundtrip(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xCA40u);
  double worst = 0.0;
  int used = 0;
  for (int t = 0; used < opts.trials && t < opts.trials * 4; ++t) {
    const Multivector psi = random_even(rng);
    const Multivector q = psi * reverse(psi);
    if (std::hypot(q.scalar_part(), q.pseudoscalar_part()) <= 1e-6) continue;
    ++used;
    const CanonicalForm cf = to_canonical(psi);
    const Multivector back = from_canonical(cf);
    const double err =
        std::min(max_coeff_diff(back, psi), max_coeff_diff(back * -1.0, psi));
    if (err > 1e-10)
      return {"canonical-roundtrip", false,
              "reconstruction error " + fmt("%.3e", err) + " for psi = " + to_string(psi)};
    worst = std::max(worst, err);
  }
  return {"canonical-roundtrip", true,
          std::to_string(used) + " states, max err " + fmt("%.2e", worst)};
}

CheckResult check_canonical_density(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xD05Eu);
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector psi = random_even(rng);
    const Multivector q = psi * reverse(psi);
    const double s = q.scalar_part(), p = q.pseudoscalar_part();
    if (std::hypot(s, p) <= 1e-6) continue;
    const CanonicalForm cf = to_canonical(psi);
    if (std::abs(cf.rho - std::hypot(s, p)) > 1e-10 * (1.0 + cf.rho) ||
        std::abs(std::remainder(cf.beta - std::atan2(p, s), 2 * std::numbers::pi)) > 1e-12)
      return {"canonical-rho-beta", false, "rho/beta disagree with psi psi~"};
  }
  return {"canonical-rho-beta", true, "rho, beta match the independent psi psi~ polar form"};
}

CheckResult check_biquaternion(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0xB1B1u);
  double worst = 0.0;
  for (int t = 0; t < opts.trials; ++t) {
    const Multivector a = random_even(rng), b = random_even(rng);
    // Route 1: geometric product, then view.  Route 2: biquaternion product.
    const Biquaternion via_algebra = biquaternion_view(a * b);
    const Biquaternion via_biq = biquaternion_view(a) * biquaternion_view(b);
    const double err =
        max_coeff_diff(from_biquaternion(via_algebra), from_biquaternion(via_biq));
    if (err > 1e-12)
      return {"biquaternion-homomorphism", false, "product mismatch " + fmt("%.3e", err)};
    worst = std::max(worst, err);
    if (max_coeff_diff(from_biquaternion(biquaternion_view(a)), a) > 1e-15)
      return {"biquaternion-homomorphism", false, "view is not a bijection"};
  }
  return {"biquaternion-homomorphism", true,
          std::to_string(opts.trials) + " pairs, max err " + fmt("%.2e", worst)};
}

CheckResult check_ideal(const CheckOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x1DEAu);
  const Multivector u = primitive_idempotent();
  // Idempotency of the projection over all basis blades.
  for (unsigned m = 0; m < kBladeCount; ++m) {
    const Multivector once = ideal_project(Multivector::blade(m)).value;
    const Multivector twice = ideal_project(once).value;
    if (max_coeff_diff(once, twice) > 1e-14)
      return {"ideal-projection", false, "projector not idempotent on " + blade_name(m)};
    if (max_coeff_diff(once * u, once) > 1e-14)
      return {"ideal-projection", false,
              "image not right-stabilized by (1+g0)/2 on " + blade_name(m)};
  }
  // Rank of the blade images must be exactly 4 (Gram-Schmidt over 16 vectors).
  std::vector<Multivector> basis;
  for (unsigned m = 0; m < kBladeCount; ++m) {
    Multivector v = ideal_project(Multivector::blade(m)).value;
    for (const Multivector& e : basis) {
      double dot = 0.0, ee = 0.0;
      for (std::size_t i = 0; i < kBladeCount; ++i) {
        dot += v[i] * e[i];
        ee += e[i] * e[i];
      }
      v -= e * (dot / ee);
    }
    if (max_coeff(v) > 1e-10) basis.push_back(v);
  }
  if (basis.size() != 4)
    return {"ideal-projection", false,
            "image spans " + std::to_string(basis.size()) + " dimensions, expected 4"};
  // Left multiples stay inside the minimal ideal (right-stabilization).
  for (int t = 0; t < opts.trials / 10 + 1; ++t) {
    const Multivector a = random_mv(rng);
    const Multivector w = a * ideal_project(random_mv(rng)).value;
    if (max_coeff_diff(w * u, w) > 1e-12 * (1.0 + max_coeff(w)))
      return {"ideal-projection", false, "left multiple left the ideal"};
  }
  return {"ideal-projection", true,
          "idempotent, 4-dimensional image, left multiples stay in the ideal"};
}

}  // namespace

std::vector<CheckResult> run_algebra_checks(const CheckOptions& opts) {
  std::vector<CheckResult> results;
  results.push_back(check_anticommutation(opts));
  results.push_back(check_associativity(opts));
  results.push_back(check_reversion(opts));
  results.push_back(check_involution(opts));
  results.push_back(check_grading(opts));
  results.push_back(check_parity(opts));
  results.push_back(check_vector_split(opts));
  results.push_back(check_exp_rotor(opts));
  results.push_back(check_canonical_roundtrip(opts));
  results.push_back(check_canonical_density(opts));
  results.push_back(check_biquaternion(opts));
  results.push_back(check_ideal(opts));
  return results;
}

}  // namespace sta
