#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "spectrum_split/analytic.hpp"

using namespace spectrum_split;

namespace {

NetworkParams il_params(double alpha, double util) {
  return NetworkParams::from_utilization(alpha, 10.0, util, std::nullopt);
}

// Reference values below were computed independently at 50-digit precision
// and frozen here.
constexpr double kBStar3 = 1.2612292025663261;
constexpr double kBStar4 = 2.2991138170001097;
constexpr double kBeta9 = 3.7568284600108843;      // 2^2.25 - 1
constexpr double kLambdaOne25 = 0.00073178144853583334;

}  // namespace

TEST_CASE("network parameter validation") {
  NetworkParams p;
  p.validate();
  CHECK(p.utilization() == 1.0);
  CHECK(p.interference_limited());
  CHECK_THROWS_AS(p.snr(), std::logic_error);

  p.alpha = 2.0;
  CHECK_THROWS_WITH_AS(p.validate(), "alpha must exceed 2", std::invalid_argument);
  p.alpha = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.alpha = 4.0;

  p.d = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.d = 10.0;
  p.rho = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.rho = 1.0;
  p.n0 = -1e-9;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.n0 = 0.0;
  p.w = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.w = 1.0;
  p.r = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("from_utilization wires the noise floor to the requested snr") {
  const NetworkParams p = NetworkParams::from_utilization(4.0, 10.0, 0.25, 100.0);
  CHECK(!p.interference_limited());
  CHECK(p.snr() == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(p.utilization() == 0.25);

  const NetworkParams q = NetworkParams::from_utilization(4.0, 10.0, 0.25, std::nullopt);
  CHECK(q.interference_limited());
  CHECK_THROWS_AS(NetworkParams::from_utilization(4.0, 10.0, 0.0, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(NetworkParams::from_utilization(4.0, 10.0, 0.25, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      NetworkParams::from_utilization(4.0, 10.0, 0.25,
                                      std::numeric_limits<double>::infinity()),
      std::invalid_argument);
}

TEST_CASE("sinr threshold values and failure modes") {
  const NetworkParams p = il_params(4.0, 0.25);
  const BandPlan plan = sinr_threshold(p, 9);
  CHECK(plan.n == 9);
  CHECK(plan.b == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(plan.beta == doctest::Approx(kBeta9).epsilon(1e-14));
  CHECK(sinr_threshold(p, 1).beta ==
        doctest::Approx(0.18920711500272107).epsilon(1e-14));

  CHECK_THROWS_AS(sinr_threshold(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(sinr_threshold(il_params(4.0, 50.0), 64), std::overflow_error);
}

TEST_CASE("coding gap rescales the threshold and the capacity uniformly") {
  const NetworkParams p = il_params(4.0, 0.25);
  const BandPlan exact = sinr_threshold(p, 7);
  CHECK(gap_adjusted_threshold(p, 7, 1.0).beta == exact.beta);

  for (const double gamma : {0.4, 0.8}) {
    const double factor = std::pow(gamma, 2.0 / p.alpha);
    for (int n = 1; n <= 16; ++n) {
      const double base = capacity_interference_limited(p, n, 0.1).lambda;
      const double gapped =
          capacity_interference_limited(p, gap_adjusted_threshold(p, n, gamma), 0.1)
              .lambda;
      CHECK(gapped == doctest::Approx(base * factor).epsilon(1e-13));
    }
    // A uniform scale factor cannot move the argmax.
    int best_base = 1, best_gap = 1;
    double best_base_v = 0.0, best_gap_v = 0.0;
    for (int n = 1; n <= 64; ++n) {
      const double v = capacity_interference_limited(p, n, 0.1).lambda;
      const double g =
          capacity_interference_limited(p, gap_adjusted_threshold(p, n, gamma), 0.1)
              .lambda;
      if (v > best_base_v) { best_base_v = v; best_base = n; }
      if (g > best_gap_v) { best_gap_v = g; best_gap = n; }
    }
    CHECK(best_base == best_gap);
  }
  CHECK_THROWS_AS(gap_adjusted_threshold(p, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gap_adjusted_threshold(p, 1, 1.5), std::invalid_argument);
}

TEST_CASE("optimal spectral efficiency against frozen references") {
  CHECK(optimal_spectral_efficiency(2.01) ==
        doctest::Approx(0.014402985348536623).epsilon(1e-9));
  CHECK(optimal_spectral_efficiency(2.1) ==
        doctest::Approx(0.14194233445062372).epsilon(1e-12));
  CHECK(optimal_spectral_efficiency(2.5) ==
        doctest::Approx(0.66971743865972521).epsilon(1e-13));
  CHECK(optimal_spectral_efficiency(3.0) == doctest::Approx(kBStar3).epsilon(1e-13));
  CHECK(optimal_spectral_efficiency(3.5) ==
        doctest::Approx(1.7993604893460232).epsilon(1e-13));
  CHECK(optimal_spectral_efficiency(4.0) == doctest::Approx(kBStar4).epsilon(1e-13));
  CHECK(optimal_spectral_efficiency(5.0) ==
        doctest::Approx(3.2195353982688915).epsilon(1e-13));
  CHECK(optimal_spectral_efficiency(6.0) ==
        doctest::Approx(4.0704765903293939).epsilon(1e-13));

  // Thresholds at the optimum, in linear and dB.
  const double beta3 = std::exp2(kBStar3) - 1.0;
  CHECK(std::exp2(optimal_spectral_efficiency(3.0)) - 1.0 ==
        doctest::Approx(beta3).epsilon(1e-13));
  CHECK(10.0 * std::log10(std::exp2(optimal_spectral_efficiency(3.0)) - 1.0) ==
        doctest::Approx(1.4519604123851205).epsilon(1e-12));
  CHECK(10.0 * std::log10(std::exp2(optimal_spectral_efficiency(4.0)) - 1.0) ==
        doctest::Approx(5.9345815917459774).epsilon(1e-12));

  CHECK_THROWS_AS(optimal_spectral_efficiency(2.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_spectral_efficiency(1.0), std::invalid_argument);
}

TEST_CASE("b* solves its own fixed-point equation") {
  for (double alpha = 2.1; alpha <= 6.001; alpha += 0.1) {
    const double b = optimal_spectral_efficiency(alpha);
    const double lhs = b * std::numbers::ln2;
    const double rhs = (alpha / 2.0) * (1.0 - std::exp2(-b));
    CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, lhs));
  }
}

TEST_CASE("objective is unimodal with its peak at b*") {
  for (const double alpha : {2.1, 2.5, 3.0, 4.0, 6.0}) {
    const double b_star = optimal_spectral_efficiency(alpha);
    CHECK(density_constant(alpha) == capacity_objective(b_star, alpha));

    // Strictly rising before b*, strictly falling after.
    double prev = 0.0;
    bool falling = false;
    for (int i = 1; i <= 400; ++i) {
      const double b = 4.0 * b_star * i / 400.0;
      const double v = capacity_objective(b, alpha);
      if (v < prev) falling = true;
      if (falling) CHECK(v < prev);
      prev = v;
    }
    CHECK(capacity_objective(b_star * 0.9, alpha) < density_constant(alpha));
    CHECK(capacity_objective(b_star * 1.1, alpha) < density_constant(alpha));
  }

  CHECK(density_constant(3.0) == doctest::Approx(1.0092451174413504).epsilon(1e-12));
  CHECK(density_constant(4.0) == doctest::Approx(1.1609977867894039).epsilon(1e-12));
  CHECK(density_constant(5.0) == doctest::Approx(1.379910918273214).epsilon(1e-12));
  CHECK(density_constant(5.0) / density_constant(3.0) ==
        doctest::Approx(1.36727034337464).epsilon(1e-12));
}

TEST_CASE("optimal band count frozen cases") {
  const BandCountResult lo = optimal_band_count(il_params(4.0, 0.25));
  CHECK(lo.n_real == doctest::Approx(9.1964552680004388).epsilon(1e-12));
  CHECK(lo.n_star == 9);

  const BandCountResult hi = optimal_band_count(il_params(4.0, 0.5));
  CHECK(hi.n_real == doctest::Approx(4.5982276340002194).epsilon(1e-12));
  CHECK(hi.n_star == 5);

  // Demands at or above b* leave nothing to split.
  CHECK(optimal_band_count(il_params(3.0, 2.0)).n_star == 1);
  CHECK(optimal_band_count(il_params(3.0, kBStar3)).n_star == 1);

  CHECK_THROWS_AS(optimal_band_count(il_params(4.0, 1e-300)), std::overflow_error);
}

TEST_CASE("optimal band count matches exhaustive search") {
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> alpha_dist(2.05, 6.0);
  std::uniform_real_distribution<double> util_dist(0.01, 1.5);
  for (int rep = 0; rep < 200; ++rep) {
    const double alpha = alpha_dist(gen);
    const double util = util_dist(gen);
    const NetworkParams p = il_params(alpha, util);
    const BandCountResult got = optimal_band_count(p);

    const double b_star = optimal_spectral_efficiency(alpha);
    const int n_hi = static_cast<int>(std::ceil(4.0 * b_star / util)) + 2;
    int best_n = 1;
    double best_v = capacity_interference_limited(p, 1, 0.1).lambda;
    for (int n = 2; n <= n_hi; ++n) {
      const double v = capacity_interference_limited(p, n, 0.1).lambda;
      if (v > best_v) {
        best_v = v;
        best_n = n;
      }
    }
    CAPTURE(alpha);
    CAPTURE(util);
    CHECK(got.n_star == best_n);
  }
}

TEST_CASE("capacity frozen values and scaling laws") {
  const NetworkParams p = il_params(4.0, 0.25);
  CHECK(capacity_interference_limited(p, 1, 0.1).lambda ==
        doctest::Approx(kLambdaOne25).epsilon(1e-14));
  CHECK(capacity_interference_limited(p, 1, 0.1).kind ==
        CapacityKind::AnalyticInterferenceLimited);

  // Penalty of refusing to split, at both reference utilizations.
  const double pen25 = capacity_interference_limited(p, 9, 0.1).lambda /
                       capacity_interference_limited(p, 1, 0.1).lambda;
  CHECK(pen25 == doctest::Approx(2.0197636816169551).epsilon(1e-12));
  const NetworkParams q = il_params(4.0, 0.5);
  const double pen50 = capacity_interference_limited(q, 5, 0.1).lambda /
                       capacity_interference_limited(q, 1, 0.1).lambda;
  CHECK(pen50 == doctest::Approx(1.4911998072781471).epsilon(1e-12));

  // Exact proportionality in epsilon and d^-2: doubling either input scales
  // the output by a power of two, which floating point preserves bitwise.
  for (int n : {1, 5, 9}) {
    CHECK(capacity_interference_limited(p, n, 0.2).lambda ==
          2.0 * capacity_interference_limited(p, n, 0.1).lambda);
    NetworkParams far = p;
    far.d = 20.0;
    CHECK(capacity_interference_limited(far, n, 0.1).lambda ==
          capacity_interference_limited(p, n, 0.1).lambda / 4.0);
  }

  CHECK_THROWS_AS(capacity_interference_limited(p, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(capacity_interference_limited(p, 1, 1.0), std::invalid_argument);
  BandPlan bad{0, 0.25, 0.1892};
  CHECK_THROWS_AS(capacity_interference_limited(p, bad, 0.1), std::invalid_argument);
}

TEST_CASE("noise term: bit identity when absent, reduction when present") {
  const NetworkParams il = il_params(4.0, 0.25);
  for (int n : {1, 4, 9, 16}) {
    const CapacityResult a = capacity_approx(il, n, 0.1);
    const CapacityResult b = capacity_interference_limited(il, n, 0.1);
    CHECK(a.lambda == b.lambda);
    CHECK(a.kind == CapacityKind::AnalyticInterferenceLimited);
  }

  const NetworkParams noisy = NetworkParams::from_utilization(4.0, 10.0, 0.25, 100.0);
  for (int n : {1, 4, 9}) {
    const CapacityResult a = capacity_approx(noisy, n, 0.1);
    CHECK(a.kind == CapacityKind::AnalyticApprox);
    CHECK(a.lambda < capacity_interference_limited(noisy, n, 0.1).lambda);
    // More sub-bands concentrate power, shrinking the noise penalty.
  }

  // Noise-infeasible: per-band SNR below the threshold.
  const NetworkParams weak = NetworkParams::from_utilization(4.0, 10.0, 0.25, 0.01);
  CHECK_THROWS_AS(capacity_approx(weak, 1, 0.1), std::domain_error);
}

TEST_CASE("low-rate band scaling follows n^(1-2/alpha)") {
  for (const double alpha : {3.0, 4.0}) {
    const NetworkParams p = il_params(alpha, 0.01);
    const double base = capacity_interference_limited(p, 1, 0.1).lambda;
    for (int n = 1; n <= 10; ++n) {  // n r/w <= 0.1 throughout
      const double ratio = capacity_interference_limited(p, n, 0.1).lambda / base;
      const double law = std::pow(n, 1.0 - 2.0 / alpha);
      CHECK(std::fabs(ratio / law - 1.0) <= 0.05);
    }
  }
}

TEST_CASE("direct sequence never beats splitting and ties only at n = 1") {
  for (const double alpha : {3.0, 4.0, 6.0}) {
    for (const double util : {0.25, 0.5, 1.0}) {
      const NetworkParams p = il_params(alpha, util);
      for (int n = 1; n <= 64; ++n) {
        const double ds = ds_capacity(p, n, 0.1).lambda;
        const double fh = capacity_interference_limited(p, n, 0.1).lambda;
        if (n == 1) {
          CHECK(ds == fh);
        } else {
          CHECK(ds < fh);
          CHECK(fh / ds ==
                doctest::Approx(std::pow(n, 1.0 - 2.0 / alpha)).epsilon(1e-12));
        }
      }
    }
  }

  const NetworkParams p = il_params(4.0, 0.25);
  CHECK(ds_capacity(p, 1, 0.1).lambda == doctest::Approx(kLambdaOne25).epsilon(1e-14));
  CHECK(ds_capacity(p, 16, 0.1).lambda ==
        doctest::Approx(0.0003287490368327999).epsilon(1e-12));
  CHECK(ds_capacity(p, 1, 0.1).kind == CapacityKind::DsAnalytic);

  // Spreading gains cannot outpace the threshold growth: non-increasing in n.
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 64; ++n) {
    const double ds = ds_capacity(p, n, 0.1).lambda;
    CHECK(ds <= prev);
    prev = ds;
  }
}

TEST_CASE("information density dominates every integer split") {
  const NetworkParams p = il_params(4.0, 0.25);
  const double star = info_density(p, 0.1).lambda;
  CHECK(star == doctest::Approx(0.0014782282934902721).epsilon(1e-12));
  for (int n = 1; n <= 64; ++n) {
    CHECK(capacity_interference_limited(p, n, 0.1).lambda <= star * (1.0 + 1e-12));
  }

  // When b*/util is an integer the bound is attained (up to rounding).
  const NetworkParams exact = il_params(4.0, kBStar4 / 5.0);
  CHECK(capacity_interference_limited(exact, 5, 0.1).lambda ==
        doctest::Approx(info_density(exact, 0.1).lambda).epsilon(1e-12));
}

TEST_CASE("area spectral efficiency is independent of the rate demand") {
  const NetworkParams a = il_params(4.0, 0.25);
  const NetworkParams b = il_params(4.0, 0.7);
  CHECK(area_spectral_efficiency(a, 0.1) == area_spectral_efficiency(b, 0.1));
  CHECK(area_spectral_efficiency(a, 0.1) ==
        doctest::Approx(0.00036955707337256801).epsilon(1e-12));
  // And scales linearly in epsilon.
  CHECK(area_spectral_efficiency(a, 0.2) == 2.0 * area_spectral_efficiency(a, 0.1));
}

TEST_CASE("capacity kind labels are stable") {
  CHECK(to_string(CapacityKind::AnalyticApprox) == "analytic-approx");
  CHECK(to_string(CapacityKind::AnalyticInterferenceLimited) ==
        "analytic-interference-limited");
  CHECK(to_string(CapacityKind::MonteCarlo) == "monte-carlo");
  CHECK(to_string(CapacityKind::DsAnalytic) == "ds-analytic");
  CHECK(to_string(CapacityKind::DeterministicUpper) == "deterministic-upper");
  CHECK(to_string(CapacityKind::LatticeLower) == "lattice-lower");
}
