/* Copyright 2026 The Spincount Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "spincount/counting.hpp"

using namespace spincount;

namespace {

SignalBackend gate_backend() {
  return [](const OracleSpec& f, int r) { return measured_signal(f, r); };
}

SignalSeries synthetic_series(double amplitude, double lambda, double phi,
                              int r_max) {
  SignalSeries s;
  s.oracle_id = "synthetic";
  for (int r = 0; r <= r_max; ++r) {
    s.points.push_back(
        {r, amplitude * std::exp(-lambda * r) * std::cos(phi * r)});
  }
  return s;
}

}  // namespace

TEST_CASE("series acquisition and normalization", "[counting]") {
  const OracleSpec f01 = OracleSpec::named("f01");

  SECTION("samples r = 0..r_max and normalizes by the r = 0 value") {
    // A backend with an arbitrary overall scale: normalization must strip it.
    const SignalBackend scaled = [](const OracleSpec& f, int r) {
      return 0.25 * measured_signal(f, r);
    };
    const SignalSeries s = acquire_series(scaled, f01, 6, "scaled-gate");
    REQUIRE(s.backend_id == "scaled-gate");
    REQUIRE(s.oracle_id == "f01");
    REQUIRE(s.points.size() == 7);
    REQUIRE(s.points[0].r == 0);
    REQUIRE(s.points[0].value == 1.0);  // exactly, by construction
    for (int r = 0; r <= 6; ++r) {
      REQUIRE(s.points[r].r == r);
      REQUIRE(s.points[r].value ==
              Catch::Approx(ideal_signal(1, 2, r)).margin(1e-12));
    }
  }

  SECTION("rejects unusable inputs") {
    REQUIRE_THROWS_AS(acquire_series(SignalBackend{}, f01, 8),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(acquire_series(gate_backend(), f01, 1),
                      std::invalid_argument);
    const SignalBackend dead = [](const OracleSpec&, int) { return 0.0; };
    REQUIRE_THROWS_AS(acquire_series(dead, f01, 8), ZeroReference);
  }
}

TEST_CASE("damped cosine fit", "[counting]") {
  SECTION("exact recovery on clean synthetic data") {
    const double lambda = -std::log(0.9);
    const FitResult fit = fit_damped_cosine(synthetic_series(1.0, lambda,
                                                             0.6, 30));
    REQUIRE(fit.phi_hat == Catch::Approx(0.6).margin(1e-9));
    REQUIRE(fit.decay_rate == Catch::Approx(lambda).margin(1e-9));
    REQUIRE(fit.amplitude == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(fit.residual_rms < 1e-12);
  }

  SECTION("non-unit amplitude and fast oscillation") {
    const FitResult fit = fit_damped_cosine(synthetic_series(0.8, 0.05,
                                                             2.5, 24));
    REQUIRE(fit.phi_hat == Catch::Approx(2.5).margin(1e-9));
    REQUIRE(fit.decay_rate == Catch::Approx(0.05).margin(1e-9));
    REQUIRE(fit.amplitude == Catch::Approx(0.8).margin(1e-9));
  }

  SECTION("pure decay pins the frequency at zero") {
    const FitResult fit = fit_damped_cosine(synthetic_series(1.0,
                                                             -std::log(0.95),
                                                             0.0, 20));
    REQUIRE(fit.phi_hat == Catch::Approx(0.0).margin(1e-6));
    REQUIRE(fit.decay_rate == Catch::Approx(-std::log(0.95)).margin(1e-9));
  }

  SECTION("tolerates small additive noise") {
    SignalSeries s = synthetic_series(1.0, 0.08, 1.9, 40);
    std::mt19937 gen(61);
    std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
    for (auto& p : s.points) p.value += noise(gen);
    const FitResult fit = fit_damped_cosine(s);
    REQUIRE(fit.phi_hat == Catch::Approx(1.9).margin(1e-3));
    REQUIRE(fit.decay_rate == Catch::Approx(0.08).margin(1e-3));
    REQUIRE(fit.residual_rms > 1e-5);   // noise shows up in the residual,
    REQUIRE(fit.residual_rms < 2e-3);   // but stays at the noise scale
  }

  SECTION("constant unit series short-circuits to zero frequency") {
    SignalSeries s;
    for (int r = 0; r <= 10; ++r) s.points.push_back({r, 1.0});
    const FitResult fit = fit_damped_cosine(s);
    REQUIRE(fit.phi_hat == 0.0);
    REQUIRE(fit.amplitude == 1.0);
    REQUIRE(fit.decay_rate == 0.0);
    REQUIRE(fit.residual_rms == 0.0);
  }

  SECTION("degenerate and undersized series are rejected") {
    SignalSeries flat;
    for (int r = 0; r <= 10; ++r) flat.points.push_back({r, 0.5});
    REQUIRE_THROWS_AS(fit_damped_cosine(flat), DegenerateSeries);

    SignalSeries tiny;
    for (int r = 0; r <= 2; ++r) tiny.points.push_back({r, std::cos(0.3 * r)});
    REQUIRE_THROWS_AS(fit_damped_cosine(tiny), TooFewPoints);
  }
}

TEST_CASE("phase to count conversion", "[counting]") {
  SECTION("endpoint and quarter phases") {
    REQUIRE(phase_to_count(0.0, 8).k_rounded == 0);
    REQUIRE(phase_to_count(M_PI, 8).k_rounded == 8);
    REQUIRE(phase_to_count(M_PI / 2.0, 2).k_rounded == 1);
    REQUIRE(phase_to_count(M_PI / 2.0, 16).k_rounded == 8);
  }

  SECTION("exact half-integer values round down") {
    // These cosines round-trip exactly through acos on this libm, so the
    // tie is hit exactly: k = 0.5 and k = 5.5.
    REQUIRE(std::cos(std::acos(0.75)) == 0.75);
    const CountEstimate low = phase_to_count(std::acos(0.75), 4);
    REQUIRE(low.k_real == 0.5);
    REQUIRE(low.k_rounded == 0);

    REQUIRE(std::cos(std::acos(-0.375)) == -0.375);
    const CountEstimate high = phase_to_count(std::acos(-0.375), 8);
    REQUIRE(high.k_real == 5.5);
    REQUIRE(high.k_rounded == 5);
  }

  SECTION("just off the tie rounds to the nearest integer") {
    REQUIRE(phase_to_count(std::acos(0.76), 4).k_rounded == 0);  // k=0.48
    REQUIRE(phase_to_count(std::acos(0.74), 4).k_rounded == 1);  // k=0.52
  }

  SECTION("argument validation") {
    REQUIRE_THROWS_AS(phase_to_count(1.0, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(phase_to_count(1.0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(phase_to_count(-0.1, 4), PhaseOutOfRange);
    REQUIRE_THROWS_AS(phase_to_count(M_PI + 0.01, 4), PhaseOutOfRange);
    REQUIRE_THROWS_AS(phase_to_count(std::nan(""), 4), PhaseOutOfRange);
  }
}

TEST_CASE("count estimation end to end", "[counting]") {
  const SignalBackend backend = gate_backend();

  SECTION("one-bit oracles") {
    REQUIRE(estimate_count(backend, OracleSpec::named("f00"), 2, 16).first ==
            0);
    REQUIRE(estimate_count(backend, OracleSpec::named("f01"), 2, 16).first ==
            1);
    REQUIRE(estimate_count(backend, OracleSpec::named("f10"), 2, 16).first ==
            1);
    REQUIRE(estimate_count(backend, OracleSpec::named("f11"), 2, 16).first ==
            2);
  }

  SECTION("random three-bit tables recover the exact count") {
    std::mt19937 gen(67);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<bool> t(8);
      for (size_t i = 0; i < t.size(); ++i) t[i] = coin(gen);
      const OracleSpec f = OracleSpec::from_table(t);
      const auto [k, fit] = estimate_count(backend, f, 8, 32);
      REQUIRE(k == f.match_count());
      REQUIRE(fit.residual_rms < 1e-6);  // noiseless backend, exact model
    }
  }

  SECTION("domain size must match the oracle") {
    REQUIRE_THROWS_AS(estimate_count(backend, OracleSpec::named("f01"), 4, 16),
                      std::invalid_argument);
  }
}

TEST_CASE("iteration budget", "[counting]") {
  const IterationBudget b = iteration_budget(1024, 3, 0.1);
  REQUIRE(b.count_exact == Catch::Approx(std::sqrt(3.0 * 1021.0)));
  REQUIRE(b.count_exact == Catch::Approx(55.34437460).margin(1e-6));
  REQUIRE(b.count_relative == Catch::Approx(160.0));  // sqrt(1024/4)/0.1

  REQUIRE(iteration_budget(16, 0, 0.5).count_exact == 0.0);
  REQUIRE(iteration_budget(16, 16, 0.5).count_exact == 0.0);

  REQUIRE_THROWS_AS(iteration_budget(16, -1, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(iteration_budget(16, 17, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(iteration_budget(16, 3, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(iteration_budget(16, 3, -0.2), std::invalid_argument);
}

TEST_CASE("relative accuracy predicate", "[counting]") {
  REQUIRE(accuracy_satisfied(10, 10.5, 0.05));
  REQUIRE_FALSE(accuracy_satisfied(10, 10.6, 0.05));
  REQUIRE(accuracy_satisfied(10, 9.5, 0.05));
  // A zero true count tolerates no error at all.
  REQUIRE(accuracy_satisfied(0, 0.0, 0.5));
  REQUIRE_FALSE(accuracy_satisfied(0, 0.2, 0.5));
  REQUIRE_THROWS_AS(accuracy_satisfied(-1, 0.0, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(accuracy_satisfied(3, 3.0, -0.1), std::invalid_argument);
}

TEST_CASE("first matching input via counting calls", "[counting]") {
  // Count how many counting experiments run by watching r = 0 queries:
  // each estimate samples its series exactly once from r = 0.
  int experiments = 0;
  const SignalBackend counted = [&experiments](const OracleSpec& f, int r) {
    if (r == 0) ++experiments;
    return measured_signal(f, r);
  };

  SECTION("single match is located exactly") {
    std::vector<bool> t(8, false);
    t[5] = true;
    experiments = 0;
    REQUIRE(first_match(OracleSpec::from_table(t), 8, counted) == 5);
    REQUIRE(experiments <= 4);  // log2(8) + 1
  }

  SECTION("smallest of several matches wins") {
    std::vector<bool> t(8, false);
    t[2] = t[3] = t[7] = true;
    REQUIRE(first_match(OracleSpec::from_table(t), 8, counted) == 2);

    std::vector<bool> front(8, false);
    front[0] = true;
    REQUIRE(first_match(OracleSpec::from_table(front), 8, counted) == 0);

    REQUIRE(first_match(OracleSpec::named("f01"), 2, counted) == 1);
  }

  SECTION("empty oracles and bad domains are rejected") {
    REQUIRE_THROWS_AS(
        first_match(OracleSpec::from_table(std::vector<bool>(8, false)), 8,
                    counted),
        NoMatch);
    REQUIRE_THROWS_AS(first_match(OracleSpec::named("f01"), 8, counted),
                      std::invalid_argument);
  }
}
