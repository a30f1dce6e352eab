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

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "spincount/circuit.hpp"

namespace spincount {

struct ZeroReference : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooFewPoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateSeries : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PhaseOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoMatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Any signal source mapping (oracle, iteration count) to a real value.
using SignalBackend = std::function<double(const OracleSpec&, int)>;

struct SignalSeries {
  struct Point {
    int r;
    double value;
  };
  std::string backend_id;
  std::string oracle_id;
  std::vector<Point> points;  // r strictly increasing from 0
};

struct FitResult {
  double phi_hat = 0.0;      // [0, pi]
  double amplitude = 0.0;    // > 0
  double decay_rate = 0.0;   // >= 0, per iteration
  double residual_rms = 0.0;
};

struct CountEstimate {
  double k_real = 0.0;
  int k_rounded = 0;
};

struct IterationBudget {
  double count_exact;     // sqrt(k(N-k))
  double count_relative;  // (1/eps) * sqrt(N/(k+1))
};

// Sample backend(f, r) for r = 0..r_max and normalize by the r = 0 value.
// Throws ZeroReference when |backend(f, 0)| < 1e-9.
SignalSeries acquire_series(const SignalBackend& backend, const OracleSpec& f,
                            int r_max, const std::string& backend_id = "");

// Least-squares fit of A * exp(-lambda*r) * cos(phi*r): the frequency is
// seeded from a fine periodogram scan of [0, pi] and refined by damped
// Gauss-Newton with the parameters projected onto A > 0, lambda >= 0,
// phi in [0, pi].
FitResult fit_damped_cosine(const SignalSeries& series);

// k = N*(1 - cos(phi))/2, rounded to the nearest integer with ties down.
CountEstimate phase_to_count(double phi, int big_n);

// acquire -> fit -> phase_to_count.
std::pair<int, FitResult> estimate_count(const SignalBackend& backend,
                                         const OracleSpec& f, int big_n,
                                         int r_max);

IterationBudget iteration_budget(int big_n, int k, double epsilon);

// |k_est - k_true| <= eps*k_true, with k_true = 0 requiring k_est = 0.
bool accuracy_satisfied(int k_true, double k_est, double epsilon);

// Smallest matching input of f, found by bisection over counting calls on
// restricted oracles f(x) AND (x <= m).  Uses at most log2(N) + 1 counting
// calls; throws NoMatch when the full-domain count is zero.
int first_match(const OracleSpec& f, int big_n, const SignalBackend& backend,
                int r_max = 32);

}  // namespace spincount
