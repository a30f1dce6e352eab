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

#include "spincount/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace spincount {

namespace {

double model(double a, double lam, double phi, int r) {
  return a * std::exp(-lam * r) * std::cos(phi * r);
}

double sum_sq_error(const std::vector<SignalSeries::Point>& pts, double a,
                    double lam, double phi) {
  double sse = 0.0;
  for (const auto& p : pts) {
    const double e = p.value - model(a, lam, phi, p.r);
    sse += e * e;
  }
  return sse;
}

// Coarse frequency seed: argmax over a fine grid of the magnitude of the
// complex projection sum_r v_r exp(-i w r), w in [0, pi].
double periodogram_peak(const std::vector<SignalSeries::Point>& pts) {
  constexpr int kGrid = 4096;
  double best_w = 0.0, best_mag = -1.0;
  for (int g = 0; g < kGrid; ++g) {
    const double w = M_PI * g / (kGrid - 1);
    double re = 0.0, im = 0.0;
    for (const auto& p : pts) {
      re += p.value * std::cos(w * p.r);
      im -= p.value * std::sin(w * p.r);
    }
    const double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best_w = w;
    }
  }
  return best_w;
}

// Crude envelope decay estimate to seed lambda: compare mean magnitudes of
// the first and second halves of the series.
double envelope_decay_seed(const std::vector<SignalSeries::Point>& pts) {
  const size_t n = pts.size();
  if (n < 8) return 0.0;
  const size_t half = n / 2;
  double e1 = 0.0, e2 = 0.0;
  for (size_t i = 0; i < half; ++i) e1 += std::abs(pts[i].value);
  for (size_t i = half; i < n; ++i) e2 += std::abs(pts[i].value);
  e1 /= half;
  e2 /= (n - half);
  if (e1 <= 1e-12 || e2 <= 1e-12) return 0.0;
  const double span = pts[n - 1].r - pts[0].r;
  return std::clamp(std::log(e1 / e2) / (span / 2.0), 0.0, 2.0);
}

}  // namespace

SignalSeries acquire_series(const SignalBackend& backend, const OracleSpec& f,
                            int r_max, const std::string& backend_id) {
  if (!backend) throw std::invalid_argument("acquire_series: null backend");
  if (r_max < 2) throw std::invalid_argument("acquire_series: r_max must be >= 2");

  const double ref = backend(f, 0);
  if (std::abs(ref) < 1e-9) {
    throw ZeroReference("acquire_series: reference signal at r=0 is ~0");
  }

  SignalSeries out;
  out.backend_id = backend_id;
  out.oracle_id = f.label;
  out.points.reserve(static_cast<size_t>(r_max) + 1);
  out.points.push_back({0, ref / ref});  // exactly 1.0
  for (int r = 1; r <= r_max; ++r) {
    out.points.push_back({r, backend(f, r) / ref});
  }
  return out;
}

FitResult fit_damped_cosine(const SignalSeries& series) {
  const auto& pts = series.points;
  if (pts.size() < 4) {
    throw TooFewPoints("fit_damped_cosine: need at least 4 points");
  }

  double lo = pts[0].value, hi = pts[0].value;
  for (const auto& p : pts) {
    lo = std::min(lo, p.value);
    hi = std::max(hi, p.value);
  }
  if (hi - lo <= 1e-12) {
    if (std::abs(pts[0].value - 1.0) <= 1e-12) {
      return {0.0, 1.0, 0.0, 0.0};  // constant unit series: zero frequency
    }
    throw DegenerateSeries("fit_damped_cosine: constant non-unit series");
  }

  double a = std::abs(pts[0].value) > 1e-6 ? std::abs(pts[0].value) : hi;
  double lam = envelope_decay_seed(pts);
  double phi = periodogram_peak(pts);

  // Damped Gauss-Newton with projection onto the admissible box.
  double mu = 1e-6;
  double sse = sum_sq_error(pts, a, lam, phi);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jte = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
      const double env = std::exp(-lam * p.r);
      const double c = std::cos(phi * p.r);
      const double s = std::sin(phi * p.r);
      const double e = p.value - a * env * c;
      Eigen::Vector3d grad;  // d(model)/d(a, lam, phi)
      grad << env * c, -p.r * a * env * c, -p.r * a * env * s;
      jtj += grad * grad.transpose();
      jte += grad * e;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() += Eigen::Vector3d::Constant(mu);
      const Eigen::Vector3d delta = damped.ldlt().solve(jte);
      const double a2 = std::max(a + delta(0), 1e-12);
      const double lam2 = std::max(lam + delta(1), 0.0);
      const double phi2 = std::clamp(phi + delta(2), 0.0, M_PI);
      const double sse2 = sum_sq_error(pts, a2, lam2, phi2);
      if (sse2 <= sse) {
        const double step = delta.cwiseAbs().maxCoeff();
        a = a2;
        lam = lam2;
        phi = phi2;
        const double gain = sse - sse2;
        sse = sse2;
        mu = std::max(mu / 3.0, 1e-12);
        stepped = true;
        if (step < 1e-13 || gain < 1e-28) iter = 200;  // converged
        break;
      }
      mu *= 4.0;
      if (mu > 1e14) break;
    }
    if (!stepped) break;
  }

  FitResult fit;
  fit.phi_hat = phi;
  fit.amplitude = a;
  fit.decay_rate = lam;
  fit.residual_rms = std::sqrt(sse / pts.size());
  return fit;
}

CountEstimate phase_to_count(double phi, int big_n) {
  if (big_n < 2 || (big_n & (big_n - 1)) != 0) {
    throw std::invalid_argument("phase_to_count: N must be a power of two >= 2");
  }
  if (!(phi >= 0.0 && phi <= M_PI)) {
    throw PhaseOutOfRange("phase_to_count: phi must lie in [0, pi]");
  }
  CountEstimate est;
  est.k_real = big_n * (1.0 - std::cos(phi)) / 2.0;
  // Nearest integer with exact ties rounded down.
  est.k_rounded = static_cast<int>(std::ceil(est.k_real - 0.5));
  est.k_rounded = std::clamp(est.k_rounded, 0, big_n);
  return est;
}

std::pair<int, FitResult> estimate_count(const SignalBackend& backend,
                                         const OracleSpec& f, int big_n,
                                         int r_max) {
  if (big_n != f.domain_size()) {
    throw std::invalid_argument("estimate_count: N does not match the oracle");
  }
  const SignalSeries series = acquire_series(backend, f, r_max);
  const FitResult fit = fit_damped_cosine(series);
  return {phase_to_count(fit.phi_hat, big_n).k_rounded, fit};
}

IterationBudget iteration_budget(int big_n, int k, double epsilon) {
  if (big_n < 2 || k < 0 || k > big_n) {
    throw std::invalid_argument("iteration_budget: k must lie in [0, N]");
  }
  if (epsilon <= 0.0) {
    throw std::invalid_argument("iteration_budget: epsilon must be > 0");
  }
  IterationBudget b;
  b.count_exact = std::sqrt(static_cast<double>(k) * (big_n - k));
  b.count_relative = std::sqrt(static_cast<double>(big_n) / (k + 1)) / epsilon;
  return b;
}

bool accuracy_satisfied(int k_true, double k_est, double epsilon) {
  if (k_true < 0) throw std::invalid_argument("accuracy_satisfied: k_true < 0");
  if (epsilon < 0.0) {
    throw std::invalid_argument("accuracy_satisfied: epsilon must be >= 0");
  }
  return std::abs(k_est - k_true) <= epsilon * k_true;
}

int first_match(const OracleSpec& f, int big_n, const SignalBackend& backend,
                int r_max) {
  if (big_n != f.domain_size()) {
    throw std::invalid_argument("first_match: N does not match the oracle");
  }
  if (estimate_count(backend, f, big_n, r_max).first == 0) {
    throw NoMatch("first_match: oracle has no matching input");
  }
  // Bisection on the smallest m whose prefix restriction f(x) AND (x <= m)
  // still contains a match.
  int lo = 0, hi = big_n - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    std::vector<bool> restricted(f.table.begin(), f.table.end());
    for (int x = mid + 1; x < big_n; ++x) restricted[x] = false;
    const OracleSpec g =
        OracleSpec::from_table(std::move(restricted), f.label + "&prefix");
    if (estimate_count(backend, g, big_n, r_max).first >= 1) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace spincount
