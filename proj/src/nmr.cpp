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

#include "spincount/nmr.hpp"

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

namespace spincount {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_two_spin(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) {
    throw DimensionMismatch(std::string(what) +
                            ": expected a two-spin (4x4) state");
  }
}

// Diagonal free-Hamiltonian energies in rad/s over |00>,|01>,|10>,|11>:
// the Zeeman terms (+w/2 on I, -w/2 on S) cancel on |00> and |11>, leaving
// only the J coupling there, and add on the middle pair.
std::array<double, 4> free_energies(double omega, double j_hz) {
  const double half = omega / 2.0;
  const double jj = M_PI * j_hz / 2.0;
  return {jj, half - jj, -half - jj, jj};
}

Operator free_prop(double omega, double j_hz, double t) {
  const auto d = free_energies(omega, j_hz);
  Matrix m = Matrix::Zero(4, 4);
  constexpr long double kTwoPi = 6.283185307179586476925286766559L;
  for (int i = 0; i < 4; ++i) {
    // omega*t runs into 1e8..1e9 rad for weakly coupled verification
    // configs; reduce mod 2pi in extended precision before trig.
    const long double arg =
        std::fmod(static_cast<long double>(d[i]) * static_cast<long double>(t),
                  kTwoPi);
    const double phase = static_cast<double>(arg);
    m(i, i) = Complex(std::cos(phase), -std::sin(phase));
  }
  return Operator(std::move(m));
}

Matrix free_hamiltonian(const SpinSystem& sys) {
  const auto d = free_energies(sys.omega, sys.j);
  Matrix h = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) h(i, i) = d[i];
  return h;
}

// Total transverse spin operator at the given phase: Fx cos + Fy sin with
// Fx = sx/2 x 1 + 1 x sx/2 and likewise for Fy.
Matrix transverse_field(double phase_rad) {
  Matrix s(2, 2);
  s << 0.0, std::exp(-kI * phase_rad), std::exp(kI * phase_rad), 0.0;
  s *= 0.5;
  const Matrix i2 = Matrix::Identity(2, 2);
  Matrix a = Matrix::Zero(4, 4), b = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a.block(i * 2, j * 2, 2, 2) = s(i, j) * i2;
      b.block(i * 2, j * 2, 2, 2) = i2(i, j) * s;
    }
  return a + b;
}

Operator ideal_pulse(double angle_rad, double phase_rad, double b1_scale) {
  const Operator r = rotation_gate(angle_rad * b1_scale, phase_rad);
  return tensor(r, r);
}

double pulse_seconds(const SpinSystem& sys, double angle_deg) {
  return (angle_deg * M_PI / 180.0) / sys.omega1;
}

double deg2rad(double d) { return d * M_PI / 180.0; }

// Single-member experiment with the four-step phase cycle: the readout pulse
// phase and the receiver reference advance by 90 degrees together, which is
// an exact no-op for a perfect receiver but catches phase-cycle bugs and
// models a miscalibrated receiver when receiver_phase_error is set.
double phase_cycled_readout(const SpinSystem& sys, const DensityMatrix& rho,
                            double b1_scale) {
  const DensityMatrix filtered =
      zero_quantum_filter(gradient_crush(rho), sys);
  const Matrix i2 = Matrix::Identity(2, 2);
  double acc = 0.0;
  for (int c = 0; c < 4; ++c) {
    const Operator p =
        pulse_propagator(sys, 90.0, 90.0 + 90.0 * c, b1_scale);
    const DensityMatrix excited = evolve(filtered, p);
    const double rx = deg2rad(90.0 * c) + sys.receiver_phase_error;
    Matrix quad(2, 2);
    quad << 0.0, std::exp(-kI * rx), std::exp(kI * rx), 0.0;
    Matrix obs = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) obs.block(i * 2, j * 2, 2, 2) = quad(i, j) * i2;
    acc += expectation(excited, Operator(std::move(obs)));
  }
  return acc / 4.0;
}

double member_signal(const SpinSystem& sys, const PulseSequence& seq,
                     double b1_scale) {
  DensityMatrix rho = pseudo_pure_initial(sys);
  rho = run_sequence(sys, rho, seq, b1_scale);
  return phase_cycled_readout(sys, rho, b1_scale);
}

}  // namespace

Operator free_propagator(const SpinSystem& sys, double t) {
  check(sys);
  if (t < 0.0) throw std::invalid_argument("free_propagator: negative time");
  return free_prop(sys.omega, sys.j, t);
}

Operator pulse_propagator(const SpinSystem& sys, double angle_deg,
                          double phase_deg, double b1_scale) {
  check(sys);
  if (angle_deg < 0.0) {
    throw std::invalid_argument("pulse_propagator: negative flip angle");
  }
  const double theta = deg2rad(angle_deg);
  const double phase = deg2rad(phase_deg);
  if (sys.pulse_mode == PulseMode::ideal) {
    return ideal_pulse(theta, phase, b1_scale);
  }
  const Matrix h =
      free_hamiltonian(sys) + sys.omega1 * b1_scale * transverse_field(phase);
  return expm_hermitian(Operator(h), theta / sys.omega1);
}

DensityMatrix apply_t2(const DensityMatrix& rho, const SpinSystem& sys,
                       double t) {
  check(sys);
  check_two_spin(rho, "apply_t2");
  if (t < 0.0) throw std::invalid_argument("apply_t2: negative time");
  const double factor = std::exp(-t / sys.t2);
  Matrix m = rho.mat;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) m(i, j) *= factor;
  return DensityMatrix(std::move(m));
}

DensityMatrix gradient_crush(const DensityMatrix& rho) {
  check_two_spin(rho, "gradient_crush");
  Matrix m = Matrix::Zero(4, 4);
  m.diagonal() = rho.mat.diagonal();
  // The |01><10| pair carries no net magnetic quantum number, so a field
  // gradient leaves it untouched.
  m(1, 2) = rho.mat(1, 2);
  m(2, 1) = rho.mat(2, 1);
  return DensityMatrix(std::move(m));
}

DensityMatrix zero_quantum_filter(const DensityMatrix& rho,
                                  const SpinSystem& sys) {
  check(sys);
  check_two_spin(rho, "zero_quantum_filter");
  const int steps = sys.zq_filter_steps;
  const double period = 2.0 * M_PI / sys.omega;
  Matrix acc = Matrix::Zero(4, 4);
  for (int m = 0; m < steps; ++m) {
    const Operator u = free_propagator(sys, period * m / steps);
    acc += (u.mat * rho.mat * u.mat.adjoint());
  }
  return DensityMatrix(acc / static_cast<double>(steps));
}

DensityMatrix apply_event(const SpinSystem& sys, const DensityMatrix& rho,
                          const PulseEvent& ev, double b1_scale) {
  switch (ev.kind) {
    case EventKind::hard_pulse: {
      DensityMatrix out = evolve(
          rho, pulse_propagator(sys, ev.angle_deg, ev.phase_deg, b1_scale));
      if (sys.pulse_mode == PulseMode::realistic) {
        out = apply_t2(out, sys, pulse_seconds(sys, ev.angle_deg));
      }
      return out;
    }
    case EventKind::delay:
      return apply_t2(evolve(rho, free_propagator(sys, ev.duration_s)), sys,
                      ev.duration_s);
    case EventKind::gradient_crush:
      return gradient_crush(rho);
  }
  throw std::logic_error("apply_event: unknown event kind");
}

DensityMatrix run_sequence(const SpinSystem& sys, const DensityMatrix& rho0,
                           const PulseSequence& seq, double b1_scale) {
  check(sys);
  check_two_spin(rho0, "run_sequence");
  // Counting sequences repeat a handful of distinct events thousands of
  // times, so memoize the propagators within this run (they depend only on
  // the event parameters once b1_scale is fixed).
  std::map<std::tuple<int, double, double, double>, Matrix> cache;
  DensityMatrix rho = rho0;
  for (const auto& ev : seq.events) {
    if (ev.kind == EventKind::gradient_crush) {
      rho = gradient_crush(rho);
      continue;
    }
    const auto key = std::make_tuple(static_cast<int>(ev.kind), ev.angle_deg,
                                     ev.phase_deg, ev.duration_s);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const Operator u =
          ev.kind == EventKind::hard_pulse
              ? pulse_propagator(sys, ev.angle_deg, ev.phase_deg, b1_scale)
              : free_propagator(sys, ev.duration_s);
      it = cache.emplace(key, u.mat).first;
    }
    rho = DensityMatrix(it->second * rho.mat * it->second.adjoint());
    const double t = ev.kind == EventKind::delay
                         ? ev.duration_s
                         : (sys.pulse_mode == PulseMode::realistic
                                ? pulse_seconds(sys, ev.angle_deg)
                                : 0.0);
    if (t > 0.0) rho = apply_t2(rho, sys, t);
  }
  return rho;
}

double measure_signal(const SpinSystem& sys, const DensityMatrix& rho,
                      Readout method) {
  check(sys);
  check_two_spin(rho, "measure_signal");
  const Operator i2 = identity_op(2);
  if (method == Readout::sigma_z) {
    return expectation(rho, tensor(pauli_z(), i2));
  }
  DensityMatrix filtered = zero_quantum_filter(gradient_crush(rho), sys);
  filtered = evolve(filtered, pulse_propagator(sys, 90.0, 90.0, 1.0));
  return expectation(filtered, tensor(pauli_x(), i2));
}

DensityMatrix pseudo_pure_initial(const SpinSystem& sys) {
  check(sys);
  const double p = sys.pseudo_pure_purity;
  Matrix m = Matrix::Identity(4, 4) * ((1.0 - p) / 4.0);
  m(0, 0) += p;
  return DensityMatrix(std::move(m));
}

std::vector<double> ensemble_b1_scales(const SpinSystem& sys) {
  check(sys);
  std::vector<double> scales(static_cast<size_t>(sys.ensemble_samples), 1.0);
  if (sys.b1_sigma == 0.0) return scales;  // exact unit scales, no RNG
  for (int m = 0; m < sys.ensemble_samples; ++m) {
    std::seed_seq ss{static_cast<unsigned>(sys.rng_seed & 0xffffffffu),
                     static_cast<unsigned>(sys.rng_seed >> 32),
                     static_cast<unsigned>(m)};
    std::mt19937_64 gen(ss);
    std::normal_distribution<double> dist(1.0, sys.b1_sigma);
    scales[static_cast<size_t>(m)] = dist(gen);
  }
  return scales;
}

double nmr_signal_serial(const SpinSystem& sys, const OracleSpec& f, int r) {
  check(sys);
  const PulseSequence seq = compile_counting_sequence(f, r, sys);
  const std::vector<double> scales = ensemble_b1_scales(sys);
  double acc = 0.0;
  for (size_t m = 0; m < scales.size(); ++m) {
    acc += member_signal(sys, seq, scales[m]);
  }
  return acc / static_cast<double>(scales.size());
}

double nmr_signal(const SpinSystem& sys, const OracleSpec& f, int r) {
  check(sys);
  const PulseSequence seq = compile_counting_sequence(f, r, sys);
  const std::vector<double> scales = ensemble_b1_scales(sys);
  std::vector<double> results(scales.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < static_cast<int>(scales.size()); ++m) {
    results[static_cast<size_t>(m)] =
        member_signal(sys, seq, scales[static_cast<size_t>(m)]);
  }
  // Reduce in fixed member order so the result does not depend on the
  // number of worker threads.
  double acc = 0.0;
  for (double v : results) acc += v;
  return acc / static_cast<double>(results.size());
}

SignalBackend nmr_backend(const SpinSystem& sys) {
  check(sys);
  return [sys](const OracleSpec& f, int r) {
    if (f.n != 1) {
      throw std::invalid_argument(
          "nmr backend: only one-bit oracles are realizable on two spins");
    }
    return nmr_signal(sys, f, r);
  };
}

Operator ideal_sequence_propagator(const SpinSystem& sys,
                                   const PulseSequence& seq,
                                   SelectiveDelayCoupling coupling) {
  check(sys);
  const double eps45 = M_PI / (2.0 * sys.omega);
  Operator u = identity_op(4);
  for (const auto& ev : seq.events) {
    switch (ev.kind) {
      case EventKind::hard_pulse:
        u = ideal_pulse(deg2rad(ev.angle_deg), deg2rad(ev.phase_deg), 1.0) * u;
        break;
      case EventKind::delay: {
        const bool neglect =
            coupling == SelectiveDelayCoupling::neglected &&
            std::abs(ev.duration_s - eps45) <= 1e-12 * eps45;
        u = free_prop(sys.omega, neglect ? 0.0 : sys.j, ev.duration_s) * u;
        break;
      }
      case EventKind::gradient_crush:
        throw std::invalid_argument(
            "ideal_sequence_propagator: crush events are not unitary");
    }
  }
  return u;
}

}  // namespace spincount
