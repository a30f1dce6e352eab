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

#include "spincount/pulses.hpp"

#include <cmath>
#include <cstdio>

namespace spincount {

namespace {

// Quadrature phases in degrees.
constexpr double kX = 0.0;
constexpr double kY = 90.0;
constexpr double kMinusX = 180.0;
constexpr double kMinusY = 270.0;

void append(PulseSequence& seq, const PulseSequence& block) {
  seq.events.insert(seq.events.end(), block.events.begin(),
                    block.events.end());
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

PulseEvent PulseEvent::pulse(double angle_deg, double phase_deg) {
  PulseEvent ev;
  ev.kind = EventKind::hard_pulse;
  ev.angle_deg = angle_deg;
  ev.phase_deg = phase_deg;
  return ev;
}

PulseEvent PulseEvent::wait(double seconds) {
  PulseEvent ev;
  ev.kind = EventKind::delay;
  ev.duration_s = seconds;
  return ev;
}

PulseEvent PulseEvent::crush() {
  PulseEvent ev;
  ev.kind = EventKind::gradient_crush;
  return ev;
}

double total_duration(const PulseSequence& seq, const SpinSystem& sys) {
  check(sys);
  double t = 0.0;
  for (const auto& ev : seq.events) {
    switch (ev.kind) {
      case EventKind::delay:
        t += ev.duration_s;
        break;
      case EventKind::hard_pulse:
        if (sys.pulse_mode == PulseMode::realistic) {
          t += (ev.angle_deg * M_PI / 180.0) / sys.omega1;
        }
        break;
      case EventKind::gradient_crush:
        break;
    }
  }
  return t;
}

TimingSolution solve_timing(const SpinSystem& sys) {
  check(sys);
  TimingSolution sol;
  sol.eps270 = 3.0 * M_PI / sys.omega;
  sol.eps45 = M_PI / (2.0 * sys.omega);
  const double echo_total = 1.0 / (2.0 * sys.j);
  if (echo_total <= sol.eps270) {
    throw InfeasibleTiming(
        "solve_timing: 1/(2j) <= 3pi/omega leaves no room for the echo "
        "delays");
  }
  sol.delta = (echo_total - sol.eps270) / 4.0;
  return sol;
}

PulseSequence compile_selective_90(Spin target, AxisSign axis,
                                   const SpinSystem& sys) {
  const TimingSolution t = solve_timing(sys);

  // During eps45 spin I precesses by +45 degrees about z and spin S by -45.
  // A hard-90 sandwich [first, delay, first+180] turns that z rotation into
  // a rotation about a transverse axis; composing with the leading hard 45
  // doubles the rotation on one spin and cancels it on the other.  The
  // sandwich phase selects which spin survives and the 45 phase sets the
  // axis.
  double tilt_phase = 0.0;   // phase of the hard 45
  double first_phase = 0.0;  // phase of the opening hard 90
  switch (axis) {
    case AxisSign::plus_y:
      tilt_phase = kY;
      first_phase = (target == Spin::I) ? kX : kMinusX;
      break;
    case AxisSign::minus_y:
      tilt_phase = kMinusY;
      first_phase = (target == Spin::I) ? kMinusX : kX;
      break;
    case AxisSign::plus_x:
      tilt_phase = kX;
      first_phase = (target == Spin::I) ? kMinusY : kY;
      break;
    case AxisSign::minus_x:
      tilt_phase = kMinusX;
      first_phase = (target == Spin::I) ? kY : kMinusY;
      break;
  }
  const double second_phase = std::fmod(first_phase + 180.0, 360.0);

  PulseSequence seq;
  seq.label = std::string("selective90_") + (target == Spin::I ? "I" : "S");
  seq.events = {
      PulseEvent::pulse(45.0, tilt_phase),
      PulseEvent::pulse(90.0, first_phase),
      PulseEvent::wait(t.eps45),
      PulseEvent::pulse(90.0, second_phase),
  };
  return seq;
}

PulseSequence compile_selective_180(Spin target, Axis axis,
                                    const SpinSystem& sys) {
  const AxisSign sign = axis == Axis::x ? AxisSign::plus_x : AxisSign::plus_y;
  PulseSequence seq = compile_selective_90(target, sign, sys);
  append(seq, compile_selective_90(target, sign, sys));
  seq.label = std::string("selective180_") + (target == Spin::I ? "I" : "S");
  return seq;
}

PulseSequence compile_controlled_u0(const SpinSystem& sys) {
  const TimingSolution t = solve_timing(sys);
  // Spin echo over 1/(2j): the 180 pair refocuses the chemical shift except
  // for a net 270-degree differential precession left by eps270, while the
  // coupling runs for the whole window.  Net effect: diag(1,1,-1,1) up to a
  // global phase.
  PulseSequence seq;
  seq.label = "controlled_u0";
  seq.events = {
      PulseEvent::wait(t.delta),
      PulseEvent::pulse(180.0, kX),
      PulseEvent::wait(2.0 * t.delta + t.eps270),
      PulseEvent::pulse(180.0, kX),
      PulseEvent::wait(t.delta),
  };
  return seq;
}

PulseSequence compile_controlled_oracle(const OracleSpec& f,
                                        const SpinSystem& sys) {
  if (f.n != 1) {
    throw std::invalid_argument(
        "compile_controlled_oracle: only one-bit oracles have pulse programs");
  }
  PulseSequence seq;
  seq.label = "controlled_" + f.label;

  const bool m0 = f(0), m1 = f(1);
  if (m0 && m1) {  // identity
    return seq;
  }
  if (!m0 && m1) {  // diag(1,1,-1,1): same program as controlled-U0
    seq.events = compile_controlled_u0(sys).events;
    return seq;
  }
  if (m0 && !m1) {  // diag(1,1,1,-1): conjugate the f01 block by 180(S)
    append(seq, compile_selective_180(Spin::S, Axis::x, sys));
    append(seq, compile_controlled_u0(sys));
    append(seq, compile_selective_180(Spin::S, Axis::x, sys));
    return seq;
  }
  // f00 -> diag(1,1,-1,-1): a z-180 on the control spin alone, composed as
  // Rx(180)*Ry(180) = Rz(180) from two selective 180s.
  append(seq, compile_selective_180(Spin::I, Axis::y, sys));
  append(seq, compile_selective_180(Spin::I, Axis::x, sys));
  return seq;
}

PulseSequence compile_counting_sequence(const OracleSpec& f, int r,
                                        const SpinSystem& sys) {
  if (r < 0) throw NegativeRepetitions("repetition count must be >= 0");
  const PulseSequence oracle_block = compile_controlled_oracle(f, sys);
  const PulseSequence u0_block = compile_controlled_u0(sys);
  const PulseSequence undo_h = compile_selective_90(Spin::S, AxisSign::minus_y, sys);
  const PulseSequence redo_h = compile_selective_90(Spin::S, AxisSign::plus_y, sys);

  PulseSequence seq;
  seq.label = "counting_" + f.label + "_r" + std::to_string(r);
  seq.events.push_back(PulseEvent::pulse(90.0, kY));
  for (int i = 0; i < r; ++i) {
    append(seq, oracle_block);
    append(seq, undo_h);
    append(seq, u0_block);
    append(seq, redo_h);
  }
  seq.events.push_back(PulseEvent::pulse(90.0, kMinusY));
  return seq;
}

std::string format_sequence(const PulseSequence& seq) {
  std::string out;
  for (const auto& ev : seq.events) {
    switch (ev.kind) {
      case EventKind::hard_pulse:
        out += "PULSE " + format_real(ev.angle_deg) + "deg " +
               format_real(ev.phase_deg) + "deg\n";
        break;
      case EventKind::delay:
        out += "DELAY " + format_real(ev.duration_s) + "\n";
        break;
      case EventKind::gradient_crush:
        out += "CRUSH\n";
        break;
    }
  }
  return out;
}

}  // namespace spincount
