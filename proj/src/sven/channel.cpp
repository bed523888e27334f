#include "sesem/sven/channel.hpp"

#include <cmath>

namespace sesem::sven {

namespace {
constexpr Scalar kBaseFlow = 8.245;    // m^3/s
constexpr Scalar kPeakFlow = 200.0;    // m^3/s
constexpr Scalar kRampEnd = 1200.0;    // s
constexpr Scalar kDecayEnd = 3600.0;   // s
constexpr Scalar kAreaFloor = 1e-6;    // m^2
}  // namespace

Scalar inflow(Scalar t) {
  if (t <= kRampEnd) return kBaseFlow + (kPeakFlow - kBaseFlow) * t / kRampEnd;
  if (t <= kDecayEnd)
    return kPeakFlow - (kPeakFlow - kBaseFlow) * (t - kRampEnd) / (kDecayEnd - kRampEnd);
  return kBaseFlow;
}

FlowState initial_state(const ChannelSpec& spec) {
  FlowState state;
  state.A = Array::Constant(spec.points(), 1.2 * spec.width);
  state.Q = Array::Constant(spec.points(), inflow(0.0));
  return state;
}

Array zhat(const Array& h, const ChannelSpec& spec) {
  const Index n = h.size();
  Array z_x(n);
  z_x.segment(1, n - 2) = (h.segment(2, n - 2) - h.segment(0, n - 2)) / (2.0 * spec.dx);
  z_x[0] = (h[1] - h[0]) / spec.dx;
  z_x[n - 1] = (h[n - 1] - h[n - 2]) / spec.dx;
  z_x += spec.bed_slope;
  return z_x / (1.0 + z_x.square());
}

Scalar cfl_number(const FlowState& state, const ChannelSpec& spec) {
  Array h = state.A / spec.width;
  Array V = state.Q / state.A;
  return ((V.abs() + (spec.gravity * h).sqrt()) * spec.dt / spec.dx).maxCoeff();
}

FlowState step_with_inflow(const FlowState& state, const Array& xi, const ChannelSpec& spec,
                           Scalar q_in, Scalar t_report) {
  const Index n = spec.n_x;
  if (state.A.size() != n + 1 || state.Q.size() != n + 1 || xi.size() != n + 1)
    throw std::invalid_argument("step: state/xi arrays must have n_x+1 entries");

  if (!state.A.allFinite() || !state.Q.allFinite()) {
    Index j = 0;
    while (j < n && std::isfinite(state.A[j]) && std::isfinite(state.Q[j])) ++j;
    throw SimulationError("non-finite state", t_report, j);
  }
  {
    Array h = state.A / spec.width;
    Array V = state.Q / state.A;
    Array cfl = (V.abs() + (spec.gravity * h).sqrt()) * spec.dt / spec.dx;
    Index j = 0;
    Scalar worst = cfl.maxCoeff(&j);
    if (!(worst < 1.0)) throw SimulationError("CFL violation", t_report, j);
  }

  const Array h = state.A / spec.width;
  const Array V = state.Q / state.A;
  const Array P = spec.width + 2.0 * h;
  const Array zh = zhat(h, spec);

  const Array& flux_a = state.Q;
  const Array flux_q = state.Q * V;
  const Array source_q = spec.gravity * state.A * zh + xi * P * V * V.abs() / 8.0;

  const Scalar c_adv = spec.dt / (2.0 * spec.dx);
  const Scalar c_dif = 0.5 * spec.theta;

  FlowState next;
  next.A.resize(n + 1);
  next.Q.resize(n + 1);
  next.A.segment(1, n - 1) =
      state.A.segment(1, n - 1) - c_adv * (flux_a.segment(2, n - 1) - flux_a.segment(0, n - 1)) +
      c_dif * (state.A.segment(2, n - 1) - 2.0 * state.A.segment(1, n - 1) +
               state.A.segment(0, n - 1));
  next.Q.segment(1, n - 1) =
      state.Q.segment(1, n - 1) - c_adv * (flux_q.segment(2, n - 1) - flux_q.segment(0, n - 1)) +
      c_dif * (state.Q.segment(2, n - 1) - 2.0 * state.Q.segment(1, n - 1) +
               state.Q.segment(0, n - 1)) -
      spec.dt * source_q.segment(1, n - 1);

  // Prescribed flow rate upstream; zero second derivative everywhere else.
  next.Q[0] = q_in;
  next.A[0] = 2.0 * next.A[1] - next.A[2];
  next.A[n] = 2.0 * next.A[n - 1] - next.A[n - 2];
  next.Q[n] = 2.0 * next.Q[n - 1] - next.Q[n - 2];
  next.A = next.A.max(kAreaFloor);

  if (!next.A.allFinite() || !next.Q.allFinite()) {
    Index j = 0;
    while (j < n && std::isfinite(next.A[j]) && std::isfinite(next.Q[j])) ++j;
    throw SimulationError("non-finite update", t_report, j);
  }
  return next;
}

FlowState step(const FlowState& state, const Array& xi, const ChannelSpec& spec, Scalar t) {
  return step_with_inflow(state, xi, spec, inflow(t + spec.dt), t);
}

Trajectory simulate(const Array& xi, const ChannelSpec& spec, Index steps) {
  Trajectory traj;
  traj.A.resize(steps, spec.points());
  traj.V.resize(steps, spec.points());
  FlowState state = initial_state(spec);
  for (Index i = 0; i < steps; ++i) {
    Scalar t = Scalar(i) * spec.dt;
    state = step(state, xi, spec, t);
    traj.A.row(i) = state.A.matrix().transpose();
    traj.V.row(i) = (state.Q / state.A).matrix().transpose();
  }
  return traj;
}

}  // namespace sesem::sven
