#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "kni/errors.hpp"

namespace kni::numeric {

struct DopriOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_initial = 0.0;  // 0 picks a guess from the interval length
  double h_max = std::numeric_limits<double>::infinity();
  double h_min = 1e-14;    // relative to the interval length
  long max_steps = 2000000;
};

struct DopriStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and a PI-free classic step controller.
/// State is any Eigen dense type (real or complex); f(t, y) returns dy/dt.
/// observer(t, y) is called after every accepted step; returning false stops
/// the integration early. Returns the state at the final time reached.
template <typename State, typename F, typename Observer>
State dopri_integrate(F&& f, double t0, State y, double t1, const DopriOptions& opt, DopriStats* stats,
                      Observer&& observer, double* t_reached = nullptr) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  DopriStats local;
  DopriStats& st = stats ? *stats : local;
  const double span = t1 - t0;
  if (span == 0.0) {
    if (t_reached) *t_reached = t0;
    return y;
  }
  const double dir = span > 0 ? 1.0 : -1.0;
  const double length = std::abs(span);
  double h = opt.h_initial > 0 ? opt.h_initial : length * 1e-3;
  h = std::min({h, opt.h_max, length});
  const double h_floor = opt.h_min * std::max(1.0, length);

  double t = t0;
  State k1 = f(t, y);
  ++st.evaluations;
  for (long step = 0;; ++step) {
    if (step >= opt.max_steps) throw IntegrationError("integrator: step budget exhausted");
    const double remaining = std::abs(t1 - t);
    if (remaining <= 1e-15 * std::max(1.0, std::abs(t1))) break;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hs = dir * h;
    const State k2 = f(t + c2 * hs, (y + hs * (a21 * k1)).eval());
    const State k3 = f(t + c3 * hs, (y + hs * (a31 * k1 + a32 * k2)).eval());
    const State k4 = f(t + c4 * hs, (y + hs * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = f(t + c5 * hs, (y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 = f(t + hs, (y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    const State y_new = (y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
    const State k7 = f(t + hs, y_new);
    st.evaluations += 6;
    const State err = (hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();
    const auto scale = (opt.atol + opt.rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).eval();
    double en = (err.cwiseAbs().array() / scale).maxCoeff();
    if (!std::isfinite(en)) en = 1e10;
    if (en <= 1.0) {
      t = last ? t1 : t + hs;
      y = y_new;
      k1 = k7;
      ++st.accepted;
      if (!observer(t, static_cast<const State&>(y))) break;
      if (last) break;
    } else {
      ++st.rejected;
    }
    const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h = std::min(h * factor, opt.h_max);
    if (h < h_floor) throw IntegrationError("integrator: step size underflow at t = " + std::to_string(t));
  }
  if (t_reached) *t_reached = t;
  return y;
}

template <typename State, typename F>
State dopri_integrate(F&& f, double t0, State y, double t1, const DopriOptions& opt, DopriStats* stats = nullptr) {
  return dopri_integrate(std::forward<F>(f), t0, std::move(y), t1, opt, stats,
                         [](double, const State&) { return true; });
}

}  // namespace kni::numeric
