#include "kni/mech/extremal.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include <Eigen/Core>

#include "kni/numeric/dopri.hpp"

namespace kni::mech {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;

Vec8 to_vec(const RealState& s) { return Eigen::Map<const Vec8>(s.data()); }

RealState to_state(const Vec8& v) {
  RealState s;
  Eigen::Map<Vec8>(s.data()) = v;
  return s;
}

double pv_norm(const RealState& s) { return std::hypot(s[6], s[7]); }

struct Monitor {
  double h0, e0, c0;
  double h = 0, e = 0, c = 0;
  double thrust;
  void observe(const RealState& s) {
    h = std::max(h, std::abs(hamiltonian_real(s, thrust) - h0));
    e = std::max(e, std::abs(kepler_energy(s) - e0));
    c = std::max(c, std::abs(line_integral(s) - c0));
  }
};

struct Run {
  std::vector<Sample> samples;
  RealState last{};
  double t_end = 0;
  bool completed = false;
  std::vector<std::string> events;
};

Run run(const RealState& s0, double t_f, const ExtremalOptions& opt, double tol, Monitor* mon) {
  Run out;
  numeric::DopriOptions dop;
  dop.rtol = tol;
  dop.atol = tol;
  const auto f = [&](double, const Vec8& y) { return to_vec(pmp_field_real(to_state(y), opt.field)); };
  const int n = std::max(opt.samples, 2);
  Vec8 y = to_vec(s0);
  double t = 0;
  bool stop = false;
  auto record = [&](double tt, const RealState& s) {
    out.samples.push_back({tt, s, hamiltonian_real(s, opt.field.thrust_scale), pv_norm(s)});
  };
  record(0.0, s0);
  try {
    for (int k = 1; k < n && !stop; ++k) {
      const double t_next = t_f * k / (n - 1);
      double reached = t;
      y = numeric::dopri_integrate(
          f, t, y, t_next, dop, nullptr,
          [&](double, const Vec8& yy) {
            const RealState s = to_state(yy);
            if (mon) mon->observe(s);
            if (opt.stop_x1_below > 0 && s[0] < opt.stop_x1_below) {
              stop = true;
              return false;
            }
            return true;
          },
          &reached);
      t = reached;
      record(t, to_state(y));
    }
    if (stop) out.events.push_back("x1 below " + std::to_string(opt.stop_x1_below) + " at t = " + std::to_string(t));
    out.completed = !stop;
  } catch (const SingularControl& e) {
    out.events.push_back(std::string("singular control: ") + e.what());
  } catch (const IntegrationError& e) {
    out.events.push_back(e.what());
  }
  out.last = to_state(y);
  out.t_end = t;
  return out;
}

}  // namespace

RealState pmp_field_real(const RealState& s, const FieldOptions& opt) {
  const auto [x1, x2, x3, x4, p1, p2, p3, p4] = s;
  const double pv = std::hypot(p3, p4);
  if (!(pv > opt.eps_switch)) throw SingularControl("|(p3, p4)| = " + std::to_string(pv) + " at or below the switching threshold");
  const double r = std::hypot(x1, x2);
  const double r3 = r * r * r, r5 = r3 * r * r;
  const double u1 = opt.thrust_scale * p3 / pv, u2 = opt.thrust_scale * p4 / pv;
  const double dot = p3 * x1 + p4 * x2;
  return {x3,
          x4,
          -x1 / r3 + u1,
          -x2 / r3 + u2,
          p3 / r3 - 3 * dot * x1 / r5,
          p4 / r3 - 3 * dot * x2 / r5,
          -p1,
          -p2};
}

double hamiltonian_real(const RealState& s, double thrust_scale) {
  const auto [x1, x2, x3, x4, p1, p2, p3, p4] = s;
  const double r = std::hypot(x1, x2);
  return p1 * x3 + p2 * x4 - (p3 * x1 + p4 * x2) / (r * r * r) + thrust_scale * std::hypot(p3, p4);
}

double kepler_energy(const RealState& s) {
  return 0.5 * (s[2] * s[2] + s[3] * s[3]) - 1.0 / std::hypot(s[0], s[1]);
}

double line_integral(const RealState& s) { return 0.5 * s[2] * s[2] + s[0] - 1.0 / s[0]; }

ExtremalResult integrate_extremal(const RealState& s0, double t_f, const ExtremalOptions& opt) {
  ExtremalResult res;
  Monitor mon{hamiltonian_real(s0, opt.field.thrust_scale), kepler_energy(s0), line_integral(s0), 0, 0, 0,
              opt.field.thrust_scale};
  Run main = run(s0, t_f, opt, opt.tol, &mon);
  res.samples = std::move(main.samples);
  res.t_end = main.t_end;
  res.h_drift = mon.h;
  res.energy_drift = mon.e;
  res.c_drift = mon.c;
  res.events = std::move(main.events);
  res.completed = main.completed;

  // Validation run over the same window with a tighter tolerance.
  ExtremalOptions fine = opt;
  fine.samples = 2;
  fine.stop_x1_below = 0.0;
  if (res.t_end > 0) {
    Run check = run(s0, res.t_end, fine, opt.tol / 32, nullptr);
    double d = 0;
    for (std::size_t k = 0; k < 8; ++k) d = std::max(d, std::abs(check.last[k] - main.last[k]));
    res.validation_discrepancy = d;
  }
  return res;
}

void write_trajectory_csv(std::ostream& os, const ExtremalResult& r) {
  os << "t,x1,x2,x3,x4,p1,p2,p3,p4,H,pv_norm\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (const auto& s : r.samples) {
    os << s.t;
    for (double v : s.state) os << ',' << v;
    os << ',' << s.hamiltonian << ',' << s.pv_norm << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace kni::mech
