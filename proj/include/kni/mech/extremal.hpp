#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "kni/errors.hpp"

namespace kni::mech {

/// Real phase state (x1, x2, x3, x4, p1, p2, p3, p4).
using RealState = std::array<double, 8>;

/// The thrust direction (p3, p4)/|(p3, p4)| is undefined.
class SingularControl : public Error {
 public:
  using Error::Error;
};

struct FieldOptions {
  double eps_switch = 1e-12;
  /// Multiplies the control; 0 gives the uncontrolled Kepler problem.
  double thrust_scale = 1.0;
};

/// Hamiltonian field of the maximized Hamiltonian with u = (p3, p4)/|(p3, p4)|.
RealState pmp_field_real(const RealState& s, const FieldOptions& opt = {});

/// Maximized Hamiltonian (the norm term scaled by thrust_scale).
double hamiltonian_real(const RealState& s, double thrust_scale = 1.0);
/// |v|^2/2 - 1/|q|.
double kepler_energy(const RealState& s);
/// x3^2/2 + x1 - 1/x1 (meaningful on the collision line).
double line_integral(const RealState& s);

struct ExtremalOptions {
  FieldOptions field;
  double tol = 1e-10;
  int samples = 101;
  /// Stop when x1 drops below this value (0 disables).
  double stop_x1_below = 0.0;
};

struct Sample {
  double t;
  RealState state;
  double hamiltonian;
  double pv_norm;
};

struct ExtremalResult {
  std::vector<Sample> samples;
  double t_end = 0.0;
  double h_drift = 0.0;       // max |H(t) - H(0)| over accepted steps
  double energy_drift = 0.0;  // same for the Kepler energy
  double c_drift = 0.0;       // same for x3^2/2 + x1 - 1/x1
  /// Final-state discrepancy against a re-run with tolerance / 32.
  double validation_discrepancy = 0.0;
  std::vector<std::string> events;
  bool completed = false;
};

/// Adaptive Dormand-Prince integration of the extremal field on [0, t_f].
ExtremalResult integrate_extremal(const RealState& s0, double t_f, const ExtremalOptions& opt = {});

/// CSV with header t,x1,x2,x3,x4,p1,p2,p3,p4,H,pv_norm and 17 significant digits.
void write_trajectory_csv(std::ostream& os, const ExtremalResult& r);

}  // namespace kni::mech
