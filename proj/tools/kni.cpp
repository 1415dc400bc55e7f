#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kni/app/pipeline.hpp"
#include "kni/classify/classify.hpp"
#include "kni/mech/branch.hpp"
#include "kni/mech/extremal.hpp"
#include "kni/mono/monodromy.hpp"
#include "kni/ops/fixtures.hpp"
#include "kni/ops/local.hpp"
#include "kni/var/varsystem.hpp"

using namespace kni;

namespace {

struct InputFile {
  std::string path;
  std::string text;
};

InputFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {path, ss.str()};
}

// "path:line:col: message" for a parse error at a byte offset.
std::string located(const InputFile& f, const ParseError& e) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < std::min(e.position(), f.text.size()); ++k) {
    if (f.text[k] == '\n') ++line, col = 1;
    else ++col;
  }
  return f.path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what();
}

template <typename T, typename P>
T parse_input(const InputFile& f, P&& parser) {
  try {
    return parser(f.text);
  } catch (const ParseError& e) {
    throw Error(located(f, e));
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw Error("cannot write " + out_path);
  os << text;
}

std::string exps(const std::vector<ops::Exponent>& es) {
  std::string s;
  for (const auto& e : es) {
    if (!s.empty()) s += ", ";
    if (e.exact) s += e.value.pretty();
    else s += "~" + std::to_string(e.numeric.real()) + "+" + std::to_string(e.numeric.imag()) + "i";
    if (e.multiplicity > 1) s += " (x" + std::to_string(e.multiplicity) + ")";
  }
  return "[" + s + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-integrability verification pipeline for the minimum-time Kepler problem"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the full pipeline and write the report");
  std::string config_path, report_path;
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "Flat key = value configuration file");
  run->add_option("--set", overrides, "Override, key=value (repeatable)");
  run->add_option("--report", report_path, "Report file (stdout if omitted)");

  // branches
  auto* branches = app.add_subcommand("branches", "Solve the collision ansatz and list the branches");

  // nve
  auto* nve = app.add_subcommand("nve", "Write the normal variational block along a branch");
  int nve_branch = 0;
  std::string nve_time = "x1", nve_out;
  bool nve_full = false;
  nve->add_option("--branch", nve_branch, "Branch index");
  nve->add_option("--time", nve_time, "t or x1")->check(CLI::IsMember({"t", "x1"}));
  nve->add_flag("--full", nve_full, "Write the 8x8 matrix instead of the normal block");
  nve->add_option("--output", nve_out, "Output file (stdout if omitted)");

  // cyclic
  auto* cyc = app.add_subcommand("cyclic", "Cyclic-vector reduction of a system file");
  std::string cyc_in, cyc_out;
  int cyc_coord = 1;
  cyc->add_option("--input", cyc_in, "System file")->required();
  cyc->add_option("--coord", cyc_coord, "Coordinate, 1-based")->required();
  cyc->add_option("--output", cyc_out, "Operator file (stdout if omitted)");

  // classify
  auto* cls = app.add_subcommand("classify", "Kimura classification of 2F1(a, b; c) or a Fuchs table of an operator");
  std::string ca, cb, cc, cls_op;
  cls->add_option("--a", ca, "Parameter a");
  cls->add_option("--b", cb, "Parameter b");
  cls->add_option("--c", cc, "Parameter c");
  cls->add_option("--op", cls_op, "Operator file for the Fuchs test");

  // monodromy
  auto* mon = app.add_subcommand("monodromy", "Numeric monodromy of an operator file");
  std::string mon_op;
  double mon_tol = 1e-8;
  std::vector<double> mon_base = {1.0, 0.0};
  mon->add_option("--op", mon_op, "Operator file")->required();
  mon->add_option("--tol", mon_tol, "Transport tolerance");
  mon->add_option("--base", mon_base, "Base point: re im")->expected(2);

  // extremal
  auto* ext = app.add_subcommand("extremal", "Integrate an extremal and write its trajectory CSV");
  std::vector<double> state;
  double tf = 10, etol = 1e-10, eps = 1e-12, thrust = 1, stop_below = 0;
  int samples = 101;
  std::string csv_out;
  ext->add_option("--state", state, "x1 x2 x3 x4 p1 p2 p3 p4")->expected(8)->required();
  ext->add_option("--tf", tf, "Final time");
  ext->add_option("--tol", etol, "Integrator tolerance");
  ext->add_option("--eps", eps, "Switching threshold on |(p3, p4)|");
  ext->add_option("--thrust", thrust, "Control scale (0: uncontrolled Kepler)");
  ext->add_option("--stop-x1-below", stop_below, "Stop when x1 drops below this value");
  ext->add_option("--samples", samples, "Number of CSV samples");
  ext->add_option("--csv", csv_out, "CSV file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      app::Config cfg;
      if (!config_path.empty()) {
        const auto f = read_file(config_path);
        cfg = parse_input<app::Config>(f, app::Config::parse);
      }
      cfg.apply_overrides(overrides);
      const auto r = app::run_pipeline(cfg);
      emit(report_path, r.report.serialize());
      std::cerr << "verdict: " << (r.verdict.empty() ? "none" : r.verdict) << " (contradictions: " << r.contradictions
                << ")\n";
      return r.exit_code;
    }
    if (*branches) {
      const auto sol = mech::solve_collision_ansatz();
      std::cout << "gauge x3 = sqrt2 p3: " << (sol.gauge_satisfied ? "yes" : "no") << "\n";
      for (std::size_t k = 0; k < sol.branches.size(); ++k) {
        const auto& b = sol.branches[k];
        std::cout << k << ": " << b.describe() << "\n"
                  << "   field residuals zero: " << (b.solves_field() ? "yes" : "no")
                  << ", C = " << b.first_integral().pretty("w") << ", H = " << b.hamiltonian().pretty("w") << "\n";
      }
      const auto p = mech::printed_branch();
      const auto res = p.field_residuals();
      std::cout << "displayed constants: " << p.describe() << "\n";
      const char* names[] = {"x1", "x3", "p1", "p3"};
      for (std::size_t k = 0; k < 4; ++k) std::cout << "   residual " << names[k] << ": " << res[k].pretty("w") << "\n";
      return 0;
    }
    if (*nve) {
      const auto sol = mech::solve_collision_ansatz();
      if (nve_branch < 0 || nve_branch >= static_cast<int>(sol.branches.size())) throw Error("branch index out of range");
      const auto a = var::variational_matrix(sol.branches[static_cast<std::size_t>(nve_branch)],
                                             nve_time == "t" ? var::TimeScale::t : var::TimeScale::x1);
      emit(nve_out, nve_full ? a.serialize() : var::extract_normal_block(a).serialize());
      return 0;
    }
    if (*cyc) {
      const auto f = read_file(cyc_in);
      const auto sys = parse_input<var::VarSystem>(f, var::VarSystem::parse);
      if (cyc_coord < 1 || cyc_coord > sys.n()) throw Error("--coord must lie in 1.." + std::to_string(sys.n()));
      const auto c = ops::cyclic_reduce(sys, cyc_coord - 1);
      ops::DiffOp l = c.op;
      if (l.chart() == exact::Chart::w() && l.is_even()) l = ops::to_x1_chart(l);
      emit(cyc_out, l.serialize());
      std::cerr << "order " << l.order() << (c.order_dropped ? " (dropped)" : "") << ", chart " << l.chart().tag() << "\n";
      if (l.chart() == exact::Chart::x1()) {
        for (auto reading : {ops::LastDenominator::AsPrinted, ops::LastDenominator::ReadWithI}) {
          const auto ref = ops::printed_order4_operator(reading);
          std::cerr << (reading == ops::LastDenominator::AsPrinted ? "displayed operator: " : "variant operator: ")
                    << (ref == l ? "equal" : "different") << "\n";
        }
        std::cerr << "annihilates y0: " << (ops::annihilates_hyperexponential(l, ops::y0_log_derivative()) ? "yes" : "no")
                  << "\n";
      }
      return 0;
    }
    if (*cls) {
      if (!cls_op.empty()) {
        const auto f = read_file(cls_op);
        const auto l = parse_input<ops::DiffOp>(f, ops::DiffOp::parse);
        const auto rep = classify::fuchs_test(l);
        for (const auto& p : rep.points)
          std::cout << p.point.pretty() << ": " << (p.regular ? "regular" : "irregular") << " " << exps(p.exponents) << "\n";
        std::cout << "fuchsian: " << (rep.fuchsian() ? "yes" : "no") << "\n";
        return 0;
      }
      if (ca.empty() || cb.empty() || cc.empty()) throw Error("classify needs --a, --b and --c, or --op");
      auto value = [](const std::string& s) {
        try {
          return exact::CycNum::parse_expression(s);
        } catch (const ParseError& e) {
          throw Error("'" + s + "' at " + std::to_string(e.position()) + ": " + e.what());
        }
      };
      const classify::HGParams p{value(ca), value(cb), value(cc)};
      const auto d = classify::exponent_differences(p);
      const auto g = classify::kimura_classify(p);
      std::cout << classify::to_string(g.tag) << "\n"
                << "exponent differences: (" << d[0].pretty() << ", " << d[1].pretty() << ", " << d[2].pretty() << ")\n"
                << "witness: " << g.witness << "\n";
      return 0;
    }
    if (*mon) {
      const auto f = read_file(mon_op);
      const auto l = parse_input<ops::DiffOp>(f, ops::DiffOp::parse);
      int unlocated = 0;
      std::vector<mono::cd> sing;
      for (const auto& s : ops::finite_singularities(l, &unlocated)) sing.push_back(s.to_complex());
      if (unlocated) throw Error("operator has singular points outside the field");
      const mono::cd base(mon_base[0], mon_base[1]);
      const auto sys = mono::LinearSystem::companion(l);
      const auto set = mono::loop_set(sing, base);
      const auto mats = mono::continue_all(sys, set.generators, mon_tol);
      std::vector<mono::CMat> ms;
      for (const auto& m : mats) {
        std::cout << m.loop << "\n  matrix: " << mono::format_matrix(m.m) << "\n  residual: " << m.residual
                  << (m.accepted ? "" : "  REJECTED " + m.diagnostics) << "\n";
        ms.push_back(m.m);
      }
      const auto g = mono::group_tests(ms);
      std::cout << "max commutator defect: " << g.max_defect << "\nabelian: " << (g.abelian ? "yes" : "no")
                << "\ncommon eigenvector: " << (g.common_eigenvector ? "yes" : "no") << "\n";
      return std::all_of(mats.begin(), mats.end(), [](const auto& m) { return m.accepted; }) ? 0 : 3;
    }
    if (*ext) {
      mech::RealState s0;
      std::copy(state.begin(), state.end(), s0.begin());
      mech::ExtremalOptions opt;
      opt.tol = etol;
      opt.samples = samples;
      opt.stop_x1_below = stop_below;
      opt.field.eps_switch = eps;
      opt.field.thrust_scale = thrust;
      const auto r = mech::integrate_extremal(s0, tf, opt);
      std::ostringstream csv;
      mech::write_trajectory_csv(csv, r);
      emit(csv_out, csv.str());
      std::cerr << "t_end " << r.t_end << (r.completed ? "" : " (stopped)") << "\nH drift " << r.h_drift
                << "\nenergy drift " << r.energy_drift << "\nline integral drift " << r.c_drift
                << "\nvalidation discrepancy " << r.validation_discrepancy << "\n";
      for (const auto& e : r.events) std::cerr << "event: " << e << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kStageFailure;
  }
  return 0;
}
