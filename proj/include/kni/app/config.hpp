#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace kni::app {

enum class Mode { Default, FixtureOnly, NegativeControl };
std::string to_string(Mode m);

struct Config {
  Mode mode = Mode::Default;
  double monodromy_tol = 1e-8;
  int series_order = 40;
  double extremal_tol = 1e-10;
  double switch_eps = 1e-12;
  std::complex<double> base{1.0, 0.0};
  /// Directory for trajectory CSV files; empty disables them.
  std::string csv_dir;

  /// Applies one "key = value" assignment; throws ParseError on an unknown
  /// key or a bad value.
  void set(std::string_view key, std::string_view value);
  /// Flat file: one "key = value" per line, '#' comments.
  static Config parse(std::string_view text);
  /// Applies "key=value" overrides in order.
  void apply_overrides(const std::vector<std::string>& overrides);
  std::string serialize() const;
};

}  // namespace kni::app
