#include "kni/app/config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "kni/errors.hpp"

namespace kni::app {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ParseError("config: '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'", 0);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Default: return "default";
    case Mode::FixtureOnly: return "fixture-only";
    case Mode::NegativeControl: return "negative-control";
  }
  return "?";
}

void Config::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "mode") {
    if (value == "default") mode = Mode::Default;
    else if (value == "fixture-only") mode = Mode::FixtureOnly;
    else if (value == "negative-control") mode = Mode::NegativeControl;
    else throw ParseError("config: unknown mode '" + std::string(value) + "'", 0);
  } else if (key == "monodromy.tol") {
    monodromy_tol = to_double(key, value);
    if (!(monodromy_tol > 0)) throw ParseError("config: monodromy.tol must be positive", 0);
  } else if (key == "series.order") {
    const double v = to_double(key, value);
    if (v < 1 || v != static_cast<int>(v)) throw ParseError("config: series.order must be a positive integer", 0);
    series_order = static_cast<int>(v);
  } else if (key == "extremal.tol") {
    extremal_tol = to_double(key, value);
    if (!(extremal_tol > 0)) throw ParseError("config: extremal.tol must be positive", 0);
  } else if (key == "switch.eps") {
    switch_eps = to_double(key, value);
  } else if (key == "monodromy.base.re") {
    base.real(to_double(key, value));
  } else if (key == "monodromy.base.im") {
    base.imag(to_double(key, value));
  } else if (key == "csv.dir") {
    csv_dir = std::string(value);
  } else {
    throw ParseError("config: unknown key '" + std::string(key) + "'", 0);
  }
}

Config Config::parse(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected 'key = value'", at);
    try {
      c.set(l.substr(0, eq), l.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), at);
    }
  }
  return c;
}

void Config::apply_overrides(const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ParseError("override '" + o + "': expected key=value", 0);
    set(std::string_view(o).substr(0, eq), std::string_view(o).substr(eq + 1));
  }
}

std::string Config::serialize() const {
  std::string s;
  s += "mode = " + to_string(mode) + "\n";
  s += "monodromy.tol = " + fmt(monodromy_tol) + "\n";
  s += "series.order = " + std::to_string(series_order) + "\n";
  s += "extremal.tol = " + fmt(extremal_tol) + "\n";
  s += "switch.eps = " + fmt(switch_eps) + "\n";
  s += "monodromy.base.re = " + fmt(base.real()) + "\n";
  s += "monodromy.base.im = " + fmt(base.imag()) + "\n";
  if (!csv_dir.empty()) s += "csv.dir = " + csv_dir + "\n";
  return s;
}

}  // namespace kni::app
