#pragma once

#include <string>

namespace kni::exact {

/// Which derivation acts on rational functions of the chart variable.
enum class ChartKind {
  Plain,     ///< d/dv
  HalfInvW,  ///< (1/(2w)) d/dw, i.e. d/dx1 with x1 = w^2
};

struct Chart {
  ChartKind kind = ChartKind::Plain;
  std::string var = "x1";

  static Chart x1() { return {ChartKind::Plain, "x1"}; }
  static Chart w() { return {ChartKind::HalfInvW, "w"}; }
  static Chart plain(std::string name) { return {ChartKind::Plain, std::move(name)}; }

  /// Serialization tag: "x1", "w", or "plain:<name>".
  std::string tag() const;
  static Chart from_tag(const std::string& tag);

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.kind == b.kind && a.var == b.var;
  }
};

}  // namespace kni::exact
