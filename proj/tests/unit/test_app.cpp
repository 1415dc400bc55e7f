#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kni/app/pipeline.hpp"
#include "kni/errors.hpp"

using namespace kni::app;

namespace {

// One run per mode, shared by the cases below.
const PipelineResult& result(Mode m) {
  static const PipelineResult runs[3] = {
      [] { return run_pipeline(Config{}); }(),
      [] {
        Config c;
        c.mode = Mode::FixtureOnly;
        return run_pipeline(c);
      }(),
      [] {
        Config c;
        c.mode = Mode::NegativeControl;
        return run_pipeline(c);
      }(),
  };
  return runs[static_cast<int>(m)];
}

}  // namespace

TEST_CASE("config file, overrides and rejects") {
  const auto c = Config::parse(
      "# tolerances\n"
      "mode = fixture-only\n"
      "monodromy.tol = 1e-9\n"
      "series.order = 24\n"
      "\n"
      "extremal.tol=1e-11\n"
      "switch.eps = 1e-10\n"
      "monodromy.base.im = 0.25\n");
  CHECK(c.mode == Mode::FixtureOnly);
  CHECK(c.monodromy_tol == 1e-9);
  CHECK(c.series_order == 24);
  CHECK(c.extremal_tol == 1e-11);
  CHECK(c.switch_eps == 1e-10);
  CHECK(c.base == std::complex<double>(1.0, 0.25));

  auto d = c;
  d.apply_overrides({"series.order=30", "mode=default"});
  CHECK(d.series_order == 30);
  CHECK(d.mode == Mode::Default);

  const auto again = Config::parse(c.serialize());
  CHECK(again.serialize() == c.serialize());

  CHECK_THROWS_AS(Config::parse("monodromy.tolerance = 1\n"), kni::ParseError);
  CHECK_THROWS_AS(Config::parse("series.order = forty\n"), kni::ParseError);
  CHECK_THROWS_AS(Config::parse("mode = fast\n"), kni::ParseError);
  CHECK_THROWS_AS(Config::parse("monodromy.tol\n"), kni::ParseError);
  CHECK_THROWS_AS(d.apply_overrides({"series.order"}), kni::ParseError);
  try {
    Config::parse("mode = default\nbogus = 1\n");
    FAIL("no throw");
  } catch (const kni::ParseError& e) {
    CHECK(e.position() == 15);
  }
}

TEST_CASE("report tree round trip and schema") {
  Report r;
  r.root.add("tool_version", kToolVersion);
  auto& m = r.root.add("mechanics");
  m.add("first_integral_bracket_zero", "true");
  auto& b = m.add("branches");
  b.add("count", "2");
  b.add("item").add("alpha", "-i√2");
  r.root.add("timings").add("total", "1 ms");
  const auto text = r.serialize();
  CHECK(text.rfind("kni-report 1\n", 0) == 0);
  const auto back = Report::parse(text);
  CHECK(back.serialize() == text);
  CHECK(back.root.get("mechanics/branches/count") == "2");
  CHECK(back.root.get("mechanics/branches/item/alpha") == "-i√2");
  CHECK(back.serialize_without_timings().find("timings") == std::string::npos);

  CHECK_THROWS_AS(Report::parse("kni-report 2\ntool_version: 1.0.0\n"), kni::ParseError);
  CHECK_THROWS_AS(Report::parse("kni-report 1\nsurprise: 1\n"), kni::ParseError);
  CHECK_THROWS_AS(Report::parse("kni-report 1\nmechanics:\n  surprise: 1\n"), kni::ParseError);
  CHECK_THROWS_AS(Report::parse("kni-report 1\nmechanics:\n    count: 1\n"), kni::ParseError);
  CHECK_THROWS_AS(Report::parse("kni-report 1\ntool_version 1\n"), kni::ParseError);
}

TEST_CASE("default pipeline") {
  const auto& r = result(Mode::Default);
  CHECK(r.exit_code == kVerdict);
  CHECK(r.verdict == "non-integrability criteria satisfied");
  CHECK(r.contradictions == 0);
  const auto& root = r.report.root;
  CHECK(root.find("degraded")->children.empty());
  CHECK(root.get("mechanics/first_integral_bracket_zero") == "true");
  CHECK(root.get("variational/infinitesimally_symplectic") == "true");
  CHECK(root.get("reduction/y0_annihilation/downstream") == "variant");
  CHECK(root.get("classify/fuchs/singular_support") == "{0, i, infinity}");
  CHECK(root.get("classify/verified_factor/class") == "SL2");
  CHECK(root.get("monodromy/all_accepted") == "true");
  CHECK(root.get("monodromy/group_tests/abelian") == "false");
  // Every report the pipeline writes is readable against the schema.
  const auto text = r.report.serialize();
  CHECK(Report::parse(text).serialize() == text);
}

TEST_CASE("determinism apart from timings") {
  const auto again = run_pipeline(Config{});
  CHECK(again.report.serialize_without_timings() == result(Mode::Default).report.serialize_without_timings());
}

TEST_CASE("fixture-only still yields classification and monodromy evidence") {
  const auto& r = result(Mode::FixtureOnly);
  const auto& root = r.report.root;
  CHECK(root.get("mechanics/skipped") == "fixture-only mode");
  CHECK(root.get("classify/verified_factor/class") == "SL2");
  CHECK(root.get("classify/displayed_parameters/class") == "SL2");
  CHECK(!root.get("monodromy/group_tests/max_commutator_defect").empty());
  CHECK(r.verdict == "non-integrability criteria satisfied");
  const auto text = r.report.serialize();
  CHECK(Report::parse(text).serialize() == text);
}

TEST_CASE("negative control") {
  const auto& r = result(Mode::NegativeControl);
  CHECK(r.verdict == "no obstruction found");
  CHECK(r.exit_code == kVerdict);
  CHECK(r.contradictions == 0);
  CHECK(r.report.root.get("monodromy/group_tests/abelian") == "true");
  const auto text = r.report.serialize();
  CHECK(Report::parse(text).serialize() == text);
}
