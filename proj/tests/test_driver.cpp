#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tesgo/problems.hpp"
#include "tesgo/solver.hpp"

using namespace tesgo;

TEST_CASE("sweep radius covers the whole box from the current point") {
  SECTION("center of a symmetric box") {
    BoxBounds box = BoxBounds::cube(2, -10.0, 10.0);
    CHECK(compute_tbar({0.0, 0.0}, box) == Catch::Approx(10.0));
  }
  SECTION("a corner sees the full edge length") {
    BoxBounds box = BoxBounds::cube(3, -5.0, 5.0);
    CHECK(compute_tbar({-5.0, -5.0, -5.0}, box) == Catch::Approx(10.0));
  }
  SECTION("asymmetric position takes the larger side per coordinate") {
    BoxBounds box = BoxBounds::cube(2, -10.0, 10.0);
    CHECK(compute_tbar({5.0, 5.0}, box) == Catch::Approx(15.0));
  }
  SECTION("dimension mismatch is rejected") {
    BoxBounds box = BoxBounds::cube(2, -1.0, 1.0);
    CHECK_THROWS_AS(compute_tbar({0.0}, box), std::invalid_argument);
  }
}

TEST_CASE("presets scale budgets with dimension") {
  TesgoConfig simple = preset("simple", 2);
  CHECK(simple.K == 10);
  CHECK(simple.m1 == 4);
  CHECK(simple.m2 == 2);
  CHECK(simple.delta == Catch::Approx(0.01));
  CHECK(simple.gamma == Catch::Approx(100.0));
  CHECK(simple.preset_name == "simple");

  TesgoConfig full = preset("full", 100);
  CHECK(full.K == 80);
  CHECK(full.m1 == 100);
  CHECK(full.m2 == 30);

  // in low dimension the budget caps at the spanning set and variants coincide
  TesgoConfig wide = preset("full_200", 5);
  CHECK(wide.m1 == 10);
  CHECK(wide.m2 == 10);
  CHECK(preset("full_150", 100).m1 == 150);

  CHECK_THROWS_WITH(preset("huge", 2), Catch::Matchers::ContainsSubstring("full_200"));
  CHECK_THROWS_AS(preset("full", 0), std::invalid_argument);
}

TEST_CASE("config validation") {
  TesgoConfig cfg = preset("simple", 2);
  CHECK_NOTHROW(cfg.validate());
  SECTION("nonpositive threshold") {
    cfg.delta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SECTION("empty direction budget") {
    cfg.m2 = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SECTION("no restarts allowed") {
    cfg.max_restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
}

TEST_CASE("solver escapes a chain of shallow minima in one dimension") {
  ProblemSpec spec = make_problem("EX1");
  SolveReport rep = tesgo_solve(spec.problem, {1.0}, preset("full", 1));
  CHECK(rep.f_best == Catch::Approx(-11.0).margin(1e-6));
  REQUIRE(!rep.trace.empty());
  // the starting basin bottoms out at f = -7 before the first escape
  CHECK(rep.trace.front().f == Catch::Approx(-7.0).margin(1e-6));
  for (std::size_t i = 1; i < rep.trace.size(); ++i)
    CHECK(rep.trace[i].f < rep.trace[i - 1].f);
  CHECK(rep.n_escapes_accepted >= 1);
  // one search per start plus one per attempted escape, accepted or not
  CHECK(rep.n_local_searches ==
        1 + rep.n_escapes_accepted + static_cast<int>(rep.rejected.size()));
  CHECK(rep.counters.n_f1 > 0);
  // the reported best never trails the last critical point
  CHECK(rep.f_best <= rep.final_critical.f_value + 1e-12);
}

TEST_CASE("solver leaves the spurious stationary origin") {
  ProblemSpec spec = make_problem("P16", 2);
  SolveReport rep = tesgo_solve(spec.problem, {0.0, 0.0}, preset("full", 2));
  CHECK(rep.f_best <= 1e-4);
  CHECK(rep.f_best >= -1e-9);
  CHECK(rep.n_escapes_accepted >= 1);
  // global minimizers have |x_i| = 5
  for (double xi : rep.x_best) CHECK(std::abs(std::abs(xi) - 5.0) < 1e-2);
}

TEST_CASE("solver reaches the known minimum of the planar kink") {
  ProblemSpec spec = make_problem("P19");
  SolveReport rep = tesgo_solve(spec.problem, spec.start, preset("full", 2));
  CHECK(rep.f_best == Catch::Approx(-0.25).margin(1e-3));
}

TEST_CASE("zero second component makes every sweep clean") {
  // f = ||x||^2 exactly, so the deviation is identically zero
  BoxBounds box = BoxBounds::cube(2, -4.0, 4.0);
  DcProblem p(
      "sphere", box, [](const Vector& x) { return squared_norm(x); },
      [](const Vector& x) { return scaled(x, 2.0); },
      [](const Vector&) { return 0.0; },
      [](const Vector& x) { return Vector(x.size(), 0.0); });
  TesgoConfig cfg = preset("full", 2);
  SolveReport rep = tesgo_solve(p, {3.0, -2.0}, cfg);
  CHECK(rep.status == SolveStatus::approx_global);
  CHECK(rep.f_best == Catch::Approx(0.0).margin(1e-8));
  CHECK(rep.n_local_searches == 1);
  CHECK(rep.n_deviation_checks == cfg.K);
  CHECK(rep.n_escapes_accepted == 0);
  CHECK(rep.rejected.empty());
  REQUIRE(rep.trace.size() == 1);
  CHECK(rep.trace[0].k == 0);
}

TEST_CASE("restart cap truncates the chain") {
  ProblemSpec spec = make_problem("EX1");
  TesgoConfig cfg = preset("full", 1);
  cfg.max_restarts = 1;
  SolveReport rep = tesgo_solve(spec.problem, {1.0}, cfg);
  CHECK(rep.status == SolveStatus::iteration_cap);
  CHECK(rep.n_escapes_accepted == 1);
  REQUIRE(rep.trace.size() == 2);
  CHECK(rep.trace[0].f > rep.trace[1].f);
}

TEST_CASE("identical configuration reproduces the run exactly") {
  ProblemSpec spec = make_problem("P15");
  TesgoConfig cfg = preset("full", 2);
  cfg.seed = 99;
  SolveReport a = tesgo_solve(spec.problem, spec.start, cfg);
  SolveReport b = tesgo_solve(spec.problem, spec.start, cfg);
  CHECK(a.x_best == b.x_best);
  CHECK(a.f_best == b.f_best);
  CHECK(a.status == b.status);
  CHECK(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].f == b.trace[i].f);
    CHECK(a.trace[i].t == b.trace[i].t);
  }
  CHECK(a.rejected.size() == b.rejected.size());
  CHECK(a.counters.n_f1 == b.counters.n_f1);
  CHECK(a.counters.n_g2 == b.counters.n_g2);
}

TEST_CASE("solve rejects malformed input") {
  ProblemSpec spec = make_problem("P15");
  CHECK_THROWS_AS(tesgo_solve(spec.problem, {0.0, 0.0, 0.0}, preset("full", 2)),
                  std::invalid_argument);
  TesgoConfig bad = preset("full", 2);
  bad.K = 0;
  CHECK_THROWS_AS(tesgo_solve(spec.problem, spec.start, bad), std::invalid_argument);
}
