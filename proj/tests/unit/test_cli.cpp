#include <cmath>
#include <functional>

#include "doctest.h"
#include "pertpade/pipeline.hpp"

using namespace pertpade;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  } catch (const StageError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Domain;
}

JobConfig pt() {
  JobConfig c;
  c.potential = "poschl-teller";
  c.params = {{"beta", 20.0}};
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config text") {
  auto c = JobConfig::from_text(
      "# a job\n"
      "potential = hulthen\n"
      "params = V0=2, r0=3   # the worked example\n"
      "\n"
      "levels = 1:3\n"
      "pade = 6/6\n"
      "order = 12\n"
      "aux = fit:linear:0:20\n");
  CHECK(c.potential == "hulthen");
  CHECK(c.params.at("V0") == 2.0);
  CHECK(c.params.at("r0") == 3.0);
  CHECK(c.levels == std::vector<int>{1, 2, 3});
  CHECK(c.pade == std::pair{6, 6});
  CHECK(c.order == 12);
  CHECK(c.aux.scheme == "fit");
  CHECK(c.aux.family == "linear");
  CHECK(c.aux.values == std::vector<double>{0.0, 20.0});
  CHECK(c.dim == 48);
  CHECK(c.accuracy == 1e-10);

  // flags are applied after the file
  c.set("order", "16");
  c.set("pade", "8 8");
  CHECK(c.order == 16);
  CHECK(c.pade == std::pair{8, 8});
}

TEST_CASE("config errors") {
  CHECK(kind_of([] { JobConfig::from_text("colour = red\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { JobConfig::from_text("order\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { JobConfig::from_text("order = 1.5\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { JobConfig::from_text("levels = 3:1\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { AuxSpec::parse("taylor"); }) == ErrorKind::Config);
  CHECK(kind_of([] { AuxSpec::parse("fit:cubic:0:1"); }) == ErrorKind::Config);
  CHECK(kind_of([] { AuxSpec::parse("fit:linear:5:1"); }) == ErrorKind::Config);
  CHECK(kind_of([] { AuxSpec::parse("magic"); }) == ErrorKind::Config);
  CHECK(kind_of([] { JobConfig::from_file("/nonexistent/job.cfg"); }) == ErrorKind::Config);
  JobConfig c = pt();
  c.pade = std::pair{9, 9};
  CHECK(kind_of([&] { solve(c); }) == ErrorKind::Config);
}

TEST_CASE("aux spec round trip") {
  for (const char* s : {"taylor:-420", "taylor-x:0.55", "laurent", "fit:quadratic:-3:3", "explicit:oscillator:1:0.5:-2",
                        "explicit:coulomb:6", "explicit:linear:0.3:1.1", "identity"}) {
    CHECK(AuxSpec::parse(s).str() == s);
  }
}

TEST_CASE("demo-sqrt rows") {
  const auto rows = demo_sqrt();
  REQUIRE(rows.size() == 201);
  CHECK(rows[0].exact == 1.0);
  CHECK(rows[0].polynomial == 1.0);
  CHECK(rows[0].rational == 1.0);
  CHECK(rows[60].x == doctest::Approx(3.0));
  CHECK(rows[60].exact == doctest::Approx(2.0));
  CHECK(std::fabs(rows[60].rational - 121.0 / 61.0) < 1e-14);
  CHECK(std::fabs(rows[10].polynomial - std::sqrt(1.5)) < 1e-3);
  CHECK(rows.back().x == doctest::Approx(10.0));
}

TEST_CASE("solve: Poschl-Teller reference column") {
  JobConfig c = pt();
  c.levels = {0, 1, 2};
  const auto r = solve(c);
  REQUIRE(r.levels.size() == 3);
  for (const auto& l : r.levels) {
    CHECK(l.e_reference == -(20.0 - l.n) * (20.0 - l.n));
    CHECK(l.reference_source == "exact");
    CHECK(l.abs_err == std::fabs(l.e_pade - l.e_reference));
  }
}

TEST_CASE("solve: identity split leaves E_zeroth") {
  for (const char* name : {"poschl-teller", "hulthen", "power", "flat-bottom", "harmonic", "coulomb", "linear"}) {
    JobConfig c;
    c.potential = name;
    c.aux = AuxSpec::parse("identity");
    c.dim = 16;
    const auto r = solve(c);
    for (const auto& l : r.levels) {
      CHECK(l.e_pade == l.e_zeroth);
      CHECK(l.e_poly == l.e_zeroth);
      CHECK(l.ladder_spread == 0.0);
    }
  }
}

TEST_CASE("solve: Hulthen attempts the four bound levels") {
  JobConfig c;
  c.potential = "hulthen";
  const auto r = solve(c);
  REQUIRE(r.levels.size() == 4);
  CHECK(r.levels.front().n == 1);
  CHECK(r.levels.back().n == 4);
  CHECK(r.levels[0].e_reference == doctest::Approx(-8.02777777777778).epsilon(1e-13));
  c.levels = {5};
  CHECK(kind_of([&] { solve(c); }) == ErrorKind::Config);
}

TEST_CASE("solve: failures name the stage") {
  JobConfig c;
  c.potential = "poschl-teller";
  c.aux = AuxSpec::parse("taylor:-1000");
  try {
    solve(c);
    FAIL("expected a failure");
  } catch (const StageError& e) {
    CHECK(e.stage() == "potentials");
    CHECK(e.kind() == ErrorKind::RootNotFound);
  }
}

TEST_CASE("single-point sweep equals solve") {
  JobConfig c = pt();
  c.levels = {0, 1};
  c.aux = AuxSpec::parse("taylor-x:0.3");
  const auto direct = solve(c);
  c.sweep = {c.aux};
  const auto points = sweep(c);
  REQUIRE(points.size() == 1);
  REQUIRE(points[0].result);
  CHECK(points[0].key == "taylor-x:0.3");
  for (std::size_t i = 0; i < 2; ++i) CHECK(points[0].result->levels[i].e_pade == direct.levels[i].e_pade);
}

TEST_CASE("sweep keeps going past failures") {
  JobConfig c = pt();
  c.levels = {0};
  c.sweep = {AuxSpec::parse("taylor:-1000"), AuxSpec::parse("taylor-x:0")};
  const auto points = sweep(c);
  REQUIRE(points.size() == 2);
  CHECK_FALSE(points[0].result);
  CHECK(points[0].failure.find("RootNotFound") != std::string::npos);
  CHECK(points[1].result);
  const auto csv = csv_sweep(c, points);
  CHECK(csv.find("# failed taylor:-1000") != std::string::npos);
}

TEST_CASE("wavefunctions") {
  JobConfig c = pt();
  c.x_lo = -4.0;
  c.x_hi = 4.0;
  c.x_npts = 801;  // x = 0 is a node

  c.wf_level = 0;
  CHECK(wavefunction(c).overlap >= 0.999);

  c.wf_level = 1;
  const auto w1 = wavefunction(c);
  CHECK(std::fabs(w1.pade[400]) < 1e-8);
  for (int i = 0; i < 400; i += 37) CHECK(w1.pade[i] == doctest::Approx(-w1.pade[800 - i]).epsilon(1e-8));

  // identity split: the continued state is psi_0 of the basis
  c.aux = AuxSpec::parse("identity");
  c.wf_level = 0;
  const auto w0 = wavefunction(c);
  const auto s = make_split(make_potential(c), c.aux, 1.0);
  const double scale = w0.pade[400] / s.basis.eigenfunction(0, 0.0);
  for (int i = 0; i <= 800; i += 50) {
    CHECK(w0.pade[i] == doctest::Approx(scale * s.basis.eigenfunction(0, w0.x[i])).epsilon(1e-12));
  }
}

TEST_CASE("csv format") {
  JobConfig c = pt();
  c.levels = {0};
  const auto csv = csv_solve(solve(c));
  CHECK(csv.rfind("# pertpade ", 0) == 0);
  CHECK(csv.find("\nn,E_zeroth,E_poly,E_pade,ladder_spread,pole_warning_count,E_reference,abs_err,rel_err\n") !=
        std::string::npos);
  CHECK(csv.find("dim=48") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
}

}  // TEST_SUITE
