#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "helpers.hpp"
#include "relasym/verify.hpp"

using namespace relasym;

namespace {
std::string tmp_path(const std::string& leaf) {
  std::filesystem::create_directories(RELASYM_TEST_TMP);
  return (std::filesystem::path(RELASYM_TEST_TMP) / leaf).string();
}

RatioRow sample_row(int i) {
  RatioRow r;
  r.n = 10 + i;
  r.z = cplx(3.0, 0.25 * i);
  r.nu = i % 2;
  r.ratio = cplx(1.0 / (i + 1), -0.1 * i);
  r.limit = cplx(0.5, 0.0);
  r.abs_err = 1e-3 / (i + 1);
  r.est_rate = i == 0 ? std::numeric_limits<double>::quiet_NaN() : 0.01 * i;
  return r;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}
}  // namespace

TEST_SUITE("io_verify") {
  TEST_CASE("measure json round trip") {
    for (const auto& s : {th::legendre(), th::jacobi_atom(), th::chebyshev({{2.0, 0.5}, {-3.0, 1.0}})}) {
      auto back = measure_from_json(to_json(s));
      CHECK(back.same_as(s));
    }
    auto j = json::parse(R"({"weight": "chebyshev_first_kind", "mass_points": [[2.0, 0.5]]})");
    auto m = measure_from_json(j);
    CHECK(m.kind == WeightKind::chebyshev_first_kind);
    REQUIRE(m.mass_points.size() == 1);
    CHECK(m.mass_points[0].mass == 0.5);
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"weight": "hermite"})")), ConfigError);
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"weight": "legendre", "mass_points": [[0.2, 1.0]]})")),
                    ConfigError);
  }

  TEST_CASE("recurrence table round trip") {
    auto t = recurrence_for(th::jacobi_atom(), 30);
    auto back = table_from_json(json::parse(to_json(t).dump()));
    CHECK(back.nmax == 30);
    CHECK(back.a == t.a);
    CHECK(back.b == t.b);
    CHECK(back.tau == t.tau);
    CHECK(back.spec.same_as(t.spec));
  }

  TEST_CASE("modifier, sobolev and stieltjes round trips") {
    RationalModifier r;
    r.zeros = {{cplx(0, 2), 2}};
    r.poles = {{3.0, 1}};
    auto rb = modifier_from_json(to_json(r));
    REQUIRE(rb.zeros.size() == 1);
    CHECK(rb.zeros[0].point == cplx(0, 2));
    CHECK(rb.zeros[0].mult == 2);
    CHECK(rb.poles[0].point == cplx(3.0));

    auto s = SobolevSpec::from_diagonal({cplx(0.5, 1.5)}, {{1.0, 0.5}});
    auto sb = sobolev_from_json(to_json(s));
    CHECK(sb.is_diagonal());
    CHECK(sb.terms[0].gamma.isApprox(s.terms[0].gamma));
    CHECK(sb.terms[0].c == s.terms[0].c);

    StieltjesFn f;
    f.poles = {{cplx(0, 2), {1.0, cplx(0.5, 1.0)}}};
    auto fb = stieltjes_from_json(to_json(f));
    REQUIRE(fb.poles.size() == 1);
    CHECK(fb.poles[0].A[1] == cplx(0.5, 1.0));
    CHECK(complex_from_json(json(2.5), "x") == cplx(2.5));
    CHECK_THROWS_AS(complex_from_json(json::parse("[1, 2, 3]"), "x"), ConfigError);
  }

  TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    const double v = 1.0 / 3.0;
    CHECK(std::stod(format_double(v)) == v);
  }

  TEST_CASE("csv reports") {
    const std::string header = "n,z_re,z_im,nu,ratio_re,ratio_im,limit_re,limit_im,abs_err,est_rate";
    CHECK(rows_to_csv({}) == header + "\n");
    auto lines = split_lines(rows_to_csv({sample_row(0)}));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == header);
    CHECK(lines[1] == "10,3,0,0,1,-0,0.5,0,0.001,nan");
    const auto path = tmp_path("one_row.csv");
    emit_report({sample_row(0)}, "monic_ratio", ReportFormat::csv, path);
    CHECK(read_text_file(path) == rows_to_csv({sample_row(0)}));
  }

  TEST_CASE("json reports read back") {
    std::vector<RatioRow> rows;
    for (int i = 0; i < 100; ++i) rows.push_back(sample_row(i));
    const auto path = tmp_path("rows.json");
    emit_report(rows, "monic_ratio", ReportFormat::json, path);
    auto j = read_json_file(path);
    CHECK(j.at("schema_version") == kReportSchemaVersion);
    CHECK(j.at("law") == "monic_ratio");
    REQUIRE(j.at("rows").size() == 100);
    CHECK(j.at("rows")[0].at("est_rate").is_null());
    for (int i = 0; i < 100; ++i) {
      const auto& e = j.at("rows")[i];
      CHECK(e.at("n") == rows[i].n);
      CHECK(e.at("z_im").get<double>() == rows[i].z.imag());
      CHECK(e.at("ratio_re").get<double>() == rows[i].ratio.real());
      CHECK(e.at("abs_err").get<double>() == rows[i].abs_err);
    }
  }

  TEST_CASE("file errors") {
    CHECK_THROWS_AS(read_text_file(tmp_path("does_not_exist.json")), IoError);
    write_text_file(tmp_path("bad.json"), "{ not json");
    CHECK_THROWS_AS(read_json_file(tmp_path("bad.json")), ConfigError);
    write_text_file(tmp_path("nested/dir/file.txt"), "x");
    CHECK(read_text_file(tmp_path("nested/dir/file.txt")) == "x");
  }

  TEST_CASE("config parsing and validation") {
    auto c = config_from_json(json::parse(R"({"scenario": "sobolev_point_derivative", "n_ladder": [8, 16]})"));
    CHECK(c.target == TargetKind::sobolev);
    CHECK(c.n_ladder == std::vector<int>{8, 16});
    CHECK(c.name == "sobolev_point_derivative");
    auto back = config_from_json(to_json(c));
    CHECK(back.n_ladder == c.n_ladder);
    CHECK(back.target == c.target);
    CHECK(back.probe_points == c.probe_points);

    auto bad = [](const char* s) { return config_from_json(json::parse(s)); };
    CHECK_THROWS_AS(bad(R"({"unknown_key": 1})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"scenario": "no_such_scenario"})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"n_ladder": [20, 10]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"n_ladder": [10]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"jets": 9})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"probe_points": [0.5]})"), DomainError);
    CHECK_THROWS_AS(bad(R"({"grid": {"rect": [0, 1]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"target": "pade", "pade": {"poles": [{"c": 3, "A": [1]}]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"precision": "quad"})"), ConfigError);
  }

  TEST_CASE("bundled scenarios are valid") {
    auto names = bundled_scenario_names();
    CHECK(names.size() == 10);
    for (const auto& n : names) CHECK_NOTHROW(bundled_scenario(n).validate());
  }

  TEST_CASE("boundary grid") {
    auto g = boundary_grid({-2.6, 2.6, -1.2, 1.2}, 20);
    REQUIRE(g.size() == 20);
    for (cplx z : g) {
      const bool on_x = std::abs(std::abs(z.real()) - 2.6) < 1e-12;
      const bool on_y = std::abs(std::abs(z.imag()) - 1.2) < 1e-12;
      CHECK((on_x || on_y));
    }
  }

  TEST_CASE("ladder rows and rates") {
    auto c = bundled_scenario("base_legendre");
    c.n_ladder = {10, 20, 40};
    auto laws = run_ratio_ladder(c);
    REQUIRE(!laws.empty());
    for (const auto& l : laws) {
      CHECK(l.passed());
      REQUIRE(l.rows.size() == c.probe_points.size() * 2 * 3);
      for (size_t i = 0; i < l.rows.size(); i += 3) {
        CHECK(std::isnan(l.rows[i].est_rate));
        const auto& a = l.rows[i];
        const auto& b = l.rows[i + 1];
        CHECK(b.est_rate == doctest::Approx(std::log(a.abs_err / b.abs_err) / 10.0));
      }
    }
  }

  TEST_CASE("parallel runs are deterministic") {
    auto c = bundled_scenario("modified_rational");
    c.n_ladder = {10, 20, 40};
    c.jobs = 1;
    auto a = run_verify(c);
    c.jobs = 4;
    auto b = run_verify(c);
    REQUIRE(a.laws.size() == b.laws.size());
    for (size_t i = 0; i < a.laws.size(); ++i) {
      CHECK(rows_to_csv(a.laws[i].rows) == rows_to_csv(b.laws[i].rows));
      CHECK(rows_to_csv(a.laws[i].grid_rows) == rows_to_csv(b.laws[i].grid_rows));
    }
    b.config.jobs = a.config.jobs;
    CHECK(to_json(a).dump() == to_json(b).dump());
  }
}
