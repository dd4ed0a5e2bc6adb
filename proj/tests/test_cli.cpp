#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "relasym/io.hpp"

namespace fs = std::filesystem;
using namespace relasym;

namespace {
fs::path tmp(const std::string& leaf) {
  fs::path p = fs::path(RELASYM_TEST_TMP) / "cli" / leaf;
  fs::create_directories(p.parent_path());
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + RELASYM_CLI + "\" " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("recurrence subcommand writes the table") {
    const auto out = tmp("rec");
    fs::remove_all(out);
    const auto cfg = tmp("rec.json");
    write_text_file(cfg.string(), R"({"measure": {"weight": "chebyshev_first_kind"}, "nmax": 12})");
    REQUIRE(run("recurrence --config " + cfg.string() + " --out " + out.string()) == 0);
    auto j = read_json_file((out / "recurrence.json").string());
    auto t = table_from_json(j);
    CHECK(t.nmax == 12);
    CHECK(t.a[5] == doctest::Approx(0.5));
  }

  TEST_CASE("exit codes") {
    CHECK(run("scenarios") == 0);
    CHECK(run("recurrence --config " + tmp("missing.json").string() + " --out " + tmp("x").string()) == 2);
    const auto bad = tmp("bad.json");
    write_text_file(bad.string(), R"({"measure": {"weight": "legendre"}, "nmax": -4})");
    CHECK(run("recurrence --config " + bad.string() + " --out " + tmp("x").string()) == 3);
    const auto unknown = tmp("unknown.json");
    write_text_file(unknown.string(), R"({"scenario": "base_legendre", "bogus": true})");
    CHECK(run("verify --config " + unknown.string() + " --out " + tmp("x").string()) == 3);
    CHECK(run("verify --scenario base_legendre --jobs 0") == 3);
    CHECK(run("verify --scenario no_such_thing --out " + tmp("x").string()) == 3);
  }

  TEST_CASE("verify writes reports and passes on a bundled scenario") {
    const auto out = tmp("verify");
    fs::remove_all(out);
    const auto cfg = tmp("small.json");
    write_text_file(cfg.string(), R"({"scenario": "base_legendre", "n_ladder": [10, 20, 40]})");
    CHECK(run("verify --config " + cfg.string() + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "base_legendre_monic_ratio.csv"));
    CHECK(fs::exists(out / "base_legendre_monic_ratio.json"));
    CHECK(fs::exists(out / "base_legendre_summary.json"));
  }

  TEST_CASE("reruns are byte identical") {
    const auto a = tmp("det_a"), b = tmp("det_b");
    fs::remove_all(a);
    fs::remove_all(b);
    const auto cfg = tmp("det.json");
    write_text_file(cfg.string(), R"({"scenario": "modified_linear_complex", "n_ladder": [10, 20, 40]})");
    REQUIRE(run("verify --config " + cfg.string() + " --out " + a.string() + " --jobs 3") == 0);
    REQUIRE(run("verify --config " + cfg.string() + " --out " + b.string() + " --jobs 3") == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      CHECK(read_text_file(e.path().string()) == read_text_file((b / e.path().filename()).string()));
    }
    CHECK(files > 0);
  }
}
