// relasym: recurrence tables, asymptotic ladders and zero diagnostics from JSON configs.
//
// Exit codes: 0 pass, 1 assertion failed, 2 I/O, 3 config, 4 numerical.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>

#include "relasym/io.hpp"
#include "relasym/verify.hpp"

namespace {

using namespace relasym;

enum Exit { kPass = 0, kAssert = 1, kIo = 2, kConfig = 3, kNumerical = 4 };

struct Options {
  std::string config_path;
  std::string scenario;
  std::string out_dir = ".";
  std::optional<std::string> precision;
  std::optional<int> jobs;
};

json load_config(const Options& o) {
  if (!o.scenario.empty() && !o.config_path.empty()) throw ConfigError("give either --config or --scenario");
  if (!o.scenario.empty()) return json{{"scenario", o.scenario}};
  if (o.config_path.empty()) throw ConfigError("--config or --scenario is required");
  return read_json_file(o.config_path);
}

ExperimentConfig experiment(const Options& o) {
  json j = load_config(o);
  if (o.precision) j["precision"] = *o.precision;
  if (o.jobs) j["jobs"] = *o.jobs;
  return config_from_json(j);
}

int cmd_recurrence(const Options& o) {
  json j = load_config(o);
  BaseMeasureSpec spec;
  if (j.contains("measure"))
    spec = measure_from_json(j.at("measure"));
  else if (j.contains("scenario"))
    spec = bundled_scenario(j.at("scenario").get<std::string>()).measure;
  else
    throw ConfigError("recurrence config needs a 'measure' or a 'scenario'");
  const int nmax = j.value("nmax", 100);
  if (nmax < 1 || nmax > 2000) throw ConfigError("nmax must lie in 1..2000");
  RecurrenceTable t = recurrence_for(spec, nmax);
  const std::string path = (std::filesystem::path(o.out_dir) / "recurrence.json").string();
  write_text_file(path, to_json(t).dump(1) + "\n");
  std::cout << "wrote " << path << "\n";
  return kPass;
}

int cmd_verify(const Options& o) {
  ExperimentConfig cfg = experiment(o);
  VerifyReport rep = run_verify(cfg);
  for (const auto& f : write_verify_outputs(rep, o.out_dir)) std::cout << "wrote " << f << "\n";
  for (const auto& l : rep.laws) {
    std::cout << (l.passed() ? "PASS " : "FAIL ") << l.law << "\n";
    for (const auto& f : l.failures) std::cout << "  " << f << "\n";
  }
  for (const auto& z : rep.zeros) {
    std::cout << (z.passed() ? "PASS " : "FAIL ") << "zeros n=" << z.n << "\n";
    for (const auto& f : z.failures) std::cout << "  " << f << "\n";
  }
  if (rep.numerical_failure) {
    std::cout << "numerical failure: some ladder degrees could not be solved (see pre_asymptotic rows)\n";
    return kNumerical;
  }
  return rep.passed() ? kPass : kAssert;
}

int cmd_zeros(const Options& o) {
  ExperimentConfig cfg = experiment(o);
  auto reports = run_zero_attraction(cfg);
  json arr = json::array();
  bool ok = true;
  for (const auto& z : reports) {
    json e = to_json(z.report);
    e["n"] = z.n;
    e["expected_counts"] = z.expected;
    e["expected_support"] = z.expected_support;
    e["passed"] = z.passed();
    arr.push_back(e);
    ok = ok && z.passed();
    std::cout << (z.passed() ? "PASS " : "FAIL ") << "zeros n=" << z.n << "\n";
    for (const auto& f : z.failures) std::cout << "  " << f << "\n";
  }
  json doc{{"schema_version", kReportSchemaVersion}, {"scenario", cfg.name}, {"reports", arr}};
  const std::string path = (std::filesystem::path(o.out_dir) / (cfg.name + "_zeros.json")).string();
  write_text_file(path, doc.dump(1) + "\n");
  std::cout << "wrote " << path << "\n";
  return ok ? kPass : kAssert;
}

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative asymptotics of orthogonal polynomials: experiments and diagnostics"};
  app.require_subcommand(1);
  Options opt;
  std::string precision;
  int jobs = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--scenario", opt.scenario, "bundled scenario name");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  };
  auto* rec = app.add_subcommand("recurrence", "write the recurrence table of a measure");
  auto* ver = app.add_subcommand("verify", "run ratio ladders and zero checks; exit 0 iff all assertions hold");
  auto* zer = app.add_subcommand("zeros", "zero-attraction report");
  auto* lst = app.add_subcommand("scenarios", "list bundled scenarios");
  for (auto* s : {rec, ver, zer}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }
  if (!precision.empty()) opt.precision = precision;
  if (jobs > 0) opt.jobs = jobs;

  if (lst->parsed()) {
    for (const auto& n : bundled_scenario_names()) std::cout << n << "\n";
    return kPass;
  }
  if (rec->parsed()) return guarded([&] { return cmd_recurrence(opt); });
  if (ver->parsed()) return guarded([&] { return cmd_verify(opt); });
  return guarded([&] { return cmd_zeros(opt); });
}
