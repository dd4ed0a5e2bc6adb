#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "relasym/io.hpp"
#include "relasym/modifier.hpp"
#include "relasym/pade.hpp"
#include "relasym/sobolev.hpp"
#include "relasym/zeros.hpp"

namespace relasym {

enum class TargetKind { base_only, modified, sobolev, pade };
enum class Precision { double_precision, extended };

std::string to_string(TargetKind k);
std::string to_string(Precision p);
Precision precision_from_string(const std::string& s);

struct ExperimentConfig {
  std::string name = "custom";
  BaseMeasureSpec measure;
  TargetKind target = TargetKind::base_only;
  RationalModifier modifier;  // target == modified
  SobolevSpec sobolev;        // target == sobolev
  StieltjesFn pade;           // target == pade; pade.base == measure

  std::vector<cplx> probe_points{3.0, -2.5, cplx(0, 2), cplx(1.5, 1.5)};
  std::vector<int> n_ladder{10, 20, 40, 80};
  int jets = 1;  // derivative orders 0..jets

  // Uniform check: boundary of [x0,x1] x [y0,y1] sampled at grid_points points.
  std::array<double, 4> grid_rect{-2.6, 2.6, -1.2, 1.2};
  int grid_points = 20;

  std::vector<int> zero_degrees{60};
  std::optional<double> zero_radius;
  double support_band = 0.05;

  bool write_csv = true;
  bool write_json = true;
  Precision precision = Precision::double_precision;
  int jobs = 1;

  /// Throws ConfigError (DomainError for points on the cut).
  void validate() const;
  /// Points that attract zeros, with the expected counts.
  std::vector<std::pair<cplx, int>> attraction_centers() const;
};

std::vector<std::string> bundled_scenario_names();
ExperimentConfig bundled_scenario(const std::string& name);

/// A JSON config; {"scenario": name} starts from a bundled scenario and the
/// remaining fields override it.
ExperimentConfig config_from_json(const json& j);
json to_json(const ExperimentConfig& cfg);

struct RatioRow {
  int n = 0;
  cplx z;
  int nu = 0;
  cplx ratio;
  cplx limit;
  double abs_err = 0.0;
  double est_rate = 0.0;  // NaN on the first rung
  bool pre_asymptotic = false;
};

struct LawResult {
  std::string law;
  std::vector<RatioRow> rows;       // probe points
  std::vector<RatioRow> grid_rows;  // uniform-check grid
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct ZeroAttraction {
  int n = 0;
  ZeroReport report;
  std::vector<int> expected;  // per center
  int expected_support = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct VerifyReport {
  ExperimentConfig config;
  std::vector<LawResult> laws;
  std::vector<ZeroAttraction> zeros;
  bool numerical_failure = false;  // a solve failed somewhere on the ladder
  bool passed() const;
};

std::vector<std::string> laws_for(TargetKind k);
std::vector<cplx> boundary_grid(const std::array<double, 4>& rect, int count);

std::vector<LawResult> run_ratio_ladder(const ExperimentConfig& cfg);
std::vector<ZeroAttraction> run_zero_attraction(const ExperimentConfig& cfg);
VerifyReport run_verify(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<RatioRow>& rows);
ojson rows_to_json(const std::string& law, const std::vector<RatioRow>& rows);
json to_json(const VerifyReport& r);

enum class ReportFormat { csv, json };
void emit_report(const std::vector<RatioRow>& rows, const std::string& law, ReportFormat format,
                 const std::string& path);
/// Writes <scenario>_<law>.csv/.json per law plus <scenario>_summary.json.
std::vector<std::string> write_verify_outputs(const VerifyReport& r, const std::string& dir);

constexpr int kReportSchemaVersion = 1;

}  // namespace relasym
