#include "relasym/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "relasym/joukowski.hpp"
#include "relasym/modified.hpp"

namespace relasym {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex err_mu;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

BaseMeasureSpec legendre() { return BaseMeasureSpec{}; }

// Shared per-experiment state: the base table and a cache of the target family.
class Context {
 public:
  explicit Context(const ExperimentConfig& cfg) : cfg_(cfg) {
    int top = 0;
    for (int n : cfg.n_ladder) top = std::max(top, n + 1);
    for (int n : cfg.zero_degrees) top = std::max(top, n);
    int extra = 0;
    if (cfg.target == TargetKind::modified) extra = cfg.modifier.A() + cfg.modifier.B();
    if (cfg.target == TargetKind::sobolev) extra = 2 * cfg.sobolev.A();
    if (cfg.target == TargetKind::pade) extra = 2 * cfg.pade.to_sobolev().A();
    table_ = recurrence_for(cfg.measure, top + extra + 16);
    if (cfg.target == TargetKind::modified) fam_ = std::make_unique<ModifiedFamily>(cfg.modifier, table_);
    if (cfg.target == TargetKind::pade) pade_ = std::make_unique<PadeSolver>(cfg.pade, table_);
    if (cfg.target == TargetKind::sobolev) factors_ = attraction_factors(cfg.sobolev);
    if (cfg.target == TargetKind::pade) factors_ = cfg.pade.attraction();
  }

  const RecurrenceTable& table() const { return table_; }
  const PadeSolver& pade() const { return *pade_; }

  /// Monic member of degree m of the target family.
  std::shared_ptr<const PolyInBasis> poly(int m) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = polys_.find(m);
      if (it != polys_.end()) return it->second;
    }
    auto p = std::make_shared<PolyInBasis>(build(m));
    std::lock_guard<std::mutex> lk(mu_);
    return polys_.emplace(m, p).first->second;
  }

  /// Pade denominator data (target == pade).
  std::shared_ptr<const SobolevOP> pade_op(int m) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = pade_ops_.find(m);
      if (it != pade_ops_.end()) return it->second;
    }
    auto op = std::make_shared<SobolevOP>(pade_->denominator_op(m));
    std::lock_guard<std::mutex> lk(mu_);
    return pade_ops_.emplace(m, op).first->second;
  }

  std::vector<cplx> jet(int m, cplx z, int order) const { return eval_poly(*poly(m), table_, z, order); }

  /// Jet of the monic base polynomial L_m, in long double when requested.
  std::vector<cplx> base_jet(int m, cplx z, int order) const {
    if (cfg_.precision == Precision::extended) {
      auto J = orthonormal_jets_ext(table_, m, z, order);
      std::vector<cplx> out(order + 1);
      const long double tau = table_.tau[m];
      for (int j = 0; j <= order; ++j) {
        const auto v = J[m][j] / tau;
        out[j] = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      }
      return out;
    }
    return eval_jet(table_, m, z, order, Basis::monic_mu);
  }

  cplx relative_limit(cplx z) const {
    if (cfg_.target == TargetKind::modified) return limit_modified(z, cfg_.modifier);
    return limit_sobolev(z, factors_);
  }

 private:
  PolyInBasis build(int m) const {
    switch (cfg_.target) {
      case TargetKind::base_only: {
        std::vector<cplx> c(m + 1, 0.0);
        c[m] = 1.0;
        return PolyInBasis(Basis::monic_mu, c);
      }
      case TargetKind::modified: return fam_->get(m).q;
      case TargetKind::sobolev: return sn_bordered(m, cfg_.sobolev, table_).rep;
      case TargetKind::pade: return pade_op(m)->rep;
    }
    throw ConfigError("unknown target");
  }

  const ExperimentConfig& cfg_;
  RecurrenceTable table_;
  std::unique_ptr<ModifiedFamily> fam_;
  std::unique_ptr<PadeSolver> pade_;
  std::vector<AttractionFactor> factors_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const PolyInBasis>> polys_;
  mutable std::map<int, std::shared_ptr<const SobolevOP>> pade_ops_;
};

struct Sample {
  cplx ratio, limit;
};

// One law evaluated at (n, z, nu).
Sample evaluate_law(const std::string& law, const Context& ctx, int n, cplx z, int nu) {
  const cplx s = sqrt_z2m1(z);
  const double dn = n;
  if (law == "monic_ratio" || law == "orthonormal_ratio") {
    cplx r = ctx.base_jet(n + 1, z, nu)[nu] / ctx.base_jet(n, z, nu)[nu];
    if (law == "monic_ratio") return {r, phi(z) / 2.0};
    r *= ctx.table().tau[n + 1] / ctx.table().tau[n];
    return {r, phi(z)};
  }
  if (law == "log_derivative") {
    auto J = ctx.base_jet(n, z, nu + 1);
    return {J[nu + 1] / (dn * J[nu]), 1.0 / s};
  }
  if (law == "modified_relative" || law == "sobolev_relative" || law == "pade_relative")
    return {ctx.jet(n, z, nu)[nu] / ctx.base_jet(n, z, nu)[nu], ctx.relative_limit(z)};
  if (law == "modified_ratio") return {ctx.jet(n + 1, z, nu)[nu] / ctx.jet(n, z, nu)[nu], phi(z) / 2.0};
  if (law == "modified_log_derivative") {
    auto J = ctx.jet(n, z, nu + 1);
    return {J[nu + 1] / (dn * J[nu]), 1.0 / s};
  }
  if (law == "orthonormal_scaled") {
    auto J = ctx.jet(n, z, nu + 1);
    return {J[nu + 1] / (std::pow(dn, nu + 1) * J[0]), std::pow(1.0 / s, nu + 1)};
  }
  if (law == "pade_error_ratio") {
    const cplx e0 = ctx.pade().error(*ctx.pade_op(n), z);
    const cplx e1 = ctx.pade().error(*ctx.pade_op(n + 1), z);
    const cplx p = phi(z);
    return {e1 / e0, 1.0 / (p * p)};
  }
  throw ConfigError("unknown law '" + law + "'");
}

int law_max_nu(const std::string& law, int jets) { return law == "pade_error_ratio" ? 0 : jets; }

// Rows for one law on a point set, ordered by (z, nu, n).
std::vector<RatioRow> ladder_rows(const std::string& law, const Context& ctx, const ExperimentConfig& cfg,
                                  const std::vector<cplx>& points, bool& numerical_failure) {
  const int L = static_cast<int>(cfg.n_ladder.size());
  const int nus = law_max_nu(law, cfg.jets) + 1;
  const int P = static_cast<int>(points.size());
  std::vector<RatioRow> rows(static_cast<size_t>(P) * nus * L);
  std::atomic<bool> failed{false};
  parallel_for(L, cfg.jobs, [&](int li) {
    const int n = cfg.n_ladder[li];
    for (int p = 0; p < P; ++p)
      for (int nu = 0; nu < nus; ++nu) {
        RatioRow& r = rows[(static_cast<size_t>(p) * nus + nu) * L + li];
        r.n = n;
        r.z = points[p];
        r.nu = nu;
        try {
          Sample s = evaluate_law(law, ctx, n, points[p], nu);
          r.ratio = s.ratio;
          r.limit = s.limit;
          r.abs_err = std::abs(s.ratio - s.limit);
        } catch (const NumericalError&) {
          r.pre_asymptotic = true;
        }
        if (r.pre_asymptotic) {
          r.ratio = r.limit = cplx(kNaN, kNaN);
          r.abs_err = kNaN;
          failed = true;
        }
      }
  });
  for (size_t i = 0; i < rows.size(); ++i) {
    const bool first = i % L == 0;
    rows[i].est_rate = first ? kNaN
                             : std::log(rows[i - 1].abs_err / rows[i].abs_err) /
                                   static_cast<double>(rows[i].n - rows[i - 1].n);
  }
  if (failed) numerical_failure = true;
  return rows;
}

std::string point_label(cplx z) {
  std::ostringstream s;
  s << "z=" << format_double(z.real()) << (z.imag() < 0 ? "" : "+") << format_double(z.imag()) << "i";
  return s.str();
}

void check_monotone(const std::vector<RatioRow>& rows, int L, const std::string& law,
                    std::vector<std::string>& failures) {
  for (size_t start = 0; start + L <= rows.size(); start += L)
    for (int i = 1; i < L; ++i) {
      const RatioRow &a = rows[start + i - 1], &b = rows[start + i];
      if (!(b.abs_err < a.abs_err)) {
        failures.push_back(law + ": error not decreasing at " + point_label(a.z) + " nu=" + std::to_string(a.nu) +
                           " between n=" + std::to_string(a.n) + " and n=" + std::to_string(b.n) + " (" +
                           format_double(a.abs_err) + " -> " + format_double(b.abs_err) + ")");
        break;
      }
    }
}

void check_grid(const std::vector<RatioRow>& rows, int L, int nus, int P, const std::string& law,
                std::vector<std::string>& failures) {
  for (int nu = 0; nu < nus; ++nu) {
    std::vector<double> mx(L, 0.0);
    for (int p = 0; p < P; ++p)
      for (int i = 0; i < L; ++i) {
        const double e = rows[(static_cast<size_t>(p) * nus + nu) * L + i].abs_err;
        mx[i] = std::isnan(e) || std::isnan(mx[i]) ? kNaN : std::max(mx[i], e);
      }
    for (int i = 1; i < L; ++i)
      if (!(mx[i] < mx[i - 1])) {
        failures.push_back(law + ": max error over the grid not decreasing for nu=" + std::to_string(nu) +
                           " between n=" + std::to_string(rows[i - 1].n) + " and n=" + std::to_string(rows[i].n) +
                           " (" + format_double(mx[i - 1]) + " -> " + format_double(mx[i]) + ")");
        break;
      }
  }
}

cplx parse_point(const json& j) { return complex_from_json(j, "point"); }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(std::string(what) + ": unknown field '" + it.key() + "'");
  }
}

TargetKind target_from_string(const std::string& s) {
  if (s == "base_only") return TargetKind::base_only;
  if (s == "modified") return TargetKind::modified;
  if (s == "sobolev") return TargetKind::sobolev;
  if (s == "pade") return TargetKind::pade;
  throw ConfigError("unknown target '" + s + "'");
}

}  // namespace

std::string to_string(TargetKind k) {
  switch (k) {
    case TargetKind::base_only: return "base_only";
    case TargetKind::modified: return "modified";
    case TargetKind::sobolev: return "sobolev";
    case TargetKind::pade: return "pade";
  }
  return "unknown";
}

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

Precision precision_from_string(const std::string& s) {
  if (s == "double") return Precision::double_precision;
  if (s == "extended") return Precision::extended;
  throw ConfigError("precision must be 'double' or 'extended'");
}

void ExperimentConfig::validate() const {
  measure.validate();
  if (n_ladder.size() < 2) throw ConfigError("n_ladder needs at least two entries");
  for (size_t i = 0; i < n_ladder.size(); ++i) {
    if (n_ladder[i] < 1) throw ConfigError("n_ladder entries must be positive");
    if (i > 0 && n_ladder[i] <= n_ladder[i - 1]) throw ConfigError("n_ladder must be strictly increasing");
  }
  if (n_ladder.back() > 400) throw ConfigError("n_ladder entries above 400 are outside the supported range");
  if (jets < 0 || jets > 4) throw ConfigError("jets must lie in 0..4");
  if (probe_points.empty()) throw ConfigError("at least one probe point is required");
  for (cplx z : probe_points) require_off_cut(z, "probe point");
  if (grid_points < 4) throw ConfigError("grid needs at least 4 points");
  if (!(grid_rect[0] < grid_rect[1] && grid_rect[2] < grid_rect[3])) throw ConfigError("grid rectangle is empty");
  for (cplx z : boundary_grid(grid_rect, grid_points)) require_off_cut(z, "grid point");
  for (int n : zero_degrees)
    if (n < 1 || n > 400) throw ConfigError("zero degrees must lie in 1..400");
  if (zero_radius && !(*zero_radius > 0.0)) throw ConfigError("zero radius must be positive");
  if (!(support_band > 0.0)) throw ConfigError("support band must be positive");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  switch (target) {
    case TargetKind::base_only: break;
    case TargetKind::modified: modifier.validate(measure); break;
    case TargetKind::sobolev:
      sobolev.validate(measure);
      require_regular(sobolev);
      break;
    case TargetKind::pade:
      pade.validate();
      if (!pade.base.same_as(measure)) throw ConfigError("pade function must use the experiment measure");
      for (const auto& p : pade.poles) {
        for (cplx z : probe_points)
          if (std::abs(z - p.c) < 1e-8) throw ConfigError("probe point " + point_label(z) + " sits on a pole");
        for (cplx z : boundary_grid(grid_rect, grid_points))
          if (std::abs(z - p.c) < 1e-8) throw ConfigError("grid point " + point_label(z) + " sits on a pole");
      }
      break;
  }
}

std::vector<std::pair<cplx, int>> ExperimentConfig::attraction_centers() const {
  std::vector<std::pair<cplx, int>> c;
  switch (target) {
    case TargetKind::base_only:
      for (const auto& p : measure.mass_points) c.push_back({p.location, 1});
      break;
    case TargetKind::modified: break;
    case TargetKind::sobolev:
      for (const auto& f : attraction_factors(sobolev)) c.push_back({f.c, f.e});
      break;
    case TargetKind::pade:
      for (const auto& f : pade.attraction()) c.push_back({f.c, f.e});
      break;
  }
  return c;
}

std::vector<std::string> bundled_scenario_names() {
  return {"base_legendre",           "base_jacobi_atom", "modified_linear_complex", "modified_rational",
          "modified_real_zero",      "sobolev_point_derivative", "sobolev_complex",  "sobolev_generalized",
          "pade_gonchar",            "pade_double_pole"};
}

ExperimentConfig bundled_scenario(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  c.measure = legendre();
  if (name == "base_legendre") {
    c.target = TargetKind::base_only;
  } else if (name == "base_jacobi_atom") {
    c.target = TargetKind::base_only;
    c.measure.kind = WeightKind::jacobi;
    c.measure.alpha = 0.5;
    c.measure.beta = -0.3;
    c.measure.mass_points = {{1.5, 0.3}};
  } else if (name == "modified_linear_complex") {
    c.target = TargetKind::modified;
    c.modifier.zeros = {{cplx(0, 2), 1}};
  } else if (name == "modified_rational") {
    c.target = TargetKind::modified;
    c.modifier.zeros = {{cplx(0, 2), 1}};
    c.modifier.poles = {{cplx(0, 3), 1}};
  } else if (name == "modified_real_zero") {
    c.target = TargetKind::modified;
    c.modifier.zeros = {{3.0, 1}};
  } else if (name == "sobolev_point_derivative") {
    c.target = TargetKind::sobolev;
    c.sobolev = SobolevSpec::from_diagonal({2.0}, {{0.0, 1.0}});
  } else if (name == "sobolev_complex") {
    c.target = TargetKind::sobolev;
    c.sobolev = SobolevSpec::from_diagonal({cplx(0.5, 1.5)}, {{1.0, 0.5}});
  } else if (name == "sobolev_generalized") {
    c.target = TargetKind::sobolev;
    SobolevTerm t;
    t.c = -2.0;
    t.N = 1;
    t.gamma = Eigen::MatrixXcd(2, 2);
    t.gamma << 1.0, 1.0, 0.0, 2.0;
    c.sobolev.terms = {t};
  } else if (name == "pade_gonchar") {
    c.target = TargetKind::pade;
    c.pade.base = c.measure;
    c.pade.poles = {{2.0, {1.0}}};
  } else if (name == "pade_double_pole") {
    c.target = TargetKind::pade;
    c.pade.base = c.measure;
    c.pade.poles = {{cplx(0, 2), {1.0, 1.0}}};
    c.probe_points = {3.0, -2.5, cplx(0, -2), cplx(1.5, 1.5)};
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  return c;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(j,
             {"scenario", "name", "measure", "target", "modifier", "sobolev", "pade", "probe_points", "n_ladder",
              "jets", "grid", "zeros", "outputs", "precision", "jobs"},
             "config");
  ExperimentConfig c;
  if (j.contains("scenario")) c = bundled_scenario(j.at("scenario").get<std::string>());
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (j.contains("measure")) c.measure = measure_from_json(j.at("measure"));
  if (j.contains("target")) c.target = target_from_string(j.at("target").get<std::string>());
  if (j.contains("modifier")) c.modifier = modifier_from_json(j.at("modifier"));
  if (j.contains("sobolev")) c.sobolev = sobolev_from_json(j.at("sobolev"));
  if (j.contains("pade")) {
    json pj = j.at("pade");
    if (!pj.contains("base")) pj["base"] = to_json(c.measure);
    c.pade = stieltjes_from_json(pj);
  } else {
    c.pade.base = c.measure;
  }
  if (j.contains("probe_points")) {
    c.probe_points.clear();
    for (const auto& p : j.at("probe_points")) c.probe_points.push_back(parse_point(p));
  }
  if (j.contains("n_ladder")) c.n_ladder = j.at("n_ladder").get<std::vector<int>>();
  if (j.contains("jets")) c.jets = j.at("jets").get<int>();
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"rect", "points"}, "grid");
    if (g.contains("rect")) {
      auto r = g.at("rect").get<std::vector<double>>();
      if (r.size() != 4) throw ConfigError("grid rect needs [x0, x1, y0, y1]");
      std::copy(r.begin(), r.end(), c.grid_rect.begin());
    }
    if (g.contains("points")) c.grid_points = g.at("points").get<int>();
  }
  if (j.contains("zeros")) {
    const json& z = j.at("zeros");
    check_keys(z, {"degrees", "radius", "support_band"}, "zeros");
    if (z.contains("degrees")) c.zero_degrees = z.at("degrees").get<std::vector<int>>();
    if (z.contains("radius") && !z.at("radius").is_null()) c.zero_radius = z.at("radius").get<double>();
    if (z.contains("support_band")) c.support_band = z.at("support_band").get<double>();
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    check_keys(o, {"csv", "json"}, "outputs");
    c.write_csv = o.value("csv", true);
    c.write_json = o.value("json", true);
  }
  if (j.contains("precision")) c.precision = precision_from_string(j.at("precision").get<std::string>());
  if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["measure"] = to_json(c.measure);
  j["target"] = to_string(c.target);
  if (c.target == TargetKind::modified) j["modifier"] = to_json(c.modifier);
  if (c.target == TargetKind::sobolev) j["sobolev"] = to_json(c.sobolev);
  if (c.target == TargetKind::pade) j["pade"] = {{"poles", to_json(c.pade)["poles"]}};
  json probes = json::array();
  for (cplx z : c.probe_points) probes.push_back(to_json(z));
  j["probe_points"] = probes;
  j["n_ladder"] = c.n_ladder;
  j["jets"] = c.jets;
  j["grid"] = {{"rect", c.grid_rect}, {"points", c.grid_points}};
  j["zeros"] = {{"degrees", c.zero_degrees},
                {"radius", c.zero_radius ? json(*c.zero_radius) : json(nullptr)},
                {"support_band", c.support_band}};
  j["outputs"] = {{"csv", c.write_csv}, {"json", c.write_json}};
  j["precision"] = to_string(c.precision);
  return j;
}

bool VerifyReport::passed() const {
  if (numerical_failure) return false;
  for (const auto& l : laws)
    if (!l.passed()) return false;
  for (const auto& z : zeros)
    if (!z.passed()) return false;
  return true;
}

std::vector<std::string> laws_for(TargetKind k) {
  switch (k) {
    case TargetKind::base_only: return {"monic_ratio", "orthonormal_ratio", "log_derivative"};
    case TargetKind::modified:
      return {"modified_relative", "modified_ratio", "modified_log_derivative", "orthonormal_scaled"};
    case TargetKind::sobolev: return {"sobolev_relative"};
    case TargetKind::pade: return {"pade_relative", "pade_error_ratio"};
  }
  return {};
}

std::vector<cplx> boundary_grid(const std::array<double, 4>& r, int count) {
  const double w = r[1] - r[0], h = r[3] - r[2], per = 2.0 * (w + h);
  std::vector<cplx> pts;
  for (int k = 0; k < count; ++k) {
    double s = per * k / count;
    if (s < w) {
      pts.emplace_back(r[0] + s, r[2]);
      continue;
    }
    s -= w;
    if (s < h) {
      pts.emplace_back(r[1], r[2] + s);
      continue;
    }
    s -= h;
    if (s < w) {
      pts.emplace_back(r[1] - s, r[3]);
      continue;
    }
    s -= w;
    pts.emplace_back(r[0], r[3] - s);
  }
  return pts;
}

namespace {

std::vector<LawResult> ladder_with(const ExperimentConfig& cfg, const Context& ctx, bool& numerical_failure) {
  std::vector<LawResult> out;
  const auto grid = boundary_grid(cfg.grid_rect, cfg.grid_points);
  const int L = static_cast<int>(cfg.n_ladder.size());
  for (const auto& law : laws_for(cfg.target)) {
    LawResult r;
    r.law = law;
    r.rows = ladder_rows(law, ctx, cfg, cfg.probe_points, numerical_failure);
    r.grid_rows = ladder_rows(law, ctx, cfg, grid, numerical_failure);
    check_monotone(r.rows, L, law, r.failures);
    check_grid(r.grid_rows, L, law_max_nu(law, cfg.jets) + 1, static_cast<int>(grid.size()), law, r.failures);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ZeroAttraction> zeros_with(const ExperimentConfig& cfg, const Context& ctx) {
  const auto centers = cfg.attraction_centers();
  std::vector<cplx> pts;
  int attracted = 0;
  for (const auto& c : centers) {
    pts.push_back(c.first);
    attracted += c.second;
  }
  const double radius = cfg.zero_radius ? *cfg.zero_radius : (pts.empty() ? 0.1 : default_cluster_radius(pts));
  std::vector<ZeroAttraction> out(cfg.zero_degrees.size());
  parallel_for(static_cast<int>(out.size()), cfg.jobs, [&](int i) {
    ZeroAttraction& za = out[i];
    za.n = cfg.zero_degrees[i];
    za.report = cluster(roots(*ctx.poly(za.n), ctx.table()), pts, radius, cfg.support_band);
    za.expected_support = za.n - attracted;
    for (size_t k = 0; k < centers.size(); ++k) {
      za.expected.push_back(centers[k].second);
      if (za.report.cluster_counts[k] != centers[k].second)
        za.failures.push_back("n=" + std::to_string(za.n) + ": " + std::to_string(za.report.cluster_counts[k]) +
                              " zeros near " + point_label(centers[k].first) + ", expected " +
                              std::to_string(centers[k].second));
    }
    if (za.report.support_count != za.expected_support)
      za.failures.push_back("n=" + std::to_string(za.n) + ": " + std::to_string(za.report.support_count) +
                            " zeros near [-1,1], expected " + std::to_string(za.expected_support));
  });
  return out;
}

}  // namespace

std::vector<LawResult> run_ratio_ladder(const ExperimentConfig& cfg) {
  cfg.validate();
  Context ctx(cfg);
  bool failed = false;
  return ladder_with(cfg, ctx, failed);
}

std::vector<ZeroAttraction> run_zero_attraction(const ExperimentConfig& cfg) {
  cfg.validate();
  Context ctx(cfg);
  return zeros_with(cfg, ctx);
}

VerifyReport run_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  Context ctx(cfg);
  VerifyReport rep;
  rep.config = cfg;
  // Build the family members up front, in parallel, so rows only evaluate.
  std::vector<int> degrees;
  for (int n : cfg.n_ladder) {
    degrees.push_back(n);
    degrees.push_back(n + 1);
  }
  for (int n : cfg.zero_degrees) degrees.push_back(n);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  parallel_for(static_cast<int>(degrees.size()), cfg.jobs, [&](int i) {
    try {
      ctx.poly(degrees[i]);
    } catch (const NumericalError&) {
    }
  });
  rep.laws = ladder_with(cfg, ctx, rep.numerical_failure);
  rep.zeros = zeros_with(cfg, ctx);
  return rep;
}

std::string rows_to_csv(const std::vector<RatioRow>& rows) {
  std::string s = "n,z_re,z_im,nu,ratio_re,ratio_im,limit_re,limit_im,abs_err,est_rate\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + ',' + format_double(r.z.real()) + ',' + format_double(r.z.imag()) + ',' +
         std::to_string(r.nu) + ',' + format_double(r.ratio.real()) + ',' + format_double(r.ratio.imag()) + ',' +
         format_double(r.limit.real()) + ',' + format_double(r.limit.imag()) + ',' + format_double(r.abs_err) + ',' +
         format_double(r.est_rate) + '\n';
  }
  return s;
}

ojson rows_to_json(const std::string& law, const std::vector<RatioRow>& rows) {
  ojson o;
  o["schema_version"] = kReportSchemaVersion;
  o["law"] = law;
  o["columns"] = {"n", "z_re", "z_im", "nu", "ratio_re", "ratio_im", "limit_re", "limit_im", "abs_err", "est_rate"};
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson e;
    e["n"] = r.n;
    e["z_re"] = r.z.real();
    e["z_im"] = r.z.imag();
    e["nu"] = r.nu;
    e["ratio_re"] = r.ratio.real();
    e["ratio_im"] = r.ratio.imag();
    e["limit_re"] = r.limit.real();
    e["limit_im"] = r.limit.imag();
    e["abs_err"] = r.abs_err;
    e["est_rate"] = r.est_rate;
    e["pre_asymptotic"] = r.pre_asymptotic;
    arr.push_back(e);
  }
  o["rows"] = arr;
  return o;
}

json to_json(const VerifyReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = r.config.name;
  j["config"] = to_json(r.config);
  j["passed"] = r.passed();
  j["numerical_failure"] = r.numerical_failure;
  json laws = json::array();
  for (const auto& l : r.laws) laws.push_back({{"law", l.law}, {"passed", l.passed()}, {"failures", l.failures}});
  j["laws"] = laws;
  json zs = json::array();
  for (const auto& z : r.zeros) {
    json e = to_json(z.report);
    e["n"] = z.n;
    e["expected_counts"] = z.expected;
    e["expected_support"] = z.expected_support;
    e["passed"] = z.passed();
    e["failures"] = z.failures;
    zs.push_back(e);
  }
  j["zeros"] = zs;
  return j;
}

void emit_report(const std::vector<RatioRow>& rows, const std::string& law, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::csv) {
    write_text_file(path, rows_to_csv(rows));
  } else {
    write_text_file(path, rows_to_json(law, rows).dump(1) + "\n");
  }
}

std::vector<std::string> write_verify_outputs(const VerifyReport& r, const std::string& dir) {
  std::vector<std::string> files;
  const std::string stem = (std::filesystem::path(dir) / r.config.name).string();
  for (const auto& l : r.laws) {
    if (r.config.write_csv) {
      files.push_back(stem + "_" + l.law + ".csv");
      emit_report(l.rows, l.law, ReportFormat::csv, files.back());
      files.push_back(stem + "_" + l.law + "_grid.csv");
      emit_report(l.grid_rows, l.law, ReportFormat::csv, files.back());
    }
    if (r.config.write_json) {
      files.push_back(stem + "_" + l.law + ".json");
      emit_report(l.rows, l.law, ReportFormat::json, files.back());
    }
  }
  files.push_back(stem + "_summary.json");
  write_text_file(files.back(), to_json(r).dump(1) + "\n");
  return files;
}

}  // namespace relasym
