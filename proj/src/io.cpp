#include "relasym/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace relasym {

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ConfigError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::vector<cplx> complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected a list");
  std::vector<cplx> v;
  for (const auto& e : j) v.push_back(complex_from_json(e, what));
  return v;
}

json roots_json(const std::vector<RationalRoot>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back({{"c", to_json(r.point)}, {"mult", r.mult}});
  return a;
}

std::vector<RationalRoot> roots_from(const json& j, const char* what) {
  std::vector<RationalRoot> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected a list");
  for (const auto& e : j) {
    RationalRoot r;
    r.point = complex_from_json(require(e, "c", what), what);
    r.mult = e.contains("mult") ? integer(e.at("mult"), what) : 1;
    if (r.mult < 1) throw ConfigError(std::string(what) + ": multiplicity must be positive");
    out.push_back(r);
  }
  return out;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(std::string(what) + ": expected a complex number [re, im]");
}

json to_json(const BaseMeasureSpec& s) {
  json j;
  j["weight"] = to_string(s.kind);
  if (s.kind == WeightKind::jacobi) {
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
  }
  json mp = json::array();
  for (const auto& p : s.mass_points) mp.push_back({{"location", p.location}, {"mass", p.mass}});
  j["mass_points"] = mp;
  return j;
}

BaseMeasureSpec measure_from_json(const json& j) {
  BaseMeasureSpec s;
  if (!j.is_object()) throw ConfigError("measure: expected an object");
  s.kind = weight_kind_from_string(require(j, "weight", "measure").get<std::string>());
  if (s.kind == WeightKind::jacobi) {
    s.alpha = number(require(j, "alpha", "measure"), "measure alpha");
    s.beta = number(require(j, "beta", "measure"), "measure beta");
  }
  if (j.contains("mass_points")) {
    for (const auto& e : j.at("mass_points")) {
      MassPoint p;
      if (e.is_array() && e.size() == 2) {
        p.location = number(e[0], "mass point");
        p.mass = number(e[1], "mass point");
      } else {
        p.location = number(require(e, "location", "mass point"), "mass point");
        p.mass = number(require(e, "mass", "mass point"), "mass point");
      }
      s.mass_points.push_back(p);
    }
  }
  s.validate();
  return s;
}

json to_json(const RecurrenceTable& t) {
  json j;
  j["measure"] = to_json(t.spec);
  j["nmax"] = t.nmax;
  j["a"] = std::vector<double>(t.a.begin() + 1, t.a.end());
  j["b"] = t.b;
  j["tau"] = t.tau;
  return j;
}

RecurrenceTable table_from_json(const json& j) {
  RecurrenceTable t;
  t.spec = measure_from_json(require(j, "measure", "table"));
  t.nmax = integer(require(j, "nmax", "table"), "table nmax");
  auto a = require(j, "a", "table").get<std::vector<double>>();
  t.b = require(j, "b", "table").get<std::vector<double>>();
  t.tau = require(j, "tau", "table").get<std::vector<double>>();
  if (static_cast<int>(a.size()) != t.nmax || static_cast<int>(t.b.size()) != t.nmax + 1 ||
      static_cast<int>(t.tau.size()) != t.nmax + 1)
    throw ConfigError("table: coefficient lists do not match nmax");
  t.a.assign(1, 0.0);
  t.a.insert(t.a.end(), a.begin(), a.end());
  return t;
}

json to_json(const RationalModifier& r) { return {{"zeros", roots_json(r.zeros)}, {"poles", roots_json(r.poles)}}; }

RationalModifier modifier_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("modifier: expected an object");
  RationalModifier r;
  r.zeros = roots_from(j.value("zeros", json()), "modifier zeros");
  r.poles = roots_from(j.value("poles", json()), "modifier poles");
  return r;
}

json to_json(const SobolevSpec& s) {
  json terms = json::array();
  for (const auto& t : s.terms) {
    json g = json::array();
    for (int i = 0; i < t.gamma.rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < t.gamma.cols(); ++k) row.push_back(to_json(t.gamma(i, k)));
      g.push_back(row);
    }
    terms.push_back({{"c", to_json(t.c)}, {"N", t.N}, {"gamma", g}});
  }
  json j{{"terms", terms}};
  if (s.diagonal) {
    json d = json::array();
    for (const auto& m : *s.diagonal) {
      json row = json::array();
      for (const auto& v : m) row.push_back(to_json(v));
      d.push_back(row);
    }
    j["diagonal"] = d;
  }
  return j;
}

SobolevSpec sobolev_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sobolev spec: expected an object");
  const json& terms = require(j, "terms", "sobolev spec");
  if (!terms.is_array()) throw ConfigError("sobolev spec: terms must be a list");
  if (j.contains("diagonal") && !j.at("diagonal").is_null()) {
    std::vector<cplx> pts;
    std::vector<std::vector<cplx>> M;
    for (const auto& t : terms) pts.push_back(complex_from_json(require(t, "c", "sobolev term"), "sobolev term c"));
    for (const auto& row : j.at("diagonal")) M.push_back(complex_list(row, "sobolev diagonal"));
    return SobolevSpec::from_diagonal(pts, M);
  }
  SobolevSpec s;
  for (const auto& tj : terms) {
    SobolevTerm t;
    t.c = complex_from_json(require(tj, "c", "sobolev term"), "sobolev term c");
    const json& g = require(tj, "gamma", "sobolev term");
    if (!g.is_array() || g.empty() || !g[0].is_array() || g[0].empty())
      throw ConfigError("sobolev term: gamma must be a non-empty matrix");
    const int rows = static_cast<int>(g.size()), cols = static_cast<int>(g[0].size());
    t.N = tj.contains("N") ? integer(tj.at("N"), "sobolev term N") : rows - 1;
    if (t.N != rows - 1) throw ConfigError("sobolev term: gamma must have N+1 rows");
    t.gamma.resize(rows, cols);
    for (int i = 0; i < rows; ++i) {
      if (!g[i].is_array() || static_cast<int>(g[i].size()) != cols)
        throw ConfigError("sobolev term: gamma rows differ in length");
      for (int k = 0; k < cols; ++k) t.gamma(i, k) = complex_from_json(g[i][k], "sobolev gamma");
    }
    s.terms.push_back(std::move(t));
  }
  return s;
}

json to_json(const StieltjesFn& f) {
  json poles = json::array();
  for (const auto& p : f.poles) {
    json A = json::array();
    for (const auto& a : p.A) A.push_back(to_json(a));
    poles.push_back({{"c", to_json(p.c)}, {"A", A}});
  }
  return {{"base", to_json(f.base)}, {"poles", poles}};
}

StieltjesFn stieltjes_from_json(const json& j) {
  StieltjesFn f;
  f.base = measure_from_json(require(j, "base", "stieltjes function"));
  if (j.contains("poles")) {
    for (const auto& pj : j.at("poles")) {
      PolePart p;
      p.c = complex_from_json(require(pj, "c", "pole"), "pole c");
      p.A = complex_list(require(pj, "A", "pole"), "pole A");
      f.poles.push_back(std::move(p));
    }
  }
  f.validate();
  return f;
}

json to_json(const ZeroReport& z) {
  json roots = json::array(), centers = json::array(), un = json::array();
  for (auto r : z.roots) roots.push_back(to_json(r));
  for (auto c : z.centers) centers.push_back(to_json(c));
  for (auto u : z.unassigned) un.push_back(to_json(u));
  return {{"degree", z.roots.size()}, {"centers", centers},         {"radius", z.radius},
          {"support_band", z.support_band}, {"cluster_counts", z.cluster_counts},
          {"support_count", z.support_count}, {"unassigned", un}, {"roots", roots}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return ss.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory '" + parent.string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write error on '" + path + "'");
}

}  // namespace relasym
