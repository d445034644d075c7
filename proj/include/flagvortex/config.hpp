#pragma once

// Pipeline configuration: a single key/value text file with [section]
// headers, '#' comments, and one "key = value" binding per line.  Parsing
// keeps line numbers so every complaint can point at the offending line,
// and unknown keys are rejected rather than ignored.

#include <flagvortex/reduction.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace flagvortex {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cfgdetail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace cfgdetail

class ConfigFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static ConfigFile parse(const std::string& text) {
    ConfigFile cf;
    cf.text_ = text;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      auto s = cfgdetail::trim(raw);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          throw ConfigError("config line " + std::to_string(line) + ": unterminated section header");
        section = cfgdetail::trim(s.substr(1, s.size() - 2));
        if (section.empty())
          throw ConfigError("config line " + std::to_string(line) + ": empty section name");
        cf.sections_[section];
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line) + ": expected 'key = value'");
      auto key = cfgdetail::trim(s.substr(0, eq));
      auto value = cfgdetail::trim(s.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(line) + ": empty key");
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line) + ": key before any [section]");
      auto [it, fresh] = cf.sections_[section].emplace(key, Entry{value, line});
      if (!fresh)
        throw ConfigError("config line " + std::to_string(line) + ": duplicate key '" + key +
                          "' in [" + section + "] (first at line " + std::to_string(it->second.line) +
                          ")");
    }
    return cf;
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

  const std::map<std::string, Entry>& section(const std::string& name) const {
    static const std::map<std::string, Entry> empty;
    auto s = sections_.find(name);
    return s == sections_.end() ? empty : s->second;
  }

  std::vector<std::string> section_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sections_) out.push_back(name);
    return out;
  }

  const std::string& text() const { return text_; }

 private:
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string text_;
};

enum class BaseMode { exact_only, torus };

// Divisor points live in physical torus coordinates so configs do not
// depend on the grid resolution chosen at run time.
struct DivisorPointSpec {
  double x = 0, y = 0;
  int mult = 1;
};

struct SectionSpecConfig {
  double scale = 1.0;
  std::vector<DivisorPointSpec> divisor;
};

struct SweepSpec {
  Rational lo = 1, hi = 1;
  int points = 2;
  bool solve = false;
};

struct PipelineConfig {
  std::string diagram;
  ParabolicModule rho1, rho2;  // rho2 may be empty (single-module runs)
  std::vector<Rational> kahler;

  BaseMode mode = BaseMode::exact_only;
  Rational lx = 1, ly = 1;  // torus periods; lx * ly is the exact area
  int d1 = 0, d2 = 0;
  BaseBundleSpec w1{"W1", 1, 0, 0}, w2{"W2", 1, 0, 0};
  bool h0_dim_given = false;
  std::vector<SectionSpecConfig> sections;
  bool phi_nonzero = true;

  Rational sigma = 1;
  std::optional<SweepSpec> sweep;

  double tol = 1e-8;
  int grid = 64;
  int max_iter = 20000;
  int fiber_nodes = 96;
  std::uint64_t seed = 1;

  std::string report_path;       // machine report (also settable via --out)
  std::string history_csv;
  std::string field_csv;
  std::string sweep_csv;

  std::string raw_text;          // exact bytes, fingerprinted in reports
};

namespace cfgdetail {

inline std::string where(const ConfigFile::Entry& e) {
  return "config line " + std::to_string(e.line) + ": ";
}

inline int parse_int_field(const ConfigFile::Entry& e, const std::string& key) {
  try {
    size_t used = 0;
    int v = std::stoi(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where(e) + "field '" + key + "' expects an integer, got '" + e.value + "'");
  }
}

inline double parse_double_field(const ConfigFile::Entry& e, const std::string& key) {
  try {
    size_t used = 0;
    double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where(e) + "field '" + key + "' expects a number, got '" + e.value + "'");
  }
}

inline Rational parse_rational_field(const ConfigFile::Entry& e, const std::string& key) {
  try {
    return parse_rational(e.value);
  } catch (const std::exception& ex) {
    throw ConfigError(where(e) + "field '" + key + "': " + ex.what());
  }
}

inline bool parse_bool_field(const ConfigFile::Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(where(e) + "field '" + key + "' expects true/false, got '" + e.value + "'");
}

inline std::vector<WeightVector> parse_weight_list_field(const ConfigFile::Entry& e,
                                                         const std::string& key) {
  std::vector<WeightVector> out;
  for (const auto& part : split(e.value, ';')) {
    if (part.empty()) continue;
    try {
      out.push_back(parse_weight(part));
    } catch (const std::exception& ex) {
      throw ConfigError(where(e) + "field '" + key + "': " + ex.what());
    }
  }
  if (out.empty())
    throw ConfigError(where(e) + "field '" + key + "' expects at least one weight");
  return out;
}

// One section handle: tracks which keys were consumed so leftovers can be
// reported with their line numbers.
class SectionReader {
 public:
  SectionReader(const ConfigFile& cf, std::string name) : cf_(cf), name_(std::move(name)) {}

  const ConfigFile::Entry* find(const std::string& key) {
    seen_.insert(key);
    return cf_.find(name_, key);
  }

  const ConfigFile::Entry& require(const std::string& key) {
    auto* e = find(key);
    if (!e) throw ConfigError("config section [" + name_ + "] is missing key '" + key + "'");
    return *e;
  }

  std::optional<int> get_int(const std::string& key) {
    auto* e = find(key);
    if (!e) return std::nullopt;
    return parse_int_field(*e, key);
  }
  std::optional<double> get_double(const std::string& key) {
    auto* e = find(key);
    if (!e) return std::nullopt;
    return parse_double_field(*e, key);
  }
  std::optional<Rational> get_rational(const std::string& key) {
    auto* e = find(key);
    if (!e) return std::nullopt;
    return parse_rational_field(*e, key);
  }
  std::optional<bool> get_bool(const std::string& key) {
    auto* e = find(key);
    if (!e) return std::nullopt;
    return parse_bool_field(*e, key);
  }
  std::optional<std::string> get_string(const std::string& key) {
    auto* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  void finish() const {
    for (const auto& [key, entry] : cf_.section(name_))
      if (!seen_.count(key))
        throw ConfigError(where(entry) + "unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  const ConfigFile& cf_;
  std::string name_;
  std::set<std::string> seen_;
};

inline std::vector<DivisorPointSpec> parse_divisor_field(const ConfigFile::Entry& e,
                                                         const std::string& key) {
  std::vector<DivisorPointSpec> out;
  for (const auto& part : split(e.value, ';')) {
    if (part.empty()) continue;
    auto nums = split(part, ',');
    if (nums.size() != 2 && nums.size() != 3)
      throw ConfigError(where(e) + "field '" + key + "' expects 'x,y[,mult]' groups, got '" +
                        part + "'");
    DivisorPointSpec p;
    try {
      size_t ux = 0, uy = 0;
      p.x = std::stod(nums[0], &ux);
      p.y = std::stod(nums[1], &uy);
      if (ux != nums[0].size() || uy != nums[1].size()) throw std::invalid_argument("trailing");
      if (nums.size() == 3) {
        size_t um = 0;
        p.mult = std::stoi(nums[2], &um);
        if (um != nums[2].size()) throw std::invalid_argument("trailing");
      }
    } catch (const std::exception&) {
      throw ConfigError(where(e) + "field '" + key + "': cannot parse point '" + part + "'");
    }
    if (p.mult < 1)
      throw ConfigError(where(e) + "field '" + key + "': multiplicity must be >= 1");
    out.push_back(p);
  }
  return out;
}

}  // namespace cfgdetail

inline PipelineConfig parse_pipeline_config(const std::string& text) {
  auto cf = ConfigFile::parse(text);
  PipelineConfig cfg;
  cfg.raw_text = text;

  static const std::set<std::string> known_sections = {"fiber", "base",   "sections",
                                                       "sigma", "solver", "output"};
  for (const auto& name : cf.section_names())
    if (!known_sections.count(name)) throw ConfigError("unknown config section [" + name + "]");

  {
    cfgdetail::SectionReader fiber(cf, "fiber");
    cfg.diagram = fiber.require("diagram").value;
    cfg.rho1.weights = cfgdetail::parse_weight_list_field(fiber.require("rho1"), "rho1");
    if (auto* e = fiber.find("rho2"))
      cfg.rho2.weights = cfgdetail::parse_weight_list_field(*e, "rho2");
    if (auto* e = fiber.find("kahler")) {
      for (const auto& part : cfgdetail::split(e->value, ',')) {
        if (part.empty()) continue;
        cfg.kahler.push_back(cfgdetail::parse_rational_field({part, e->line}, "kahler"));
      }
    }
    fiber.finish();
  }

  {
    cfgdetail::SectionReader base(cf, "base");
    auto mode = base.get_string("mode").value_or("exact-only");
    if (mode == "exact-only") {
      cfg.mode = BaseMode::exact_only;
    } else if (mode == "torus") {
      cfg.mode = BaseMode::torus;
    } else {
      throw ConfigError(cfgdetail::where(base.require("mode")) +
                        "field 'mode' expects 'exact-only' or 'torus', got '" + mode + "'");
    }
    cfg.lx = base.get_rational("lx").value_or(Rational(1));
    cfg.ly = base.get_rational("ly").value_or(Rational(1));
    if (cfg.lx <= 0 || cfg.ly <= 0)
      throw ConfigError("config section [base]: torus periods must be positive");
    cfg.d1 = base.get_int("d1").value_or(0);
    cfg.d2 = base.get_int("d2").value_or(0);

    cfg.w1.name = "W1";
    cfg.w2.name = "W2";
    cfg.w1.rank = Integer(base.get_int("w1_rank").value_or(1));
    cfg.w2.rank = Integer(base.get_int("w2_rank").value_or(1));
    cfg.w1.degree = base.get_rational("w1_degree").value_or(Rational(cfg.d1));
    cfg.w2.degree = base.get_rational("w2_degree").value_or(Rational(cfg.d2));
    if (cfg.mode == BaseMode::torus) {
      if (cfg.w1.rank != 1 || cfg.w2.rank != 1)
        throw ConfigError("config section [base]: torus runs use line bundles (rank 1)");
      if (cfg.w1.degree != cfg.d1 || cfg.w2.degree != cfg.d2)
        throw ConfigError("config section [base]: torus degrees d1/d2 disagree with w1/w2 degrees");
    }
    if (auto h0 = base.get_int("h0_dim")) {
      if (*h0 < 0) throw ConfigError("config section [base]: h0_dim must be nonnegative");
      cfg.w1.h0_dim = Integer(*h0);
      cfg.h0_dim_given = true;
    } else if (cfg.mode == BaseMode::torus) {
      // Hom(W2, W1) on the flat torus: h^0 = d for degree d > 0, the
      // constants for degree 0, nothing for negative degree.
      int m = cfg.d1 - cfg.d2;
      cfg.w1.h0_dim = Integer(m > 0 ? m : (m == 0 ? 1 : 0));
      cfg.h0_dim_given = true;
    }
    base.finish();
  }

  bool phi_explicit = false;
  if (cf.has_section("sections")) {
    cfgdetail::SectionReader secs(cf, "sections");
    for (int i = 1;; ++i) {
      std::string suffix = i == 1 ? "" : "." + std::to_string(i);
      auto* dv = secs.find("divisor" + suffix);
      auto* sc = secs.find("scale" + suffix);
      if (!dv && !sc) break;
      SectionSpecConfig s;
      if (sc) s.scale = cfgdetail::parse_double_field(*sc, "scale" + suffix);
      if (!(s.scale > 0)) throw ConfigError("config section [sections]: scale must be positive");
      if (dv) s.divisor = cfgdetail::parse_divisor_field(*dv, "divisor" + suffix);
      cfg.sections.push_back(std::move(s));
    }
    if (auto nz = secs.get_bool("phi_nonzero")) {
      cfg.phi_nonzero = *nz;
      phi_explicit = true;
    }
    secs.finish();
    if (cfg.mode == BaseMode::exact_only && !cfg.sections.empty())
      throw ConfigError("config section [sections]: divisor data needs a torus base");
  }
  if (!phi_explicit && cfg.mode == BaseMode::torus) cfg.phi_nonzero = !cfg.sections.empty();

  {
    cfgdetail::SectionReader sig(cf, "sigma");
    if (auto v = sig.get_rational("value")) cfg.sigma = *v;
    if (cfg.sigma <= 0) throw ConfigError("config section [sigma]: value must be positive");
    auto lo = sig.get_rational("sweep_lo");
    auto hi = sig.get_rational("sweep_hi");
    auto pts = sig.get_int("sweep_points");
    auto slv = sig.get_bool("sweep_solve");
    if (lo || hi || pts || slv) {
      if (!lo || !hi)
        throw ConfigError("config section [sigma]: sweep needs both sweep_lo and sweep_hi");
      SweepSpec sw;
      sw.lo = *lo;
      sw.hi = *hi;
      sw.points = pts.value_or(2);
      sw.solve = slv.value_or(false);
      if (sw.lo <= 0 || sw.hi <= 0)
        throw ConfigError("config section [sigma]: sweep endpoints must be positive");
      if (sw.hi < sw.lo)
        throw ConfigError("config section [sigma]: sweep_hi must be >= sweep_lo");
      if (sw.points < 1 || (sw.points < 2 && sw.hi != sw.lo))
        throw ConfigError("config section [sigma]: sweep_points too small for the range");
      cfg.sweep = sw;
    }
    sig.finish();
  }

  if (cf.has_section("solver")) {
    cfgdetail::SectionReader sol(cf, "solver");
    cfg.tol = sol.get_double("tol").value_or(cfg.tol);
    cfg.grid = sol.get_int("grid").value_or(cfg.grid);
    cfg.max_iter = sol.get_int("max_iter").value_or(cfg.max_iter);
    cfg.fiber_nodes = sol.get_int("fiber_nodes").value_or(cfg.fiber_nodes);
    if (auto s = sol.get_int("seed")) {
      if (*s < 0) throw ConfigError("config section [solver]: seed must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(*s);
    }
    sol.finish();
    if (!(cfg.tol > 0)) throw ConfigError("config section [solver]: tol must be positive");
    if (cfg.grid < 4) throw ConfigError("config section [solver]: grid must be >= 4");
    if (cfg.max_iter < 1) throw ConfigError("config section [solver]: max_iter must be >= 1");
    if (cfg.fiber_nodes < 8)
      throw ConfigError("config section [solver]: fiber_nodes must be >= 8");
  }

  if (cf.has_section("output")) {
    cfgdetail::SectionReader out(cf, "output");
    cfg.report_path = out.get_string("report").value_or("");
    cfg.history_csv = out.get_string("history_csv").value_or("");
    cfg.field_csv = out.get_string("field_csv").value_or("");
    cfg.sweep_csv = out.get_string("sweep_csv").value_or("");
    out.finish();
  }

  // Cross-field checks that do not need the Lie layer.
  int mass = 0;
  for (const auto& s : cfg.sections)
    for (const auto& p : s.divisor) mass += p.mult;
  if (cfg.mode == BaseMode::torus && !cfg.sections.empty() && mass != cfg.d1 - cfg.d2)
    throw ConfigError("config section [sections]: divisor multiplicities sum to " +
                      std::to_string(mass) + " but d1 - d2 = " + std::to_string(cfg.d1 - cfg.d2));
  for (const auto& s : cfg.sections)
    for (const auto& p : s.divisor)
      if (p.x < 0 || p.x >= to_double(cfg.lx) || p.y < 0 || p.y >= to_double(cfg.ly))
        throw ConfigError("config section [sections]: divisor point outside the torus cell");
  return cfg;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pipeline_config(buf.str());
}

}  // namespace flagvortex
