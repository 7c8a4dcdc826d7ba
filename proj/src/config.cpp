#include "cohesive/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cohesive/errors.hpp"

namespace cohesive {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double to_number(const std::string& text, const ConfigEntry& e) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", e.key, text), e.key, e.line);
  }
  return v;
}

int to_int(const ConfigEntry& e) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size() || e.value.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", e.key, e.value), e.key, e.line);
  }
  return v;
}

// Lookup table over the entries; tracks which keys were consumed so leftovers
// can be reported as unknown.
class Table {
 public:
  explicit Table(std::vector<ConfigEntry> entries) {
    for (auto& e : entries) {
      const std::string k = e.key;
      by_key_.emplace(k, std::move(e));
    }
  }

  const ConfigEntry* find(const std::string& key) {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  const ConfigEntry& require(const std::string& key) {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError(fmt::format("missing required key '{}'", key), key, 0);
    return *e;
  }

  double number(const std::string& key) {
    const ConfigEntry& e = require(key);
    return to_number(e.value, e);
  }

  std::optional<double> number_opt(const std::string& key) {
    const ConfigEntry* e = find(key);
    if (!e) return std::nullopt;
    return to_number(e->value, *e);
  }

  void reject_unknown() const {
    const ConfigEntry* worst = nullptr;
    for (const auto& [k, e] : by_key_) {
      if (used_.count(k)) continue;
      if (!worst || e.line < worst->line) worst = &e;
    }
    if (worst) throw ConfigError(fmt::format("unknown key '{}'", worst->key), worst->key, worst->line);
  }

 private:
  std::map<std::string, ConfigEntry> by_key_;
  std::set<std::string> used_;
};

CohesiveLaw1D parse_1d(Table& t, const std::string& prefix, double default_energy) {
  const ConfigEntry& kind = t.require(prefix + "kind");
  const std::string& k = kind.value;
  try {
    if (k == "exponential") return CohesiveLaw1D::exponential(t.number(prefix + "rho"));
    if (k == "cubic") return CohesiveLaw1D::cubic(t.number(prefix + "delta"));
    if (k == "ppr_intrinsic" || k == "ppr_extrinsic") {
      const double alpha = t.number(prefix + "alpha");
      const double sigma = t.number(prefix + "sigma");
      const double energy = t.number_opt(prefix + "energy").value_or(default_energy);
      if (k == "ppr_extrinsic") return CohesiveLaw1D::ppr_extrinsic(alpha, sigma, energy);
      return CohesiveLaw1D::ppr_intrinsic(alpha, sigma, t.number(prefix + "lambda"), energy);
    }
    if (k == "intrinsic") {
      const double eps = t.number(prefix + "epsilon");
      return make_intrinsic(parse_1d(t, prefix + "base.", default_energy), eps);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const CohesiveError& err) {
    throw ConfigError(fmt::format("{}kind = {}: {}", prefix, k, err.what()), kind.key, kind.line);
  }
  throw ConfigError(fmt::format("{}: unknown law kind '{}'", kind.key, k), kind.key, kind.line);
}

}  // namespace

std::vector<ConfigEntry> parse_key_values(std::istream& in) {
  std::vector<ConfigEntry> out;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("expected 'key = value', got '{}'", text), {}, line);
    ConfigEntry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("empty key", {}, line);
    if (!seen.insert(e.key).second) throw ConfigError(fmt::format("duplicate key '{}'", e.key), e.key, line);
    out.push_back(std::move(e));
  }
  return out;
}

LoadingDensity parse_law(std::istream& in) {
  Table t(parse_key_values(in));
  const ConfigEntry& mode = t.require("mode");
  CouplingF f;
  if (mode.value == "potential") {
    f.mode = CouplingMode::Potential;
  } else if (mode.value == "nonpotential") {
    f.mode = CouplingMode::NonPotential;
  } else {
    throw ConfigError(fmt::format("mode must be potential or nonpotential, got '{}'", mode.value), mode.key,
                      mode.line);
  }
  f.energy1 = t.number("energy1");
  f.energy2 = t.number("energy2");
  const ConfigEntry& c = t.require("coupling");
  f.coupling = c.value == "auto" ? std::max(f.energy1, f.energy2) : to_number(c.value, c);
  CohesiveLaw1D p1 = parse_1d(t, "psi1.", f.energy1);
  CohesiveLaw1D p2 = parse_1d(t, "psi2.", f.energy2);
  t.reject_unknown();
  try {
    return LoadingDensity(f, std::move(p1), std::move(p2));
  } catch (const CohesiveError& err) {
    throw ConfigError(err.what(), "energy1", 0);
  }
}

LoadingDensity load_law(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open law file '{}'", path.string()));
  try {
    return parse_law(in);
  } catch (const ConfigError& e) {
    throw e.in_file(path.string());
  }
}

LaminateProblem parse_problem(std::istream& in, const std::filesystem::path& base_dir) {
  Table t(parse_key_values(in));
  LaminateProblem p;
  auto int_opt = [&](const std::string& key, int& dst) {
    if (const ConfigEntry* e = t.find(key)) dst = to_int(*e);
  };
  auto num_opt = [&](const std::string& key, double& dst) {
    if (auto v = t.number_opt(key)) dst = *v;
  };
  int_opt("nx", p.nx);
  int_opt("ny", p.ny);
  num_opt("x_min", p.x_min);
  num_opt("x_max", p.x_max);
  num_opt("y_min", p.y_min);
  num_opt("y_max", p.y_max);
  p.layer1.lambda = t.number("layer1.lambda");
  p.layer1.mu = t.number("layer1.mu");
  p.layer2.lambda = t.number("layer2.lambda");
  p.layer2.mu = t.number("layer2.mu");

  if (const ConfigEntry* e = t.find("dirichlet")) {
    p.dirichlet = 0u;
    for (const std::string& w : split(e->value, ',')) {
      if (w == "left") p.dirichlet |= kLeft;
      else if (w == "right") p.dirichlet |= kRight;
      else if (w == "bottom") p.dirichlet |= kBottom;
      else if (w == "top") p.dirichlet |= kTop;
      else throw ConfigError(fmt::format("dirichlet: unknown edge '{}'", w), e->key, e->line);
    }
  }

  {
    const ConfigEntry& e = t.require("program");
    for (const std::string& knot : split(e.value, ';')) {
      if (knot.empty()) continue;
      const auto w = words(knot);
      if (w.size() != 3) throw ConfigError("program: each knot is 't ux uy'", e.key, e.line);
      p.program.push_back({to_number(w[0], e), {to_number(w[1], e), to_number(w[2], e)}});
    }
    if (p.program.empty()) throw ConfigError("program: no knots", e.key, e.line);
  }
  if (const ConfigEntry* e = t.find("offset")) {
    const auto w = words(e->value);
    if (w.size() != 2) throw ConfigError("offset: expected 'ux uy'", e->key, e->line);
    p.offset = {to_number(w[0], *e), to_number(w[1], *e)};
  }
  {
    const ConfigEntry& e = t.require("law");
    std::filesystem::path lp(e.value);
    if (lp.is_relative()) lp = base_dir / lp;
    p.law = make_law(load_law(lp));
  }
  num_opt("tau", p.tau);
  num_opt("t_end", p.t_end);
  if (const ConfigEntry* e = t.find("scheme")) {
    if (e->value == "energetic") p.scheme = Scheme::Energetic;
    else if (e->value == "equilibrium") p.scheme = Scheme::Equilibrium;
    else throw ConfigError(fmt::format("scheme must be energetic or equilibrium, got '{}'", e->value), e->key, e->line);
  }
  num_opt("tol_min", p.solver.tol_min);
  int_opt("max_iter", p.solver.max_iter);
  num_opt("eps_reg", p.solver.eps_reg);
  num_opt("tol_fp", p.solver.tol_fp);
  num_opt("theta", p.solver.theta);
  int_opt("max_picard", p.solver.max_picard);
  t.reject_unknown();
  if (!(p.solver.theta > 0.0 && p.solver.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]", "theta", 0);
  return p;
}

LaminateProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open problem file '{}'", path.string()));
  try {
    return parse_problem(in, path.parent_path());
  } catch (const ConfigError& e) {
    throw e.in_file(path.string());
  }
}

}  // namespace cohesive
