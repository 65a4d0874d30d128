#include "minfib/config.hpp"

#include <fstream>
#include <set>

namespace minfib {

namespace {

void require_keys(const Json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required = {}) {
  if (!obj.is_object())
    throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key))
      throw ConfigError(where + ": missing required key '" + key + "'");
}

int get_int(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number_integer())
    throw ConfigError(where + ": '" + key + "' must be an integer");
  return obj.at(key).get<int>();
}

double get_positive(const Json& j, const std::string& where) {
  if (!j.is_number())
    throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ConfigError(where + ": value must be positive");
  return v;
}

ManifoldKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "sphere") return ManifoldKind::Sphere;
  if (s == "complex_projective") return ManifoldKind::ComplexProjective;
  if (s == "special_orthogonal") return ManifoldKind::SpecialOrthogonal;
  if (s == "unitary") return ManifoldKind::Unitary;
  if (s == "quaternionic_unitary") return ManifoldKind::QuaternionicUnitary;
  throw ConfigError(where + ": unknown manifold kind '" + s + "'");
}

Eigen::VectorXcd parse_complex_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  Eigen::VectorXcd v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    v(static_cast<Eigen::Index>(k)) =
        parse_complex(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

Eigen::MatrixXcd parse_complex_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ConfigError(where + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXcd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ConfigError(where + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_complex(j[r][c], where + " entry");
  }
  return m;
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& where) {
  require_keys(j, where, {"re", "im"}, {"re", "im"});
  if (!j.at("re").is_number() || !j.at("im").is_number())
    throw ConfigError(where + ": 're' and 'im' must be numbers");
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json complex_to_json(Complex z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "eigenfamily",   "polynomial", "lemma-eigenvalues", "hc-first-order",
      "regularity",    "minimality", "bg-identity",       "product-rule"};
  return names;
}

RunConfig RunConfig::from_json(const Json& j) {
  require_keys(j, "config",
               {"seed", "manifold", "family", "members", "checks", "samples",
                "target", "tolerances", "steps", "export"},
               {"seed", "manifold", "family"});
  RunConfig cfg;

  if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
    throw ConfigError("config: 'seed' must be a non-negative integer");
  if (j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() < 0)
    throw ConfigError("config: 'seed' must be a non-negative integer");
  cfg.seed = j.at("seed").get<std::uint64_t>();

  const Json& man = j.at("manifold");
  require_keys(man, "manifold", {"kind", "n"}, {"kind", "n"});
  if (!man.at("kind").is_string())
    throw ConfigError("manifold: 'kind' must be a string");
  cfg.manifold.kind = parse_kind(man.at("kind").get<std::string>(), "manifold");
  cfg.manifold.n = get_int(man, "n", "manifold");
  if (cfg.manifold.n < 1) throw ConfigError("manifold: 'n' must be >= 1");

  cfg.family = j.at("family");
  if (!cfg.family.is_object() || !cfg.family.contains("id"))
    throw ConfigError("family: expected an object with an 'id' key");

  if (j.contains("members")) {
    if (!j.at("members").is_array())
      throw ConfigError("config: 'members' must be an array");
    for (const auto& m : j.at("members")) cfg.members.push_back(m);
  }

  if (j.contains("checks")) {
    if (!j.at("checks").is_array())
      throw ConfigError("config: 'checks' must be an array");
    for (const auto& c : j.at("checks")) {
      if (!c.is_string()) throw ConfigError("checks: entries must be strings");
      const std::string name = c.get<std::string>();
      bool known = false;
      for (const auto& k : known_checks()) known = known || k == name;
      if (!known) throw ConfigError("checks: unknown check '" + name + "'");
      cfg.checks.push_back(name);
    }
  }

  if (j.contains("samples")) {
    const Json& s = j.at("samples");
    require_keys(s, "samples", {"points", "fibre_points", "directions"});
    if (s.contains("points")) cfg.points = get_int(s, "points", "samples");
    if (s.contains("fibre_points"))
      cfg.fibre_points = get_int(s, "fibre_points", "samples");
    if (s.contains("directions"))
      cfg.directions = get_int(s, "directions", "samples");
    if (cfg.points < 1 || cfg.fibre_points < 1 || cfg.directions < 1)
      throw ConfigError("samples: counts must be positive");
  }

  if (j.contains("target"))
    cfg.target = parse_complex(j.at("target"), "target");

  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object())
      throw ConfigError("config: 'tolerances' must be an object");
    for (const auto& [key, value] : j.at("tolerances").items()) {
      bool known = false;
      for (const auto& k : known_checks())
        known = known || key.rfind(k, 0) == 0;
      known = known || key == "estimate" || key == "sample-fibre";
      if (!known) throw ConfigError("tolerances: unknown check '" + key + "'");
      cfg.tolerances[key] = get_positive(value, "tolerances." + key);
    }
  }

  if (j.contains("steps")) {
    const Json& s = j.at("steps");
    require_keys(s, "steps",
                 {"first_derivative", "second_derivative", "curvature"});
    if (s.contains("first_derivative"))
      cfg.step_first = get_positive(s.at("first_derivative"),
                                    "steps.first_derivative");
    if (s.contains("second_derivative"))
      cfg.step_second = get_positive(s.at("second_derivative"),
                                     "steps.second_derivative");
    if (s.contains("curvature"))
      cfg.step_curvature = get_positive(s.at("curvature"), "steps.curvature");
  }

  if (j.contains("export")) {
    const Json& e = j.at("export");
    require_keys(e, "export", {"csv", "json"});
    if (e.contains("csv")) cfg.export_csv = e.at("csv").get<std::string>();
    if (e.contains("json")) cfg.export_json = e.at("json").get<std::string>();
  }

  cfg.echo = j;
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      e.what());
  }
  return from_json(j);
}

double RunConfig::tolerance_or(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? fallback : it->second;
}

CalculusOptions RunConfig::calculus_options() const {
  CalculusOptions opts;
  opts.d1 = Stencil::first_derivative(step_first);
  opts.d2 = Stencil::second_derivative(step_second);
  return opts;
}

FibreOptions RunConfig::fibre_options() const {
  FibreOptions opts;
  opts.calculus = calculus_options();
  opts.curvature_step = step_curvature;
  return opts;
}

// --- family construction -----------------------------------------------------

namespace {

CatalogEntry build_family(const RunConfig& cfg, const Json& family) {
  if (!family.is_object() || !family.contains("id") ||
      !family.at("id").is_string())
    throw ConfigError("family: expected an object with a string 'id'");
  const std::string id = family.at("id").get<std::string>();
  const ManifoldSpec& spec = cfg.manifold;
  auto expect_kind = [&](ManifoldKind kind, const char* what) {
    if (spec.kind != kind)
      throw ConfigError("family '" + id + "' requires a " + std::string(what) +
                        " manifold, got " + spec.name());
  };
  auto keys = [&](const std::set<std::string>& required) {
    std::set<std::string> allowed = required;
    allowed.insert("id");
    require_keys(family, "family '" + id + "'", allowed, required);
  };

  if (id == "sphere_basic") {
    keys({"j"});
    expect_kind(ManifoldKind::Sphere, "sphere");
    return sphere_basic(spec.n, get_int(family, "j", "family"));
  }
  if (id == "cp_basic") {
    keys({"j", "k", "alpha"});
    expect_kind(ManifoldKind::ComplexProjective, "complex_projective");
    return cp_basic(spec.n, get_int(family, "j", "family"),
                    get_int(family, "k", "family"),
                    get_int(family, "alpha", "family"));
  }
  if (id == "so_trace") {
    keys({"p", "a"});
    expect_kind(ManifoldKind::SpecialOrthogonal, "special_orthogonal");
    return so_trace_family(spec.n,
                           parse_complex_vector(family.at("p"), "family.p"),
                           parse_complex_vector(family.at("a"), "family.a"));
  }
  if (id == "u_trace") {
    keys({"p", "a"});
    expect_kind(ManifoldKind::Unitary, "unitary");
    return u_trace_family(spec.n,
                          parse_complex_vector(family.at("p"), "family.p"),
                          parse_complex_vector(family.at("a"), "family.a"));
  }
  if (id == "sp_trace") {
    keys({"p", "a", "b"});
    expect_kind(ManifoldKind::QuaternionicUnitary, "quaternionic_unitary");
    return sp_trace_family(spec.n,
                           parse_complex_vector(family.at("p"), "family.p"),
                           parse_complex_vector(family.at("a"), "family.a"),
                           parse_complex_vector(family.at("b"), "family.b"));
  }
  if (id == "sphere_quadratic") {
    keys({"matrix"});
    expect_kind(ManifoldKind::Sphere, "sphere");
    const Eigen::MatrixXcd a =
        parse_complex_matrix(family.at("matrix"), "family.matrix");
    if (a.rows() != spec.n)
      throw ConfigError("family.matrix: size must match the manifold n");
    return sphere_quadratic(a);
  }
  if (id == "cp_diagonal") {
    keys({"a"});
    expect_kind(ManifoldKind::ComplexProjective, "complex_projective");
    const Eigen::VectorXcd a = parse_complex_vector(family.at("a"), "family.a");
    if (2 * a.size() - 1 != spec.n)
      throw ConfigError(
          "cp_diagonal: manifold must be CP^{2k-1} with k coefficients");
    return cp_diagonal(static_cast<int>(a.size()), a);
  }
  if (id == "so2n_degree_d") {
    keys({"a", "degree"});
    expect_kind(ManifoldKind::SpecialOrthogonal, "special_orthogonal");
    const Eigen::VectorXcd a = parse_complex_vector(family.at("a"), "family.a");
    if (2 * a.size() != spec.n)
      throw ConfigError("so2n_degree_d: manifold must be SO(2k) with k "
                        "coefficients");
    return so2n_degree_d(static_cast<int>(a.size()), a,
                         get_int(family, "degree", "family"));
  }
  if (id == "u_first_row_degree_d") {
    keys({"a", "degree"});
    expect_kind(ManifoldKind::Unitary, "unitary");
    return u_first_row_degree_d(
        spec.n, parse_complex_vector(family.at("a"), "family.a"),
        get_int(family, "degree", "family"));
  }
  if (id == "u_minor") {
    keys({});
    expect_kind(ManifoldKind::Unitary, "unitary");
    return u_minor(spec.n);
  }
  if (id == "sp_z11") {
    keys({});
    expect_kind(ManifoldKind::QuaternionicUnitary, "quaternionic_unitary");
    return sp_z11(spec.n);
  }
  if (id == "homogeneous_poly") {
    keys({"base_id", "base_members", "terms", "degree"});
    const std::string base_id = family.at("base_id").get<std::string>();
    if (!family.at("base_members").is_array() ||
        family.at("base_members").empty())
      throw ConfigError("family.base_members: expected a non-empty array");
    std::vector<CatalogEntry> base;
    for (const auto& params : family.at("base_members")) {
      Json member = params;
      member["id"] = base_id;
      base.push_back(build_family(cfg, member));
    }
    if (!family.at("terms").is_array())
      throw ConfigError("family.terms: expected an array");
    std::vector<MonomialTerm> terms;
    for (const auto& t : family.at("terms")) {
      require_keys(t, "family.terms", {"coeff", "exponents"},
                   {"coeff", "exponents"});
      MonomialTerm term;
      term.coeff = parse_complex(t.at("coeff"), "family.terms.coeff");
      for (const auto& e : t.at("exponents"))
        term.exponents.push_back(e.get<int>());
      terms.push_back(term);
    }
    return homogeneous_poly(base, terms, get_int(family, "degree", "family"));
  }
  throw ConfigError("family: unknown id '" + id + "'");
}

}  // namespace

std::vector<CatalogEntry> build_entries(const RunConfig& config) {
  std::vector<CatalogEntry> entries;
  try {
    entries.push_back(build_family(config, config.family));
    for (const auto& params : config.members) {
      Json member = params;
      member["id"] = config.family.at("id");
      entries.push_back(build_family(config, member));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("family construction failed: ") + e.what());
  }
  const EigenData base = entries.front().predicted;
  for (const auto& e : entries)
    if (std::abs(e.predicted.lambda - base.lambda) > 1e-12 ||
        std::abs(e.predicted.mu - base.mu) > 1e-12)
      throw ConfigError(
          "members: all family members must share one predicted pair");
  return entries;
}

}  // namespace minfib
