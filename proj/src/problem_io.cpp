#include "stochave/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stochave {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ProblemFileError("field '" + field + "': " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

Index count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(field, "expected a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

Vector vector_of(const json& v, Index len, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  if (Index(v.size()) != len) {
    std::ostringstream msg;
    msg << "expected " << len << " entries, got " << v.size();
    fail(field, msg.str());
  }
  Vector out(len);
  for (Index i = 0; i < len; ++i)
    out[i] = number(v[std::size_t(i)], field + "[" + std::to_string(i) + "]");
  return out;
}

Matrix matrix_of(const json& v, Index rows, Index cols, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of rows");
  if (Index(v.size()) != rows) {
    std::ostringstream msg;
    msg << "expected " << rows << " rows, got " << v.size();
    fail(field, msg.str());
  }
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    out.row(i) = vector_of(v[std::size_t(i)], cols, field + "[" + std::to_string(i) + "]").transpose();
  return out;
}

Matrix matrix_any_cols(const json& v, Index rows, const std::string& field) {
  if (!v.is_array() || v.empty() || !v[0].is_array()) fail(field, "expected a non-empty array of rows");
  return matrix_of(v, rows, Index(v[0].size()), field);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ProblemFileError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Distribution parse_distribution(const json& v, Index m) {
  if (!v.is_object()) fail("distribution", "expected an object");
  const json& kind = member(v, "kind", "distribution");
  if (kind == "uniform_box") return UniformBox{};
  if (kind != "finite_scenarios") fail("distribution.kind", "expected 'uniform_box' or 'finite_scenarios'");
  const json& list = member(v, "scenarios", "distribution");
  if (!list.is_array() || list.empty()) fail("distribution.scenarios", "expected a non-empty array");
  FiniteScenarios dist;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "distribution.scenarios[" + std::to_string(i) + "]";
    dist.scenarios.push_back(Scenario{vector_of(member(list[i], "omega", path), m, path + ".omega"),
                                      number(member(list[i], "p", path), path + ".p")});
  }
  return dist;
}

SolverConfig parse_solver(const json& v) {
  if (!v.is_object()) fail("solver", "expected an object");
  SolverConfig cfg;
  auto real = [&](const char* key, double& out) {
    if (v.contains(key)) out = number(v[key], std::string("solver.") + key);
  };
  auto integer = [&](const char* key, int& out) {
    if (v.contains(key)) out = int(count(v[key], std::string("solver.") + key));
  };
  real("rho_backtrack", cfg.rho_backtrack);
  real("sigma", cfg.sigma);
  real("delta", cfg.delta);
  real("mu0", cfg.mu0);
  real("gamma_bar", cfg.gamma_bar);
  real("epsilon", cfg.epsilon);
  integer("max_iter", cfg.max_iter);
  integer("max_backtracks", cfg.max_backtracks);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    fail("solver", e.what());
  }
  return cfg;
}

SamplerSpec parse_sampler(const json& v) {
  if (!v.is_object()) fail("sampler", "expected an object");
  SamplerSpec spec;
  const json& kind = member(v, "kind", "sampler");
  if (v.contains("count")) spec.count = std::size_t(count(v["count"], "sampler.count"));
  if (kind == "halton") {
    Halton h;
    if (v.contains("offset")) h.offset = std::uint64_t(count(v["offset"], "sampler.offset"));
    spec.kind = h;
  } else if (kind == "pseudo_random") {
    PseudoRandom p;
    if (v.contains("seed")) {
      if (!v["seed"].is_number_unsigned()) fail("sampler.seed", "expected an unsigned integer");
      p.seed = v["seed"].get<std::uint64_t>();
    }
    spec.kind = p;
  } else if (kind == "scenarios") {
    spec.kind = Scenarios{};
  } else {
    fail("sampler.kind", "expected 'halton', 'pseudo_random' or 'scenarios'");
  }
  if (spec.count < 1) fail("sampler.count", "must be >= 1");
  return spec;
}

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const Matrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) rows.push_back(to_json(Vector(a.row(i).transpose())));
  return rows;
}

}  // namespace

ProblemFile parse_problem_file(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ProblemFileError("problem file must be a JSON object");
  const Index n = count(member(doc, "n", ""), "n");
  const Index m = count(member(doc, "m", ""), "m");
  if (n < 1) fail("n", "must be >= 1");

  Matrix a_base = matrix_of(member(doc, "A_base", ""), n, n, "A_base");
  Vector b_base = vector_of(member(doc, "b_base", ""), n, "b_base");

  std::vector<Matrix> a_terms;
  std::vector<Vector> b_terms;
  const json& at = member(doc, "A_terms", "");
  const json& bt = member(doc, "b_terms", "");
  if (!at.is_array() || Index(at.size()) != m) fail("A_terms", "expected " + std::to_string(m) + " matrices");
  if (!bt.is_array() || Index(bt.size()) != m) fail("b_terms", "expected " + std::to_string(m) + " vectors");
  for (Index j = 0; j < m; ++j) {
    const std::string idx = "[" + std::to_string(j) + "]";
    a_terms.push_back(matrix_of(at[std::size_t(j)], n, n, "A_terms" + idx));
    b_terms.push_back(vector_of(bt[std::size_t(j)], n, "b_terms" + idx));
  }

  Distribution dist = UniformBox{};
  if (doc.contains("distribution")) dist = parse_distribution(doc["distribution"], m);

  std::optional<SolverConfig> solver;
  if (doc.contains("solver")) solver = parse_solver(doc["solver"]);
  std::optional<SamplerSpec> sampler;
  if (doc.contains("sampler")) sampler = parse_sampler(doc["sampler"]);

  try {
    return ProblemFile{StochasticProblem(std::move(a_base), std::move(a_terms), std::move(b_base),
                                         std::move(b_terms), std::move(dist)),
                       solver, sampler};
  } catch (const ProblemFileError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ProblemFileError(e.what());
  }
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  return parse_problem_file(read_file(path));
}

std::string serialize_problem_file(const ProblemFile& file) {
  const StochasticProblem& p = file.problem;
  json doc;
  doc["n"] = p.n();
  doc["m"] = p.m();
  doc["A_base"] = to_json(p.a_base());
  doc["A_terms"] = json::array();
  for (const auto& a : p.a_terms()) doc["A_terms"].push_back(to_json(a));
  doc["b_base"] = to_json(p.b_base());
  doc["b_terms"] = json::array();
  for (const auto& b : p.b_terms()) doc["b_terms"].push_back(to_json(b));

  if (p.is_uniform_box()) {
    doc["distribution"] = {{"kind", "uniform_box"}};
  } else {
    json list = json::array();
    for (const auto& s : p.scenarios().scenarios) list.push_back({{"omega", to_json(s.omega)}, {"p", s.probability}});
    doc["distribution"] = {{"kind", "finite_scenarios"}, {"scenarios", list}};
  }

  if (file.solver) {
    const SolverConfig& c = *file.solver;
    doc["solver"] = {{"rho_backtrack", c.rho_backtrack}, {"sigma", c.sigma},
                     {"delta", c.delta},                 {"mu0", c.mu0},
                     {"gamma_bar", c.gamma_bar},         {"epsilon", c.epsilon},
                     {"max_iter", c.max_iter},           {"max_backtracks", c.max_backtracks}};
  }
  if (file.sampler) {
    json s = {{"count", file.sampler->count}};
    if (const auto* h = std::get_if<Halton>(&file.sampler->kind)) {
      s["kind"] = "halton";
      s["offset"] = h->offset;
    } else if (const auto* r = std::get_if<PseudoRandom>(&file.sampler->kind)) {
      s["kind"] = "pseudo_random";
      s["seed"] = r->seed;
    } else {
      s["kind"] = "scenarios";
    }
    doc["sampler"] = s;
  }
  return doc.dump(2) + "\n";
}

CaseTwoInstance parse_case2_file(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ProblemFileError("case II file must be a JSON object");
  const json& a = member(doc, "A", "");
  if (!a.is_array() || a.empty()) fail("A", "expected a non-empty square matrix");
  const Index n = Index(a.size());
  Matrix A = matrix_of(a, n, n, "A");
  Vector b = vector_of(member(doc, "b_tilde", ""), n, "b_tilde");
  Matrix T = matrix_any_cols(member(doc, "T", ""), n, "T");
  try {
    return CaseTwoInstance(std::move(A), std::move(b), std::move(T));
  } catch (const InvalidArgument& e) {
    throw ProblemFileError(e.what());
  }
}

CaseTwoInstance load_case2_file(const std::filesystem::path& path) {
  return parse_case2_file(read_file(path));
}

}  // namespace stochave
