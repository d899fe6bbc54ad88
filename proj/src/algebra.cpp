#include "duflo/algebra.hpp"

#include "duflo/errors.hpp"
#include "json_util.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace duflo {

bool invert_matrix(const std::vector<Rational>& m, int n, std::vector<Rational>& inverse, Rational& det) {
  std::vector<Rational> a = m;
  inverse.assign(static_cast<size_t>(n) * n, Rational(0));
  for (int i = 0; i < n; ++i) inverse[i * n + i] = 1;
  det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r * n + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) {
      det = 0;
      inverse.clear();
      return false;
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inverse[piv * n + j], inverse[col * n + j]);
      }
      det = -det;
    }
    Rational p = a[col * n + col];
    det *= p;
    for (int j = 0; j < n; ++j) {
      a[col * n + j] /= p;
      inverse[col * n + j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      Rational f = a[r * n + col];
      for (int j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
        inverse[r * n + j] -= f * inverse[col * n + j];
      }
    }
  }
  return true;
}

MetricLieAlgebra::MetricLieAlgebra(std::string name, int dim, std::vector<Rational> structure,
                                   std::vector<Rational> metric, std::vector<std::string> basis_names)
    : name_(std::move(name)), dim_(dim), structure_(std::move(structure)), metric_(std::move(metric)),
      names_(std::move(basis_names)) {
  if (dim_ < 0) throw UsageError("algebra dimension must be non-negative");
  const size_t n = static_cast<size_t>(dim_);
  if (structure_.size() != n * n * n)
    throw UsageError("structure constants must have dim^3 = " + std::to_string(n * n * n) + " entries");
  if (metric_.size() != n * n) throw UsageError("metric must have dim^2 = " + std::to_string(n * n) + " entries");
  if (names_.empty())
    for (int i = 0; i < dim_; ++i) names_.push_back("x" + std::to_string(i));
  if (static_cast<int>(names_.size()) != dim_) throw UsageError("basis name count differs from dimension");
  if (!invert_matrix(metric_, dim_, metric_inverse_, det_)) metric_inverse_.assign(n * n, Rational(0));
}

bool MetricLieAlgebra::is_abelian() const {
  for (const auto& v : structure_)
    if (v != 0) return false;
  return true;
}

bool ValidationReport::ok() const {
  for (const auto& a : axioms)
    if (!a.passed) return false;
  return true;
}

const AxiomResult* ValidationReport::find(const std::string& axiom) const {
  for (const auto& a : axioms)
    if (a.axiom == axiom) return &a;
  return nullptr;
}

ValidationReport validate(const MetricLieAlgebra& g) {
  const int n = g.dim();
  ValidationReport report;

  AxiomResult anti{"antisymmetry", true, {}, 0};
  for (int i = 0; i < n && anti.passed; ++i)
    for (int j = 0; j < n && anti.passed; ++j)
      for (int k = 0; k < n && anti.passed; ++k) {
        Rational r = g.c(i, j, k) + g.c(j, i, k);
        if (r != 0) anti = {"antisymmetry", false, {i, j, k}, r};
      }
  report.axioms.push_back(anti);

  AxiomResult jacobi{"jacobi", true, {}, 0};
  for (int i = 0; i < n && jacobi.passed; ++i)
    for (int j = 0; j < n && jacobi.passed; ++j)
      for (int k = 0; k < n && jacobi.passed; ++k)
        for (int l = 0; l < n && jacobi.passed; ++l) {
          Rational r = 0;
          for (int m = 0; m < n; ++m)
            r += g.c(i, j, m) * g.c(m, k, l) + g.c(j, k, m) * g.c(m, i, l) + g.c(k, i, m) * g.c(m, j, l);
          if (r != 0) jacobi = {"jacobi", false, {i, j, k, l}, r};
        }
  report.axioms.push_back(jacobi);

  AxiomResult sym{"metric_symmetry", true, {}, 0};
  for (int i = 0; i < n && sym.passed; ++i)
    for (int j = 0; j < n && sym.passed; ++j) {
      Rational r = g.metric(i, j) - g.metric(j, i);
      if (r != 0) sym = {"metric_symmetry", false, {i, j}, r};
    }
  report.axioms.push_back(sym);

  AxiomResult nondeg{"nondegeneracy", true, {}, 0};
  if (!g.nondegenerate()) nondeg = {"nondegeneracy", false, {}, Rational(0)};
  nondeg.residual = g.metric_determinant();
  report.axioms.push_back(nondeg);

  // ⟨[x_i,x_j], x_k⟩ = ⟨x_i, [x_j,x_k]⟩
  AxiomResult inv{"invariance", true, {}, 0};
  for (int i = 0; i < n && inv.passed; ++i)
    for (int j = 0; j < n && inv.passed; ++j)
      for (int k = 0; k < n && inv.passed; ++k) {
        Rational r = 0;
        for (int m = 0; m < n; ++m) r += g.c(i, j, m) * g.metric(m, k) - g.c(j, k, m) * g.metric(i, m);
        if (r != 0) inv = {"invariance", false, {i, j, k}, r};
      }
  report.axioms.push_back(inv);

  AxiomResult inverse{"metric_inverse", true, {}, 0};
  if (!g.nondegenerate()) {
    inverse.passed = false;
  } else {
    for (int i = 0; i < n && inverse.passed; ++i)
      for (int j = 0; j < n && inverse.passed; ++j) {
        Rational r = (i == j) ? Rational(-1) : Rational(0);
        for (int m = 0; m < n; ++m) r += g.metric(i, m) * g.metric_inverse(m, j);
        if (r != 0) inverse = {"metric_inverse", false, {i, j}, r};
      }
  }
  report.axioms.push_back(inverse);
  return report;
}

namespace {

struct Builder {
  int n;
  std::vector<Rational> c, g;
  explicit Builder(int dim) : n(dim), c(static_cast<size_t>(dim) * dim * dim), g(static_cast<size_t>(dim) * dim) {}
  void bracket(int i, int j, int k, const Rational& v) {
    c[(i * n + j) * n + k] = v;
    c[(j * n + i) * n + k] = -v;
  }
  void pair(int i, int j, const Rational& v) {
    g[i * n + j] = v;
    g[j * n + i] = v;
  }
};

void require_scale(const Rational& scale) {
  if (scale == 0) throw UsageError("metric scale must be nonzero");
}

}  // namespace

MetricLieAlgebra abelian(int n) {
  if (n < 0) throw UsageError("abelian dimension must be non-negative");
  Builder b(n);
  for (int i = 0; i < n; ++i) b.pair(i, i, 1);
  return MetricLieAlgebra("abelian:" + std::to_string(n), n, b.c, b.g);
}

MetricLieAlgebra abelian(int n, const std::vector<Rational>& metric) {
  Builder b(n);
  return MetricLieAlgebra("abelian:" + std::to_string(n), n, b.c, metric);
}

MetricLieAlgebra sl2(const Rational& scale) {
  require_scale(scale);
  Builder b(3);  // h, e, f
  b.bracket(0, 1, 1, 2);
  b.bracket(0, 2, 2, -2);
  b.bracket(1, 2, 0, 1);
  b.pair(0, 0, 8 * scale);
  b.pair(1, 2, 4 * scale);
  std::string name = scale == 1 ? "sl2" : "sl2:" + scale.get_str();
  return MetricLieAlgebra(name, 3, b.c, b.g, {"h", "e", "f"});
}

MetricLieAlgebra so3(const Rational& scale) {
  require_scale(scale);
  Builder b(3);
  b.bracket(0, 1, 2, 1);
  b.bracket(1, 2, 0, 1);
  b.bracket(2, 0, 1, 1);
  for (int i = 0; i < 3; ++i) b.pair(i, i, scale);
  std::string name = scale == 1 ? "so3" : "so3:" + scale.get_str();
  return MetricLieAlgebra(name, 3, b.c, b.g, {"x1", "x2", "x3"});
}

MetricLieAlgebra oscillator() {
  Builder b(4);  // p, q, e, h
  b.bracket(0, 1, 2, 1);
  b.bracket(3, 0, 1, 1);
  b.bracket(3, 1, 0, -1);
  b.pair(0, 0, 1);
  b.pair(1, 1, 1);
  b.pair(2, 3, 1);
  return MetricLieAlgebra("oscillator", 4, b.c, b.g, {"p", "q", "e", "h"});
}

MetricLieAlgebra builtin(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_scale = [&]() -> Rational {
    if (param.empty()) return 1;
    try {
      Rational r(param);
      r.canonicalize();
      return r;
    } catch (const std::exception&) {
      throw UsageError("bad scale '" + param + "' in algebra spec '" + spec + "'");
    }
  };
  if (name == "sl2") return sl2(parse_scale());
  if (name == "so3") return so3(parse_scale());
  if (name == "oscillator") {
    if (!param.empty()) throw UsageError("oscillator takes no parameter");
    return oscillator();
  }
  if (name == "abelian") {
    int n = 1;
    if (!param.empty()) {
      try {
        n = std::stoi(param);
      } catch (const std::exception&) {
        throw UsageError("bad dimension in '" + spec + "'");
      }
    }
    if (n < 0) throw UsageError("abelian dimension must be non-negative");
    return abelian(n);
  }
  throw UsageError("unknown algebra '" + spec + "' (expected sl2[:s], so3[:s], abelian:n, oscillator or a JSON file)");
}

Rational json_rational(const nlohmann::json& num, const nlohmann::json& den) {
  auto str = [](const nlohmann::json& v) -> std::string {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw UsageError("rational components must be integers or integer strings");
  };
  try {
    Rational r{mpz_class(str(num)), mpz_class(str(den))};
    if (r.get_den() == 0) throw UsageError("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed integer in rational entry");
  }
}

namespace {

int json_index(const nlohmann::json& v, int dim) {
  if (!v.is_number_integer()) throw UsageError("indices must be integers");
  int i = v.get<int>();
  if (i < 0 || i >= dim) throw UsageError("index " + std::to_string(i) + " out of range for dim " + std::to_string(dim));
  return i;
}

}  // namespace

MetricLieAlgebra algebra_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("algebra file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("algebra file must be a JSON object");
  for (const char* key : {"name", "dim", "bracket", "metric"})
    if (!doc.contains(key)) throw UsageError(std::string("algebra file is missing '") + key + "'");
  if (!doc["name"].is_string()) throw UsageError("'name' must be a string");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 0) throw UsageError("'dim' must be a non-negative integer");
  if (!doc["bracket"].is_array() || !doc["metric"].is_array()) throw UsageError("'bracket' and 'metric' must be arrays");
  const int n = doc["dim"].get<int>();
  std::vector<Rational> c(static_cast<size_t>(n) * n * n), g(static_cast<size_t>(n) * n);
  std::vector<char> c_set(c.size(), 0), g_set(g.size(), 0);

  std::vector<std::tuple<int, int, int, Rational>> brackets;
  for (const auto& e : doc["bracket"]) {
    if (!e.is_array() || e.size() != 5) throw UsageError("bracket entries must be [i,j,k,num,den]");
    brackets.emplace_back(json_index(e[0], n), json_index(e[1], n), json_index(e[2], n), json_rational(e[3], e[4]));
  }
  for (const auto& [i, j, k, v] : brackets) {
    c[(i * n + j) * n + k] = v;
    c_set[(i * n + j) * n + k] = 1;
  }
  for (const auto& [i, j, k, v] : brackets)
    if (!c_set[(j * n + i) * n + k]) c[(j * n + i) * n + k] = -v;

  std::vector<std::tuple<int, int, Rational>> pairs;
  for (const auto& e : doc["metric"]) {
    if (!e.is_array() || e.size() != 4) throw UsageError("metric entries must be [i,j,num,den]");
    pairs.emplace_back(json_index(e[0], n), json_index(e[1], n), json_rational(e[2], e[3]));
  }
  for (const auto& [i, j, v] : pairs) {
    g[i * n + j] = v;
    g_set[i * n + j] = 1;
  }
  for (const auto& [i, j, v] : pairs)
    if (!g_set[j * n + i]) g[j * n + i] = v;

  std::vector<std::string> names;
  if (doc.contains("basis")) {
    if (!doc["basis"].is_array() || static_cast<int>(doc["basis"].size()) != n)
      throw UsageError("'basis' must list dim names");
    for (const auto& s : doc["basis"]) names.push_back(s.get<std::string>());
  }
  return MetricLieAlgebra(doc["name"].get<std::string>(), n, std::move(c), std::move(g), std::move(names));
}

MetricLieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return algebra_from_json_text(ss.str());
}

MetricLieAlgebra resolve_algebra(const std::string& name_or_path) {
  if (name_or_path.size() > 5 && name_or_path.substr(name_or_path.size() - 5) == ".json")
    return load_algebra_file(name_or_path);
  std::ifstream probe(name_or_path);
  if (probe.good() && name_or_path.find('/') != std::string::npos) return load_algebra_file(name_or_path);
  return builtin(name_or_path);
}

AdEndomorphism ad(const MetricLieAlgebra& g, const std::vector<Rational>& coeffs) {
  const int n = g.dim();
  if (static_cast<int>(coeffs.size()) != n) throw UsageError("ad: coefficient vector has wrong length");
  AdEndomorphism out{coeffs, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
  for (int i = 0; i < n; ++i) {
    if (coeffs[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.matrix[k][j] += coeffs[i] * g.c(i, j, k);
  }
  return out;
}

Poly casimir(const MetricLieAlgebra& g) {
  const int n = g.dim();
  Poly out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.metric_inverse(i, j) == 0) continue;
      Exponents e(n, 0);
      e[i] += 1;
      e[j] += 1;
      out.add_term(e, g.metric_inverse(i, j));
    }
  return out;
}

Poly dual_casimir(const MetricLieAlgebra& g) {
  const int n = g.dim();
  Poly out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.metric(i, j) == 0) continue;
      Exponents e(n, 0);
      e[i] += 1;
      e[j] += 1;
      out.add_term(e, g.metric(i, j));
    }
  return out;
}

Poly adjoint_action_on_sym(const MetricLieAlgebra& g, int i, const Poly& s) {
  const int n = g.dim();
  std::vector<Poly> images(n, Poly(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (g.c(i, j, k) != 0) images[j].add_term([&] { Exponents e(n, 0); e[k] = 1; return e; }(), g.c(i, j, k));
  return apply_derivation(s, images);
}

Poly coadjoint_action_on_jets(const MetricLieAlgebra& g, int i, const Poly& f) {
  const int n = g.dim();
  std::vector<Poly> images(n, Poly(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (g.c(i, j, k) != 0) images[k].add_term([&] { Exponents e(n, 0); e[j] = 1; return e; }(), -g.c(i, j, k));
  return apply_derivation(f, images);
}

}  // namespace duflo
