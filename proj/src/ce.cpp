#include "duflo/ce.hpp"

#include "duflo/enveloping.hpp"
#include "duflo/errors.hpp"

namespace duflo {

ModuleSpec ModuleSpec::parse(const std::string& text) {
  ModuleSpec m;
  if (text == "trivial") return m;
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  if (colon == std::string::npos || (kind != "jets" && kind != "uea"))
    throw UsageError("module must be trivial, jets:N or uea:D (got '" + text + "')");
  try {
    size_t used = 0;
    m.order = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("bad truncation order in module '" + text + "'");
  }
  if (m.order < 0) throw UsageError("module truncation order must be non-negative");
  m.kind = kind == "jets" ? Kind::Jets : Kind::Uea;
  return m;
}

std::string ModuleSpec::to_string() const {
  switch (kind) {
    case Kind::Trivial:
      return "trivial";
    case Kind::Jets:
      return "jets:" + std::to_string(order);
    case Kind::Uea:
      return "uea:" + std::to_string(order);
  }
  return "";
}

namespace {

std::string monomial_label(const Exponents& e, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::vector<SparseMatrix> module_action(const MetricLieAlgebra& g, const ModuleSpec& module) {
  const int n = g.dim();
  if (module.kind == ModuleSpec::Kind::Trivial) return std::vector<SparseMatrix>(n, SparseMatrix(1, 1));
  if (module.kind == ModuleSpec::Kind::Uea) return Enveloping(g).adjoint_action_matrices(module.order);
  auto basis = monomials_up_to(n, module.order);
  std::map<Exponents, int> index;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;
  std::vector<SparseMatrix> rho;
  for (int i = 0; i < n; ++i) {
    SparseMatrix m(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
      Poly image = coadjoint_action_on_jets(g, i, Poly::monomial(basis[j]));
      for (const auto& [e, c] : image.terms()) m.add(index.at(e), j, c);
    }
    rho.push_back(std::move(m));
  }
  return rho;
}

std::map<std::uint32_t, Rational> ce_differential(const MetricLieAlgebra& g, std::uint32_t mask) {
  const int n = g.dim();
  std::map<std::uint32_t, Rational> out;
  for (int k = 0; k < n; ++k) {
    const std::uint32_t bit = 1u << k;
    if (!(mask & bit)) continue;
    const int lsign = (popcount(mask & (bit - 1)) & 1) ? -1 : 1;
    const std::uint32_t rest = mask & ~bit;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Rational& c = g.c(i, j, k);
        if (c == 0) continue;
        const std::uint32_t pair = (1u << i) | (1u << j);
        if (pair & rest) continue;
        Rational v = -c * lsign * wedge_sign(pair, rest);
        auto [it, inserted] = out.try_emplace(pair | rest, v);
        if (!inserted) {
          it->second += v;
          if (it->second == 0) out.erase(it);
        }
      }
  }
  return out;
}

CEModuleComplex build_ce_with_action(const MetricLieAlgebra& g, const std::vector<SparseMatrix>& rho, ModuleSpec module,
                                     bool check) {
  const int n = g.dim();
  if (static_cast<int>(rho.size()) != n) throw std::invalid_argument("build_ce: one fiber operator per generator");
  const int fdim = rho.empty() ? 1 : rho[0].rows();
  CEModuleComplex out;
  out.module = module;
  out.fiber_dim = fdim;
  out.masks.resize(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) out.masks[popcount(mask)].push_back(mask);
  std::vector<std::map<std::uint32_t, int>> pos(n + 1);
  std::vector<int> dims;
  for (int k = 0; k <= n; ++k) {
    for (int p = 0; p < static_cast<int>(out.masks[k].size()); ++p) pos[k][out.masks[k][p]] = p;
    dims.push_back(static_cast<int>(out.masks[k].size()) * fdim);
  }
  out.complex = FiniteChainComplex(0, dims);
  for (int k = 0; k < n; ++k) {
    SparseMatrix d(dims[k + 1], dims[k]);
    for (int p = 0; p < static_cast<int>(out.masks[k].size()); ++p) {
      const std::uint32_t mask = out.masks[k][p];
      for (const auto& [m2, c] : ce_differential(g, mask))
        for (int f = 0; f < fdim; ++f) d.add(pos[k + 1].at(m2) * fdim + f, p * fdim + f, c);
      for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = 1u << i;
        if (mask & bit) continue;
        const int sign = wedge_sign(bit, mask);
        const int target = pos[k + 1].at(mask | bit);
        for (int f = 0; f < fdim; ++f)
          for (const auto& [r, v] : rho[i].column(f)) d.add(target * fdim + r, p * fdim + f, sign * v);
      }
    }
    out.complex.set_d(k, std::move(d));
  }
  if (check) out.complex.check();
  return out;
}

CEModuleComplex build_ce_module(const MetricLieAlgebra& g, const ModuleSpec& module) {
  auto rho = module_action(g, module);
  auto out = build_ce_with_action(g, rho, module);
  const auto& names = g.basis_names();
  if (module.kind == ModuleSpec::Kind::Trivial) {
    out.fiber_labels = {"1"};
  } else {
    for (const auto& e : monomials_up_to(g.dim(), module.order)) out.fiber_labels.push_back(monomial_label(e, names));
  }
  return out;
}

CEModuleComplex build_ce(const MetricLieAlgebra& g) { return build_ce_module(g, ModuleSpec{}); }

CECohomology ce_cohomology(const CEModuleComplex& c, bool with_representatives) {
  CECohomology out;
  if (!with_representatives) {
    out.dims = homology_dims(c.complex);
    return out;
  }
  for (int k = c.complex.lo(); k <= c.complex.hi(); ++k) {
    auto h = homology(c.complex, k);
    out.dims[k] = h.dimension;
    out.representatives[k] = h.representatives;
  }
  return out;
}

}  // namespace duflo
