#include "qcopies/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcopies/errors.hpp"

namespace qcopies {
namespace {

// Relative slack for floating-point noise when rounding up and when
// verifying the budget after rounding.
constexpr double kRoundSlack = 1e-12;
constexpr double kVerifySlack = 1e-9;

std::int64_t ceil_copies(double x) {
  return static_cast<std::int64_t>(std::ceil(x * (1.0 - kRoundSlack)));
}

void check_epsilon0(double epsilon0) {
  if (!(epsilon0 > 0.0) || !std::isfinite(epsilon0)) throw DomainError("epsilon0 must be positive");
}

}  // namespace

void BudgetProblem::validate() const {
  if (k.empty()) throw SizeError("budget problem has no settings");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
  for (double v : k)
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("variance weights must be finite and >= 0");
}

std::int64_t CopyAllocation::total() const { return std::accumulate(t.begin(), t.end(), std::int64_t{0}); }

double CopyAllocation::real_total() const { return std::accumulate(real_t.begin(), real_t.end(), 0.0); }

CopyAllocation CopyAllocation::uniform(std::size_t settings, std::int64_t copies) {
  if (copies < 1) throw DomainError("uniform allocation needs at least one copy per setting");
  CopyAllocation a;
  a.t.assign(settings, copies);
  a.real_t.assign(settings, static_cast<double>(copies));
  return a;
}

CopyAllocation CopyAllocation::from_counts(std::vector<std::int64_t> counts) {
  CopyAllocation a;
  for (auto c : counts)
    if (c < 0) throw DomainError("copy counts must be nonnegative");
  a.real_t.assign(counts.begin(), counts.end());
  a.t = std::move(counts);
  return a;
}

double budget_usage(std::span<const double> k, std::span<const std::int64_t> t) {
  if (k.size() != t.size()) throw SizeError("budget_usage: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0.0) continue;
    if (t[i] <= 0) return std::numeric_limits<double>::infinity();
    s += k[i] / static_cast<double>(t[i]);
  }
  return s;
}

CopyAllocation solve_budget(const BudgetProblem& p, const AllocatorOptions& opts) {
  p.validate();
  if (opts.t_min < 1) throw DomainError("t_min must be at least 1");
  std::vector<double> root(p.k.size());
  std::transform(p.k.begin(), p.k.end(), root.begin(), [](double v) { return std::sqrt(v); });
  const double root_sum = std::accumulate(root.begin(), root.end(), 0.0);
  if (root_sum == 0.0) throw DegenerateProblemError("every variance weight is zero");

  CopyAllocation a;
  a.epsilon0 = std::sqrt(p.epsilon);
  a.real_t.resize(p.k.size());
  a.t.resize(p.k.size());
  for (std::size_t j = 0; j < p.k.size(); ++j) {
    a.real_t[j] = root[j] * root_sum / p.epsilon;
    a.t[j] = root[j] > 0.0 ? std::max<std::int64_t>(ceil_copies(a.real_t[j]), 1) : opts.t_min;
  }
  // Rounding up cannot break the budget beyond floating noise; repair if it does.
  while (budget_usage(p.k, a.t) > p.epsilon * (1.0 + kVerifySlack)) {
    std::size_t worst = 0;
    double worst_share = -1.0;
    for (std::size_t j = 0; j < p.k.size(); ++j) {
      const double share = p.k[j] / static_cast<double>(a.t[j]);
      if (share > worst_share) worst_share = share, worst = j;
    }
    ++a.t[worst];
  }
  return a;
}

CopyAllocation allocate_sc(const SettingProbabilities& p, double epsilon0, const AllocatorOptions& opts) {
  check_epsilon0(epsilon0);
  return solve_budget({variance_weights(p), epsilon0 * epsilon0}, opts);
}

double delta_f(const SettingProbabilities& p, const CopyAllocation& a) { return delta_f(p, std::span(a.t)); }

void TomographyTable::validate() const {
  if (frequencies.empty()) throw SizeError("tomography table has no settings");
  if (!operator_norms.empty() && operator_norms.size() != frequencies.size()) {
    throw SizeError("operator norm table must have one row per setting");
  }
  for (std::size_t nu = 0; nu < frequencies.size(); ++nu) {
    for (double f : frequencies[nu])
      if (!(f >= 0.0 && f <= 1.0)) throw DomainError("frequencies must lie in [0, 1]");
    if (!operator_norms.empty() && !operator_norms[nu].empty() &&
        operator_norms[nu].size() != frequencies[nu].size()) {
      throw SizeError("operator norm row length differs from frequency row");
    }
  }
}

std::vector<double> tomography_weights(const TomographyTable& table) {
  table.validate();
  std::vector<double> k(table.frequencies.size(), 0.0);
  for (std::size_t nu = 0; nu < k.size(); ++nu) {
    const auto& f = table.frequencies[nu];
    for (std::size_t mu = 0; mu < f.size(); ++mu) {
      double norm = 1.0;
      if (!table.operator_norms.empty() && !table.operator_norms[nu].empty()) norm = table.operator_norms[nu][mu];
      k[nu] += f[mu] * (1.0 - f[mu]) * norm;
    }
  }
  return k;
}

CopyAllocation allocate_tomography_orthogonal(const TomographyTable& table, double epsilon0,
                                              const AllocatorOptions& opts) {
  check_epsilon0(epsilon0);
  return solve_budget({tomography_weights(table), epsilon0 * epsilon0}, opts);
}

std::vector<double> relaxed_weights(const std::vector<std::vector<double>>& k_matrix) {
  const std::size_t m = k_matrix.size();
  if (m == 0) throw SizeError("empty k matrix");
  std::vector<double> eff(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    if (k_matrix[a].size() != m) throw SizeError("k matrix must be square");
    for (std::size_t b = 0; b < m; ++b) {
      const double v = k_matrix[a][b];
      if (!(v >= 0.0)) throw DomainError("k matrix entries must be >= 0");
      eff[a] += 0.5 * v;  // row a
      eff[b] += 0.5 * v;  // column b
    }
  }
  return eff;
}

double bilinear_usage(const std::vector<std::vector<double>>& k_matrix, std::span<const std::int64_t> t) {
  if (k_matrix.size() != t.size()) throw SizeError("bilinear_usage: length mismatch");
  double s = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (k_matrix[a][b] == 0.0) continue;
      s += k_matrix[a][b] / std::sqrt(static_cast<double>(t[a]) * static_cast<double>(t[b]));
    }
  return s;
}

CopyAllocation allocate_tomography_nonorthogonal(const std::vector<std::vector<double>>& k_matrix, double epsilon0,
                                                 const AllocatorOptions& opts) {
  check_epsilon0(epsilon0);
  const double eps = epsilon0 * epsilon0;
  auto a = solve_budget({relaxed_weights(k_matrix), eps}, opts);
  if (bilinear_usage(k_matrix, a.t) > eps * (1.0 + kVerifySlack)) {
    throw InfeasibleError("relaxed allocation violates the bilinear constraint");
  }
  return a;
}

CopyAllocation best_uniform(std::span<const double> k, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  const std::int64_t per = std::max<std::int64_t>(ceil_copies(sum / epsilon), 1);
  auto a = CopyAllocation::uniform(k.size(), per);
  a.real_t.assign(k.size(), sum / epsilon);
  a.epsilon0 = std::sqrt(epsilon);
  return a;
}

}  // namespace qcopies
