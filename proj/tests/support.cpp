#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcopies::testing {
namespace {

// Local dense Kronecker product, kept separate from the library's kron.
std::vector<cplx> kron_dense(const std::vector<cplx>& a, std::size_t da, const std::vector<cplx>& b, std::size_t db) {
  const std::size_t d = da * db;
  std::vector<cplx> out(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out[(i * db + k) * d + (j * db + l)] = a[i * da + j] * b[k * db + l];
  return out;
}

double simplex_objective(const std::vector<double>& k, double eps, const std::vector<double>& w) {
  double f = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) f += k[i] / (eps * w[i]);
  return f;
}

// Sort-based Euclidean projection onto {w >= floor, sum w = 1}.
std::vector<double> project(std::vector<double> v, double floor) {
  const std::size_t m = v.size();
  for (auto& x : v) x -= floor;
  const double target = 1.0 - floor * m;
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    css += u[i];
    const double t = (css - target) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (auto& x : v) x = std::max(x - theta, 0.0) + floor;
  return v;
}

}  // namespace

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(g(gen), g(gen));
  return m;
}

ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& gen) {
  const auto a = random_matrix(d, d, gen);
  return (a + a.adjoint()) * cplx(0.5);
}

DensityMatrix random_density(int n, std::mt19937_64& gen) {
  const std::size_t d = std::size_t{1} << n;
  const auto g = random_matrix(d, d, gen);
  auto m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  // Exact Hermitian symmetry after rounding.
  m = (m + m.adjoint()) * cplx(0.5);
  return DensityMatrix::from_matrix(std::move(m));
}

double sc_fidelity_direct(const ComplexMatrix& rho) {
  const std::size_t d = rho.rows();
  std::vector<cplx> sc(d, 0.0);
  sc.front() = sc.back() = 1.0 / std::sqrt(2.0);
  cplx acc = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) acc += std::conj(sc[a]) * rho(a, b) * sc[b];
  return acc.real();
}

double parity_expectation_dense(const ComplexMatrix& rho, int n, double theta) {
  // |+-,theta> = (|H> +- e^{i theta}|V>)/sqrt2, so M_theta = [[0, e^{-i theta}], [e^{i theta}, 0]].
  const std::vector<cplx> single{0.0, std::polar(1.0, -theta), std::polar(1.0, theta), 0.0};
  std::vector<cplx> op{1.0};
  std::size_t d = 1;
  for (int q = 0; q < n; ++q) {
    op = kron_dense(op, d, single, 2);
    d *= 2;
  }
  cplx tr = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) tr += rho(a, b) * op[b * d + a];
  return tr.real();
}

double witness_fidelity_dense(const ComplexMatrix& rho, int n) {
  const std::size_t d = rho.rows();
  double f = 0.5 * (rho(0, 0).real() + rho(d - 1, d - 1).real());
  for (int k = 1; k <= n; ++k) {
    const double sign = (k % 2 == 1) ? -1.0 : 1.0;  // (-1)^k
    f += sign * parity_expectation_dense(rho, n, k * M_PI / n) / (2.0 * n);
  }
  return f;
}

std::vector<double> budget_oracle(const std::vector<double>& k, double epsilon) {
  std::vector<double> active;
  for (double v : k)
    if (v > 0.0) active.push_back(v);
  const std::size_t m = active.size();
  std::vector<double> w(m, 1.0 / m);
  const double floor = 1e-14;
  double f = simplex_objective(active, epsilon, w);
  double step = 1.0 / f;
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = -active[i] / (epsilon * w[i] * w[i]);
    bool accepted = false;
    std::vector<double> cand;
    double fc = 0.0;
    for (int bt = 0; bt < 200; ++bt) {
      cand = w;
      for (std::size_t i = 0; i < m; ++i) cand[i] -= step * g[i];
      cand = project(std::move(cand), floor);
      fc = simplex_objective(active, epsilon, cand);
      double lin = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        lin += g[i] * (cand[i] - w[i]);
        sq += (cand[i] - w[i]) * (cand[i] - w[i]);
      }
      if (fc <= f + lin + sq / (2.0 * step)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    double move = 0.0;
    for (std::size_t i = 0; i < m; ++i) move = std::max(move, std::abs(cand[i] - w[i]));
    w = std::move(cand);
    const double prev = f;
    f = fc;
    step *= 2.0;
    if (move < 1e-15 || (prev - f) <= 1e-12 * f * 1e-3) break;
  }
  std::vector<double> t(k.size(), 0.0);
  std::size_t a = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] > 0.0) t[i] = k[i] / (epsilon * w[a++]);
  return t;
}

double weight_for_p1(int n, double p1) {
  const double two_over_d = std::ldexp(2.0, -n);
  return (p1 - two_over_d) / (1.0 - two_over_d);
}

}  // namespace qcopies::testing
