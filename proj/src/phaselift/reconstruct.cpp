#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qcopies/errors.hpp"
#include "qcopies/phaselift.hpp"
#include "qcopies/simulator.hpp"

namespace qcopies {
namespace {

std::vector<double> forward(std::span<const PovmElement> elements, const ComplexMatrix& rho) {
  std::vector<double> out(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) out[i] = elements[i].expectation(rho);
  return out;
}

// sum_i w_i |phi_i><phi_i|
ComplexMatrix adjoint(std::span<const PovmElement> elements, std::span<const double> w, std::size_t d) {
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (w[i] == 0.0) continue;
    const auto& phi = elements[i].phi;
    for (std::size_t a = 0; a < d; ++a) {
      const cplx wa = w[i] * phi[a];
      for (std::size_t b = 0; b < d; ++b) out(a, b) += wa * std::conj(phi[b]);
    }
  }
  return out;
}

double l1(std::span<const double> model, std::span<const double> freqs) {
  double s = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) s += std::abs(model[i] - freqs[i]);
  return s;
}

// Largest eigenvalue of A*A by power iteration on Hermitian matrices.
double operator_norm_sq(std::span<const PovmElement> elements, std::size_t d) {
  ComplexMatrix x(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) x(a, b) = a == b ? 1.0 + 0.1 * a : cplx(0.01 * (a + b), 0.01 * (int(a) - int(b)));
  double lambda = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double norm = x.frobenius_norm();
    x *= 1.0 / norm;
    const auto y = adjoint(elements, forward(elements, x), d);
    const double next = y.frobenius_norm();
    x = y;
    if (std::abs(next - lambda) <= 1e-10 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda * 1.01;  // small safety margin on the step size
}

void check_inputs(std::span<const PovmElement> elements, std::span<const double> freqs) {
  if (elements.empty()) throw SizeError("no POVM elements");
  if (elements.size() != freqs.size()) throw SizeError("need one frequency per POVM element");
  const std::size_t d = elements.front().phi.size();
  if (d == 0 || (d & (d - 1)) != 0) throw SizeError("POVM dimension must be a power of two");
  for (const auto& e : elements)
    if (e.phi.size() != d) throw SizeError("POVM elements have inconsistent dimensions");
  for (double f : freqs)
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("frequencies must lie in [0, 1]");
}

ReconstructionResult solve_fista(std::span<const PovmElement> elements, std::span<const double> freqs,
                                 const ReconstructOptions& opts) {
  const std::size_t d = elements.front().phi.size();
  const double norm_sq = operator_norm_sq(elements, d);

  ReconstructionResult res;
  ComplexMatrix x = maximally_mixed(std::countr_zero(d)).matrix();
  double best = l1(forward(elements, x), freqs);
  res.objective_history.push_back(best);

  double max_res = 0.0;
  const auto model0 = forward(elements, x);
  for (std::size_t i = 0; i < freqs.size(); ++i) max_res = std::max(max_res, std::abs(model0[i] - freqs[i]));
  double mu = std::max(opts.mu_min, 0.1 * max_res);

  int total = 0;
  std::vector<double> grad_w(elements.size());
  while (total < opts.max_iterations) {
    // One continuation stage at fixed Huber width mu.
    const double step = mu / norm_sq;
    ComplexMatrix x_prev = x, y = x;
    double tk = 1.0;
    double checkpoint = best;
    bool stalled = false;
    for (int stage_it = 1; stage_it <= opts.stage_iterations && total < opts.max_iterations; ++stage_it) {
      const auto model = forward(elements, y);
      for (std::size_t i = 0; i < model.size(); ++i) grad_w[i] = std::clamp((model[i] - freqs[i]) / mu, -1.0, 1.0);
      const ComplexMatrix z = psd_project(y - adjoint(elements, grad_w, d) * cplx(step)).matrix();
      const double fz = l1(forward(elements, z), freqs);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
      ++total;
      // Monotone variant: keep the old iterate when the candidate is worse,
      // but still extrapolate through the candidate.
      ComplexMatrix x_new = x;
      if (fz <= best) {
        x_new = z;
        best = fz;
        res.objective_history.push_back(best);
      }
      y = x_new + (z - x_new) * cplx(tk / t_next) + (x_new - x_prev) * cplx((tk - 1.0) / t_next);
      x_prev = std::move(x);
      x = std::move(x_new);
      tk = t_next;
      if (stage_it % 10 == 0) {
        if (checkpoint - best <= opts.tolerance * std::max(best, 1e-6)) {
          stalled = true;
          break;
        }
        checkpoint = best;
      }
    }
    if (mu <= opts.mu_min * (1.0 + 1e-12)) {
      res.converged = stalled;
      if (stalled) break;
    }
    mu = std::max(opts.mu_min, mu * opts.mu_shrink);
  }
  res.rho_hat = psd_project(x);
  res.objective = l1(forward(elements, res.rho_hat.matrix()), freqs);
  res.iterations = total;
  return res;
}

ReconstructionResult solve_subgradient(std::span<const PovmElement> elements, std::span<const double> freqs,
                                       const ReconstructOptions& opts) {
  const std::size_t d = elements.front().phi.size();
  ReconstructionResult res;
  ComplexMatrix x = maximally_mixed(std::countr_zero(d)).matrix();
  ComplexMatrix best_x = x;
  double best = l1(forward(elements, x), freqs);
  res.objective_history.push_back(best);
  std::vector<double> sign(elements.size());
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const auto model = forward(elements, x);
    for (std::size_t i = 0; i < model.size(); ++i) {
      const double r = model[i] - freqs[i];
      sign[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    }
    const auto g = adjoint(elements, sign, d);
    const double gn = g.frobenius_norm();
    if (gn == 0.0) {
      res.converged = true;
      break;
    }
    const double step = opts.subgradient_step / std::sqrt(it + 1.0) / gn;
    x = psd_project(x - g * cplx(step)).matrix();
    const double f = l1(forward(elements, x), freqs);
    if (f < best) {
      const bool small = best - f <= opts.tolerance * std::max(best, 1e-3);
      best = f;
      best_x = x;
      res.objective_history.push_back(best);
      if (small && it > 100) {
        res.converged = true;
        ++it;
        break;
      }
    }
  }
  res.rho_hat = psd_project(best_x);
  res.objective = best;
  res.iterations = it;
  return res;
}

}  // namespace

double l1_misfit(std::span<const PovmElement> elements, std::span<const double> freqs, const ComplexMatrix& rho) {
  check_inputs(elements, freqs);
  return l1(forward(elements, rho), freqs);
}

ReconstructionResult reconstruct(std::span<const PovmElement> elements, std::span<const double> freqs,
                                 const ReconstructOptions& opts) {
  check_inputs(elements, freqs);
  if (opts.max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  return opts.solver == PhaseliftSolver::Subgradient ? solve_subgradient(elements, freqs, opts)
                                                     : solve_fista(elements, freqs, opts);
}

ReconstructionResult reconstruct(const std::vector<PovmGroup>& groups, const std::vector<std::vector<double>>& freqs,
                                 const ReconstructOptions& opts) {
  if (groups.size() != freqs.size()) throw SizeError("need one frequency row per POVM group");
  std::vector<PovmElement> flat;
  std::vector<double> f;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].elements.size() != freqs[g].size()) throw SizeError("frequency row length differs from group size");
    flat.insert(flat.end(), groups[g].elements.begin(), groups[g].elements.end());
    f.insert(f.end(), freqs[g].begin(), freqs[g].end());
  }
  return reconstruct(flat, f, opts);
}

std::vector<CurveRow> reconstruction_curve(const DensityMatrix& rho_true, std::int64_t counts_per_setting,
                                           std::span<const std::size_t> element_counts, std::int64_t repeats,
                                           const RngSeed& rng, const ReconstructOptions& opts) {
  if (repeats < 1) throw DomainError("repeats must be >= 1");
  if (counts_per_setting < 1) throw DomainError("counts_per_setting must be >= 1");
  const auto groups = pauli_settings(rho_true.qubits());
  const auto probs = pauli_probabilities(rho_true, groups);
  std::vector<PovmElement> all;
  for (const auto& g : groups) all.insert(all.end(), g.elements.begin(), g.elements.end());
  for (auto c : element_counts)
    if (c < 1 || c > all.size()) throw DomainError("element count out of range");
  const auto sc = sc_state(rho_true.qubits());

  // Per repeat: sampled frequencies and a shuffled element order.
  std::vector<std::vector<double>> freqs(static_cast<std::size_t>(repeats));
  std::vector<std::vector<std::size_t>> order(static_cast<std::size_t>(repeats));
  for (std::int64_t r = 0; r < repeats; ++r) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto table = sample_distribution(probs[g], counts_per_setting, rng.child(r).child(g + 1));
      const auto f = table.frequencies();
      freqs[r].insert(freqs[r].end(), f.begin(), f.end());
    }
    auto& ord = order[r];
    ord.resize(all.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    Rng shuffle(rng.child(r).child(0));
    for (std::size_t i = ord.size(); i > 1; --i) std::swap(ord[i - 1], ord[shuffle.below(i)]);
  }

  const std::size_t rows = element_counts.size();
  std::vector<double> fid(rows * repeats), mse(rows * repeats);
  const std::int64_t jobs = static_cast<std::int64_t>(rows) * repeats;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t c = static_cast<std::size_t>(job / repeats);
    const std::size_t r = static_cast<std::size_t>(job % repeats);
    std::vector<PovmElement> subset;
    std::vector<double> f;
    for (std::size_t i = 0; i < element_counts[c]; ++i) {
      subset.push_back(all[order[r][i]]);
      f.push_back(freqs[r][order[r][i]]);
    }
    const auto res = reconstruct(subset, f, opts);
    fid[job] = fidelity_pure(res.rho_hat, sc);
    const double dist = frobenius_distance(res.rho_hat, rho_true);
    mse[job] = dist * dist;
  }

  std::vector<CurveRow> out(rows);
  for (std::size_t c = 0; c < rows; ++c) {
    const auto sf = summarize({fid.begin() + c * repeats, fid.begin() + (c + 1) * repeats});
    const auto sm = summarize({mse.begin() + c * repeats, mse.begin() + (c + 1) * repeats});
    out[c] = {element_counts[c], sf.mean, sf.stddev, sm.mean, sm.stddev};
  }
  return out;
}

}  // namespace qcopies
