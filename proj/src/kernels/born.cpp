#include <algorithm>
#include <bit>
#include <cstdint>

#include "qcopies/errors.hpp"
#include "qcopies/kernels.hpp"

namespace qcopies::kernels {
namespace {

void check_shapes(const ComplexMatrix& rho, std::span<const Gate2> gates) {
  if (!rho.square()) throw SizeError("density matrix must be square");
  if (rho.rows() != (std::size_t{1} << gates.size())) {
    throw SizeError("basis has " + std::to_string(gates.size()) + " qubits but matrix has dimension " +
                    std::to_string(rho.rows()));
  }
}

std::vector<double> real_diagonal(const ComplexMatrix& m) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = std::max(m(i, i).real(), 0.0);
  return out;
}

}  // namespace

std::vector<double> product_basis_probabilities(const ComplexMatrix& rho, std::span<const Gate2> gates) {
  check_shapes(rho, gates);
  const std::int64_t d = static_cast<std::int64_t>(rho.rows());
  const std::size_t n = gates.size();
  ComplexMatrix work = rho;
  cplx* a = work.entries().data();

  for (std::size_t q = 0; q < n; ++q) {
    const std::int64_t bit = std::int64_t{1} << (n - 1 - q);
    // Local copy so the compiler need not reload it after every store.
    const Gate2 u = gates[q];
    // rows: A <- U_q A
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < d; ++i) {
      if (i & bit) continue;
      cplx* r0 = a + i * d;
      cplx* r1 = a + (i | bit) * d;
      for (std::int64_t c = 0; c < d; ++c) {
        const cplx x0 = r0[c], x1 = r1[c];
        r0[c] = u[0] * x0 + u[1] * x1;
        r1[c] = u[2] * x0 + u[3] * x1;
      }
    }
    // columns: A <- A U_q^†
    const cplx c00 = std::conj(u[0]), c01 = std::conj(u[1]), c10 = std::conj(u[2]), c11 = std::conj(u[3]);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < d; ++r) {
      cplx* row = a + r * d;
      for (std::int64_t j = 0; j < d; ++j) {
        if (j & bit) continue;
        const cplx x0 = row[j], x1 = row[j | bit];
        row[j] = x0 * c00 + x1 * c01;
        row[j | bit] = x0 * c10 + x1 * c11;
      }
    }
  }
  return real_diagonal(work);
}

std::vector<double> product_basis_probabilities_serial(const ComplexMatrix& rho, std::span<const Gate2> gates) {
  check_shapes(rho, gates);
  const std::int64_t d = static_cast<std::int64_t>(rho.rows());
  const std::size_t n = gates.size();
  ComplexMatrix work = rho;
  cplx* a = work.entries().data();

  for (std::size_t q = 0; q < n; ++q) {
    const std::int64_t bit = std::int64_t{1} << (n - 1 - q);
    // Local copy so the compiler need not reload it after every store.
    const Gate2 u = gates[q];
    for (std::int64_t i = 0; i < d; ++i) {
      if (i & bit) continue;
      cplx* r0 = a + i * d;
      cplx* r1 = a + (i | bit) * d;
      for (std::int64_t c = 0; c < d; ++c) {
        const cplx x0 = r0[c], x1 = r1[c];
        r0[c] = u[0] * x0 + u[1] * x1;
        r1[c] = u[2] * x0 + u[3] * x1;
      }
    }
    const cplx c00 = std::conj(u[0]), c01 = std::conj(u[1]), c10 = std::conj(u[2]), c11 = std::conj(u[3]);
    for (std::int64_t r = 0; r < d; ++r) {
      cplx* row = a + r * d;
      for (std::int64_t j = 0; j < d; ++j) {
        if (j & bit) continue;
        const cplx x0 = row[j], x1 = row[j | bit];
        row[j] = x0 * c00 + x1 * c01;
        row[j | bit] = x0 * c10 + x1 * c11;
      }
    }
  }
  return real_diagonal(work);
}

double even_parity_mass(std::span<const double> probs) {
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (std::popcount(i) % 2 == 0) s += probs[i];
  return s;
}

}  // namespace qcopies::kernels
