#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qcopies/kernels.hpp"
#include "support.hpp"

namespace qc = qcopies;
namespace kn = qcopies::kernels;
using qc::cplx;

namespace {

kn::Gate2 random_unitary_gate(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const double a = u(gen), b = u(gen), c = u(gen), th = u(gen) / 4;
  const cplx e1 = std::polar(1.0, a), e2 = std::polar(1.0, b), e3 = std::polar(1.0, c);
  return {std::cos(th) * e1, std::sin(th) * e2, -std::sin(th) * std::conj(e2) * e3,
          std::cos(th) * std::conj(e1) * e3};
}

qc::ComplexMatrix gate_matrix(const kn::Gate2& g) { return qc::ComplexMatrix(2, 2, {g[0], g[1], g[2], g[3]}); }

}  // namespace

TEST(BornKernel, ParallelMatchesSerialBitForBit) {
  std::mt19937_64 gen(11);
  for (int n = 1; n <= 7; ++n) {
    const auto rho = qc::testing::random_density(n, gen);
    std::vector<kn::Gate2> gates;
    for (int q = 0; q < n; ++q) gates.push_back(random_unitary_gate(gen));
    const auto par = kn::product_basis_probabilities(rho.matrix(), gates);
    const auto ser = kn::product_basis_probabilities_serial(rho.matrix(), gates);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) EXPECT_EQ(par[i], ser[i]) << "n=" << n << " i=" << i;
  }
}

TEST(BornKernel, MatchesDenseDiagonalOfConjugation) {
  std::mt19937_64 gen(5);
  for (int n = 1; n <= 4; ++n) {
    const auto rho = qc::testing::random_density(n, gen);
    std::vector<kn::Gate2> gates;
    for (int q = 0; q < n; ++q) gates.push_back(random_unitary_gate(gen));
    qc::ComplexMatrix u = gate_matrix(gates[0]);
    for (int q = 1; q < n; ++q) u = qc::kron(u, gate_matrix(gates[q]));
    const auto dense = u * rho.matrix() * u.adjoint();
    const auto p = kn::product_basis_probabilities(rho.matrix(), gates);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], dense(i, i).real(), 1e-13);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(BornKernel, EvenParityMass) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.05, 0.05, 0.1, 0.15, 0.05};
  // Even popcount indices: 0, 3, 5, 6.
  EXPECT_DOUBLE_EQ(kn::even_parity_mass(p), 0.1 + 0.05 + 0.1 + 0.15);
}
