#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the code under test for the value
// it is meant to check.

#include <cstdint>
#include <random>
#include <vector>

#include "qcopies/core.hpp"

namespace qcopies::testing {

// Ginibre-distributed mixed state G G^† / Tr(G G^†).
DensityMatrix random_density(int n, std::mt19937_64& gen);
// Random Hermitian matrix with unit-scale Gaussian entries.
ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& gen);
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen);

// <SC|rho|SC> by explicit vector contraction.
double sc_fidelity_direct(const ComplexMatrix& rho);

// Tr(rho M_theta^{⊗n}) with M_theta = |+,theta><+,theta| - |-,theta><-,theta|
// built densely by repeated Kronecker products written here.
double parity_expectation_dense(const ComplexMatrix& rho, int n, double theta);

// Witness decomposition evaluated with dense operators: the all-H/all-V
// mass plus the parity expectations at theta = k pi / n, k = 1..n.
double witness_fidelity_dense(const ComplexMatrix& rho, int n);

// Independent minimizer of sum t subject to sum k_j / t_j = epsilon:
// projected gradient with Armijo backtracking on the simplex variables
// w_j = k_j / (epsilon t_j). Settings with k_j = 0 come back as 0.
std::vector<double> budget_oracle(const std::vector<double>& k, double epsilon);

// Depolarizing weight p at which a depolarized n-qubit SC state has the
// given all-H plus all-V mass P_1 = p + (1 - p) 2 / d.
double weight_for_p1(int n, double p1);

}  // namespace qcopies::testing
