#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a *_serial twin that
// runs the identical arithmetic on one thread; the tests require the two
// to agree bit-for-bit and bench/ compares their throughput.

#include <array>
#include <span>
#include <vector>

#include "qcopies/core.hpp"

namespace qcopies::kernels {

// Single-qubit change of basis, row-major. Row r is the bra of outcome r.
using Gate2 = std::array<cplx, 4>;

// Born probabilities of all 2^n outcomes of the product basis whose
// per-qubit outcome bras are the rows of gates[q]. Qubit q is bit (n-1-q)
// of the outcome index, matching kron ordering. Returns
// diag(U rho U^†) with U = gates[0] ⊗ ... ⊗ gates[n-1].
std::vector<double> product_basis_probabilities(const ComplexMatrix& rho,
                                                std::span<const Gate2> gates);
std::vector<double> product_basis_probabilities_serial(const ComplexMatrix& rho,
                                                       std::span<const Gate2> gates);

// Sum of probs[s] over outcomes s with an even number of set bits.
double even_parity_mass(std::span<const double> probs);

}  // namespace qcopies::kernels
