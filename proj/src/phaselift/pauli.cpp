#include <algorithm>
#include <array>
#include <cmath>

#include "qcopies/errors.hpp"
#include "qcopies/phaselift.hpp"

namespace qcopies {
namespace {

constexpr char kBasisName[3] = {'X', 'Y', 'Z'};

// Eigenkets of X, Y, Z: index 0 is the +1 eigenstate.
std::array<cplx, 2> eigenket(int basis, int sign) {
  const double r = M_SQRT1_2;
  switch (basis) {
    case 0:
      return sign == 0 ? std::array<cplx, 2>{r, r} : std::array<cplx, 2>{r, -r};
    case 1:
      return sign == 0 ? std::array<cplx, 2>{r, cplx(0, r)} : std::array<cplx, 2>{r, cplx(0, -r)};
    default:
      return sign == 0 ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
  }
}

}  // namespace

double PovmElement::expectation(const ComplexMatrix& rho) const {
  const std::size_t d = phi.size();
  cplx acc = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    cplx row = 0.0;
    for (std::size_t b = 0; b < d; ++b) row += rho(a, b) * phi[b];
    acc += std::conj(phi[a]) * row;
  }
  return acc.real();
}

std::vector<PovmGroup> pauli_settings(int n) {
  check_qubit_count(n);
  if (n > 4) throw SizeError("full Pauli enumeration is limited to n <= 4");
  std::size_t settings = 1;
  for (int q = 0; q < n; ++q) settings *= 3;
  const std::size_t d = std::size_t{1} << n;

  std::vector<PovmGroup> groups(settings);
  for (std::size_t s = 0; s < settings; ++s) {
    std::vector<int> basis(n);
    std::size_t rest = s;
    for (int q = n - 1; q >= 0; --q) {
      basis[q] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    auto& g = groups[s];
    for (int q = 0; q < n; ++q) g.label += kBasisName[basis[q]];
    for (std::size_t o = 0; o < d; ++o) {
      PovmElement e;
      e.setting = s;
      e.outcome = o;
      e.label = g.label + ":";
      e.phi.assign(1, 1.0);
      for (int q = 0; q < n; ++q) {
        const int sign = static_cast<int>((o >> (n - 1 - q)) & 1U);
        e.label += sign ? '-' : '+';
        const auto k = eigenket(basis[q], sign);
        std::vector<cplx> next(e.phi.size() * 2);
        for (std::size_t i = 0; i < e.phi.size(); ++i) {
          next[2 * i] = e.phi[i] * k[0];
          next[2 * i + 1] = e.phi[i] * k[1];
        }
        e.phi = std::move(next);
      }
      g.elements.push_back(std::move(e));
    }
  }
  return groups;
}

std::vector<std::vector<double>> pauli_probabilities(const DensityMatrix& rho, const std::vector<PovmGroup>& groups) {
  std::vector<std::vector<double>> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<double> p;
    p.reserve(g.elements.size());
    for (const auto& e : g.elements) {
      if (e.phi.size() != rho.dim()) throw SizeError("POVM element and state dimensions differ");
      p.push_back(std::max(0.0, e.expectation(rho.matrix())));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qcopies
