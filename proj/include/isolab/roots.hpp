#pragma once

#include <complex>
#include <vector>

namespace isolab {

using cld = std::complex<long double>;

// All roots of sum_k coeffs[k] z^k (lowest degree first), with multiplicity.
// Exact zero coefficients at the top are dropped; exact zero roots are split off.
// The rest come from the eigenvalues of a balanced companion matrix, then one
// Newton step per root. Sorted by (real, imag). Throws DomainError on the zero polynomial.
std::vector<cld> polynomial_roots(std::vector<cld> coeffs);

void sort_roots(std::vector<cld>& roots);

cld horner(const std::vector<cld>& coeffs, cld z);

}  // namespace isolab
