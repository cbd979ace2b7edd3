#include "isolab/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

using Mat = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch diagonal similarity with powers of two.
void balance(Mat& a) {
  const long double radix = 2.0L;
  const auto n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      long double c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      long double g = r / radix, f = 1, s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95L * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

cld horner(const std::vector<cld>& coeffs, cld z) {
  cld acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void sort_roots(std::vector<cld>& roots) {
  // Real parts are compared after rounding so that conjugate pairs tie exactly.
  auto key = [](const cld& z) { return std::round(z.real() * 1e12L) / 1e12L; };
  std::sort(roots.begin(), roots.end(), [&](const cld& u, const cld& v) {
    long double ku = key(u), kv = key(v);
    if (ku != kv) return ku < kv;
    return u.imag() < v.imag();
  });
}

std::vector<cld> polynomial_roots(std::vector<cld> coeffs) {
  while (!coeffs.empty() && coeffs.back() == cld(0)) coeffs.pop_back();
  if (coeffs.empty()) throw DomainError("roots of the zero polynomial");
  std::vector<cld> roots;
  std::size_t lead_zeros = 0;
  while (coeffs[lead_zeros] == cld(0)) ++lead_zeros;
  roots.assign(lead_zeros, cld(0));
  std::vector<cld> c(coeffs.begin() + static_cast<std::ptrdiff_t>(lead_zeros), coeffs.end());
  const auto deg = static_cast<Eigen::Index>(c.size()) - 1;
  if (deg >= 1) {
    Mat comp = Mat::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    balance(comp);
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericError("companion eigenvalues did not converge");
    std::vector<cld> dc(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) dc[k - 1] = c[k] * static_cast<long double>(k);
    for (Eigen::Index i = 0; i < deg; ++i) {
      cld z = es.eigenvalues()[i];
      cld d = horner(dc, z);
      if (std::abs(d) > 0) {
        cld step = horner(c, z) / d;
        if (std::isfinite(std::abs(step)) && std::abs(step) < 1e-3L * (1 + std::abs(z))) z -= step;
      }
      roots.push_back(z);
    }
  }
  sort_roots(roots);
  return roots;
}

}  // namespace isolab
