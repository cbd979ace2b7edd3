#pragma once

#include <algorithm>
#include <climits>
#include <sstream>
#include <string>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

struct InsufficientOrder : Error {
  using Error::Error;
};

// Laurent series in t known exactly up to (not including) t^order. An exact series
// (a Laurent polynomial) has order == INT_MAX.
template <class T>
struct TruncatedSeries {
  int leading_exponent = 0;
  std::vector<T> coefficients;  // coefficient of t^(leading_exponent + k)
  int order = INT_MAX;

  static TruncatedSeries exact(int lead, std::vector<T> c) { return {lead, std::move(c), INT_MAX}; }
  static TruncatedSeries monomial(int e, T c) { return {e, {std::move(c)}, INT_MAX}; }

  bool is_exact() const { return order == INT_MAX; }

  // Coefficient of t^e; throws when e lies beyond the known range.
  T coefficient(int e) const {
    if (e >= order) {
      throw InsufficientOrder("coefficient t^" + std::to_string(e) + " beyond truncation order " +
                              std::to_string(order));
    }
    int k = e - leading_exponent;
    if (k < 0 || k >= static_cast<int>(coefficients.size())) return T(0);
    return coefficients[static_cast<std::size_t>(k)];
  }

  // Drop coefficients beyond a new (smaller) order.
  TruncatedSeries truncated(int new_order) const {
    TruncatedSeries r = *this;
    r.order = std::min(order, new_order);
    if (r.order != INT_MAX) {
      int keep = std::max(0, r.order - leading_exponent);
      if (static_cast<int>(r.coefficients.size()) > keep) r.coefficients.resize(static_cast<std::size_t>(keep));
    }
    return r;
  }

  TruncatedSeries derivative() const {
    TruncatedSeries r{leading_exponent - 1, {}, order == INT_MAX ? INT_MAX : order - 1};
    for (std::size_t k = 0; k < coefficients.size(); ++k)
      r.coefficients.push_back(coefficients[k] * T(leading_exponent + static_cast<int>(k)));
    return r;
  }
};

template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  TruncatedSeries<T> r;
  r.leading_exponent = a.leading_exponent + b.leading_exponent;
  long oa = a.order == INT_MAX ? LONG_MAX : static_cast<long>(a.order) + b.leading_exponent;
  long ob = b.order == INT_MAX ? LONG_MAX : static_cast<long>(b.order) + a.leading_exponent;
  long o = std::min(oa, ob);
  r.order = o == LONG_MAX ? INT_MAX : static_cast<int>(o);
  std::size_t len = a.coefficients.empty() || b.coefficients.empty()
                        ? 0
                        : a.coefficients.size() + b.coefficients.size() - 1;
  if (r.order != INT_MAX) len = std::min<std::size_t>(len, static_cast<std::size_t>(std::max(0, r.order - r.leading_exponent)));
  r.coefficients.assign(len, T(0));
  for (std::size_t i = 0; i < a.coefficients.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.coefficients.size() && i + j < len; ++j)
      r.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
  return r;
}

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  TruncatedSeries<T> r;
  r.leading_exponent = std::min(a.leading_exponent, b.leading_exponent);
  r.order = std::min(a.order, b.order);
  int hi = std::max(a.leading_exponent + static_cast<int>(a.coefficients.size()),
                    b.leading_exponent + static_cast<int>(b.coefficients.size()));
  if (r.order != INT_MAX) hi = std::min(hi, r.order);
  for (int e = r.leading_exponent; e < hi; ++e) {
    T c(0);
    int ka = e - a.leading_exponent, kb = e - b.leading_exponent;
    if (ka >= 0 && ka < static_cast<int>(a.coefficients.size())) c += a.coefficients[static_cast<std::size_t>(ka)];
    if (kb >= 0 && kb < static_cast<int>(b.coefficients.size())) c += b.coefficients[static_cast<std::size_t>(kb)];
    r.coefficients.push_back(c);
  }
  return r;
}

// Multiplicative inverse with `terms` known coefficients (or the input's precision if
// that is smaller). Requires a nonzero leading coefficient.
template <class T>
TruncatedSeries<T> inverse(const TruncatedSeries<T>& a, int terms) {
  if (a.coefficients.empty()) throw DomainError("inverse of an empty series");
  const T& c0 = a.coefficients[0];
  int avail = a.is_exact() ? terms : std::min(terms, a.order - a.leading_exponent);
  TruncatedSeries<T> r;
  r.leading_exponent = -a.leading_exponent;
  r.order = r.leading_exponent + avail;
  T inv0 = T(1) / c0;
  for (int k = 0; k < avail; ++k) {
    T s(0);
    for (int i = 1; i <= k && i < static_cast<int>(a.coefficients.size()); ++i)
      s += a.coefficients[static_cast<std::size_t>(i)] * r.coefficients[static_cast<std::size_t>(k - i)];
    r.coefficients.push_back(k == 0 ? inv0 : T(0) - s * inv0);
  }
  return r;
}

template <class T>
TruncatedSeries<T> power(const TruncatedSeries<T>& a, int e, int terms) {
  if (e < 0) return power(inverse(a, terms), -e, terms);
  TruncatedSeries<T> r = TruncatedSeries<T>::monomial(0, T(1));
  TruncatedSeries<T> base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

// Textual debug form: "c0*t^L + c1*t^(L+1) + ... + O(t^order)".
template <class T, class Fmt>
std::string to_string(const TruncatedSeries<T>& s, Fmt fmt) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
    std::string c = fmt(s.coefficients[k]);
    if (c == "0") continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*t^" << (s.leading_exponent + static_cast<int>(k));
  }
  if (first) os << "0";
  if (!s.is_exact()) os << " + O(t^" << s.order << ")";
  return os.str();
}

}  // namespace isolab
