#include "isolab/curve.hpp"

#include <cmath>
#include <numeric>

#include "isolab/errors.hpp"
#include "isolab/special.hpp"

namespace isolab {

namespace {

constexpr int kMaxTerms = 1 << 12;

int mod(int a, int b) { return ((a % b) + b) % b; }

template <class T>
TruncatedSeries<T> strip_leading_zeros(TruncatedSeries<T> s, const T& zero) {
  std::size_t k = 0;
  while (k < s.coefficients.size() && s.coefficients[k] == zero) ++k;
  if (k == s.coefficients.size()) throw DomainError("series vanishes to the computed order");
  s.coefficients.erase(s.coefficients.begin(), s.coefficients.begin() + static_cast<long>(k));
  s.leading_exponent += static_cast<int>(k);
  return s;
}

// (1 + x t^step)^beta with `terms` coefficients, as a series in t.
template <class T>
TruncatedSeries<T> binomial_series(const T& x, const Rational& beta, int step, int terms) {
  TruncatedSeries<T> s;
  s.leading_exponent = 0;
  s.order = terms;
  s.coefficients.assign(static_cast<std::size_t>(terms), T(0));
  T xp(1);
  for (int k = 0; k * step < terms; ++k) {
    Rational b = binom(beta, static_cast<unsigned>(k));
    if constexpr (std::is_same_v<T, RatFunc>) {
      s.coefficients[static_cast<std::size_t>(k * step)] = RatFunc(b) * xp;
    } else {
      s.coefficients[static_cast<std::size_t>(k * step)] = T(b.to_double()) * xp;
    }
    xp = xp * x;
  }
  return s;
}

}  // namespace

CurveInvariants curve_invariants(int m, int N, int n) {
  if (m < 1 || N < 2) throw PreconditionError("curve invariants need m >= 1 and N >= 2");
  CurveInvariants c;
  c.s = std::gcd(m, N);
  c.N1 = N / c.s;
  c.m1 = m / c.s;
  c.genus = ((m - 1) * (N - 1) - c.s + 1) / 2;
  c.infinity_points = c.s;
  c.finite_poles = n < 0 ? N : 0;
  return c;
}

int cycle_count(int m, int N, int n) {
  if (n > 0) return (m - 1) * (N - 1);
  return 2 * curve_invariants(m, N, n).genus + N - 1;
}

SuperellipticCurve SuperellipticCurve::symbolic(int m, int N, int n) {
  SuperellipticCurve c;
  c.m = m;
  c.n = n;
  for (int i = 1; i <= N; ++i) c.a.push_back(RatFunc::variable("a" + std::to_string(i)));
  c.validate();
  return c;
}

void SuperellipticCurve::validate() const {
  if (m < 1) throw PreconditionError("m must be at least 1");
  if (N() < 2) throw PreconditionError("need at least two branch points");
  if (n == 0 || std::gcd(std::abs(n), m) != 1) throw PreconditionError("n must be nonzero and coprime to m");
  if (n > 0 && m < 2) throw PreconditionError("m > 1 is required when n > 0");
  for (int i = 0; i < N(); ++i)
    for (int h = i + 1; h < N(); ++h)
      if ((a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(h)]).is_zero())
        throw DomainError("coincident branch points");
}

void NumericCurve::validate() const {
  if (m < 1) throw PreconditionError("m must be at least 1");
  if (N() < 2) throw PreconditionError("need at least two branch points");
  if (n == 0 || std::gcd(std::abs(n), m) != 1) throw PreconditionError("n must be nonzero and coprime to m");
  for (int i = 0; i < N(); ++i)
    for (int h = i + 1; h < N(); ++h)
      if (std::abs(a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(h)]) < 1e-12)
        throw DomainError("coincident branch points");
}

cplx RootTag::value() const { return std::polar(1.0, 2.0 * M_PI * num / den); }

Radical Radical::pow(const Rational& e) const {
  Radical r = *this;
  for (auto& f : r.factors) f.second *= e;
  return r;
}

bool Radical::is_rational() const {
  for (const auto& f : factors)
    if (!f.second.is_integer()) return false;
  return true;
}

RatFunc Radical::as_ratfunc() const {
  RatFunc r(1);
  for (const auto& [base, e] : factors) {
    if (!e.is_integer()) throw DomainError("radical with a fractional exponent is not rational");
    r *= base.pow(static_cast<int>(e.num().get_si()));
  }
  return r;
}

SymbolicChart expand_at_infinity(const SuperellipticCurve& c, int k, int terms) {
  c.validate();
  auto inv = curve_invariants(c.m, c.N(), c.n);
  if (k < 1 || k > inv.s) throw PreconditionError("point at infinity index out of range");
  if (terms < 1) throw PreconditionError("series order must be positive");
  if (terms > kMaxTerms) throw InsufficientOrder("truncation order exceeds the internal cap");
  SymbolicChart ch;
  ch.z = TruncatedSeries<RatFunc>::monomial(-inv.m1, RatFunc(1));
  TruncatedSeries<RatFunc> u = TruncatedSeries<RatFunc>::exact(0, {RatFunc(1)});
  for (const auto& ai : c.a) u = u * binomial_series<RatFunc>(-ai, Rational(1, c.m), inv.m1, terms);
  u.leading_exponent = -inv.N1;
  u.order = -inv.N1 + terms;
  ch.w = u;
  ch.tag = RootTag{mod(k - 1, inv.s), inv.s};
  return ch;
}

NumericChart expand_at_infinity(const NumericCurve& c, int k, int terms) {
  c.validate();
  auto inv = curve_invariants(c.m, c.N(), c.n);
  if (k < 1 || k > inv.s) throw PreconditionError("point at infinity index out of range");
  if (terms < 1) throw PreconditionError("series order must be positive");
  if (terms > kMaxTerms) throw InsufficientOrder("truncation order exceeds the internal cap");
  NumericChart ch;
  ch.z = TruncatedSeries<cplx>::monomial(-inv.m1, cplx(1));
  TruncatedSeries<cplx> u = TruncatedSeries<cplx>::exact(0, {RootTag{mod(k - 1, inv.s), inv.s}.value()});
  for (const auto& ai : c.a) u = u * binomial_series<cplx>(-ai, Rational(1, c.m), inv.m1, terms);
  u.leading_exponent = -inv.N1;
  u.order = -inv.N1 + terms;
  ch.w = u;
  return ch;
}

SymbolicChart expand_at_branch_point(const SuperellipticCurve& c, int nu, int terms) {
  c.validate();
  if (nu < 1 || nu > c.N()) throw PreconditionError("branch point index out of range");
  if (terms < 1) throw PreconditionError("series order must be positive");
  if (terms > kMaxTerms) throw InsufficientOrder("truncation order exceeds the internal cap");
  const RatFunc& anu = c.a[static_cast<std::size_t>(nu - 1)];
  SymbolicChart ch;
  std::vector<RatFunc> zc(static_cast<std::size_t>(c.m + 1), RatFunc());
  zc[0] = anu;
  zc[static_cast<std::size_t>(c.m)] = RatFunc(1);
  ch.z = TruncatedSeries<RatFunc>::exact(0, zc);
  TruncatedSeries<RatFunc> u = TruncatedSeries<RatFunc>::exact(0, {RatFunc(1)});
  for (int h = 1; h <= c.N(); ++h) {
    if (h == nu) continue;
    RatFunc e = anu - c.a[static_cast<std::size_t>(h - 1)];
    if (e.is_zero()) throw DomainError("coincident branch points");
    u = u * binomial_series<RatFunc>(e.inverse(), Rational(1, c.m), c.m, terms);
    ch.radical.factors.emplace_back(e, Rational(1, c.m));
  }
  u.leading_exponent = 1;
  u.order = 1 + terms;
  ch.w = u;
  return ch;
}

NumericChart expand_at_branch_point(const NumericCurve& c, int nu, int terms) {
  c.validate();
  if (nu < 1 || nu > c.N()) throw PreconditionError("branch point index out of range");
  if (terms < 1) throw PreconditionError("series order must be positive");
  if (terms > kMaxTerms) throw InsufficientOrder("truncation order exceeds the internal cap");
  cplx anu = c.a[static_cast<std::size_t>(nu - 1)];
  NumericChart ch;
  std::vector<cplx> zc(static_cast<std::size_t>(c.m + 1), cplx(0));
  zc[0] = anu;
  zc[static_cast<std::size_t>(c.m)] = cplx(1);
  ch.z = TruncatedSeries<cplx>::exact(0, zc);
  cplx pref(1);
  TruncatedSeries<cplx> u = TruncatedSeries<cplx>::exact(0, {cplx(1)});
  for (int h = 1; h <= c.N(); ++h) {
    if (h == nu) continue;
    cplx e = anu - c.a[static_cast<std::size_t>(h - 1)];
    u = u * binomial_series<cplx>(1.0 / e, Rational(1, c.m), c.m, terms);
    pref *= std::pow(e, 1.0 / c.m);
  }
  for (auto& x : u.coefficients) x *= pref;
  u.leading_exponent = 1;
  u.order = 1 + terms;
  ch.w = u;
  return ch;
}

namespace {

template <class T>
T residue_from_chart(const TruncatedSeries<T>& z, const TruncatedSeries<T>& w, const T& ai, int power_jn,
                     int terms) {
  TruncatedSeries<T> wp = power(w, power_jn, terms);
  TruncatedSeries<T> dz = z.derivative();
  TruncatedSeries<T> zi = z + TruncatedSeries<T>::monomial(0, T(0) - ai);
  zi = strip_leading_zeros(zi, T(0));
  TruncatedSeries<T> prod = wp * dz * inverse(zi, terms + 2 * static_cast<int>(zi.coefficients.size()));
  return prod.coefficient(-1);
}

}  // namespace

SymbolicResidue residue_series_oracle(const SuperellipticCurve& c, int i, int j, const Pole& pole) {
  c.validate();
  if (i < 1 || i > c.N() || j < 1) throw PreconditionError("differential index out of range");
  auto inv = curve_invariants(c.m, c.N(), c.n);
  const RatFunc& ai = c.a[static_cast<std::size_t>(i - 1)];
  int jn = j * c.n;
  if (const auto* p = std::get_if<InfinityPole>(&pole)) {
    if (c.n < 0) throw PreconditionError("infinity points are poles only for n > 0");
    int terms = jn * inv.N1 + 2 * inv.m1;
    while (true) {
      try {
        auto ch = expand_at_infinity(c, p->k, terms);
        RatFunc v = residue_from_chart(ch.z, ch.w, ai, jn, terms);
        return SymbolicResidue{v, RootTag{mod(ch.tag.num * jn, inv.s), inv.s}};
      } catch (const InsufficientOrder&) {
        if (terms >= kMaxTerms) throw;
        terms *= 2;
      }
    }
  }
  const auto& bp = std::get<BranchPole>(pole);
  if (c.n > 0) throw PreconditionError("branch points are poles only for n < 0");
  int J = j * (-c.n);
  int terms = J + 2 * c.m;
  while (true) {
    try {
      auto ch = expand_at_branch_point(c, bp.nu, terms);
      RatFunc v = residue_from_chart(ch.z, ch.w, ai, jn, terms);
      if (v.is_zero()) return SymbolicResidue{RatFunc(), RootTag{0, 1}};
      Radical r = ch.radical.pow(Rational(jn));
      if (!r.is_rational()) throw Error("internal: nonzero residue with a fractional prefactor");
      return SymbolicResidue{v * r.as_ratfunc(), RootTag{0, 1}};
    } catch (const InsufficientOrder&) {
      if (terms >= kMaxTerms) throw;
      terms *= 2;
    }
  }
}

cplx residue_series_oracle(const NumericCurve& c, int i, int j, const Pole& pole) {
  c.validate();
  if (i < 1 || i > c.N() || j < 1) throw PreconditionError("differential index out of range");
  auto inv = curve_invariants(c.m, c.N(), c.n);
  cplx ai = c.a[static_cast<std::size_t>(i - 1)];
  int jn = j * c.n;
  int terms;
  bool at_inf = std::holds_alternative<InfinityPole>(pole);
  if (at_inf) {
    if (c.n < 0) throw PreconditionError("infinity points are poles only for n > 0");
    terms = jn * inv.N1 + 2 * inv.m1;
  } else {
    if (c.n > 0) throw PreconditionError("branch points are poles only for n < 0");
    terms = -jn + 2 * c.m;
  }
  while (true) {
    try {
      NumericChart ch = at_inf ? expand_at_infinity(c, std::get<InfinityPole>(pole).k, terms)
                               : expand_at_branch_point(c, std::get<BranchPole>(pole).nu, terms);
      return residue_from_chart(ch.z, ch.w, ai, jn, terms);
    } catch (const InsufficientOrder&) {
      if (terms >= kMaxTerms) throw;
      terms *= 2;
    }
  }
}

Rational oracle_constant(int m, int N, int n, int j, const Pole& pole) {
  if (std::holds_alternative<BranchPole>(pole)) return Rational(m);
  auto inv = curve_invariants(m, N, n);
  int jn = j * n;
  Rational r(-inv.m1);
  // N1 d = j n N / m; its parity only matters when it is an integer.
  if ((jn * N) % m == 0 && ((jn * N / m) % 2 != 0)) r = -r;
  return r;
}

}  // namespace isolab
