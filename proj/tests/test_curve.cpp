#include <doctest.h>

#include <random>

#include "isolab/curve.hpp"
#include "isolab/errors.hpp"
#include "isolab/text.hpp"

using namespace isolab;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }

SuperellipticCurve curve01x(int m, int n) {
  SuperellipticCurve c;
  c.m = m;
  c.n = n;
  c.a = {RatFunc(0), RatFunc(1), P("x")};
  return c;
}

// u = F^alpha by the power recurrence k f0 u_k = sum_i (alpha i - k + i) f_i u_{k-i}.
template <class T, class Conv>
std::vector<T> power_recurrence(const std::vector<T>& f, const Rational& alpha, int terms, Conv conv) {
  std::vector<T> u(static_cast<std::size_t>(terms), T(0));
  u[0] = T(1);
  for (int k = 1; k < terms; ++k) {
    T s(0);
    for (int i = 1; i <= k && i < static_cast<int>(f.size()); ++i)
      s += conv(alpha * Rational(i) - Rational(k - i)) * f[static_cast<std::size_t>(i)] *
           u[static_cast<std::size_t>(k - i)];
    u[static_cast<std::size_t>(k)] = s / (conv(Rational(k)) * f[0]);
  }
  return u;
}

// F(t) = prod_h (1 - a_h t^step) as a dense coefficient list.
std::vector<RatFunc> infinity_poly(const std::vector<RatFunc>& a, int step) {
  std::vector<RatFunc> f{RatFunc(1)};
  for (const auto& ah : a) {
    std::vector<RatFunc> g(f.size() + static_cast<std::size_t>(step), RatFunc());
    for (std::size_t k = 0; k < f.size(); ++k) {
      g[k] += f[k];
      g[k + static_cast<std::size_t>(step)] -= f[k] * ah;
    }
    f = g;
  }
  return f;
}

template <class T>
void check_same_to_order(const TruncatedSeries<T>& x, const TruncatedSeries<T>& y, int upto) {
  for (int e = std::min(x.leading_exponent, y.leading_exponent); e < upto; ++e) CHECK(x.coefficient(e) == y.coefficient(e));
}

}  // namespace

TEST_CASE("curve invariants examples") {
  auto c = curve_invariants(3, 3);
  CHECK(c.s == 3);
  CHECK(c.genus == 1);
  CHECK(c.infinity_points == 3);
  CHECK(curve_invariants(2, 3).s == 1);
  CHECK(curve_invariants(2, 3).genus == 1);
  CHECK(curve_invariants(3, 5).genus == 4);
  CHECK(cycle_count(3, 3, 1) == 4);
  CHECK(cycle_count(1, 3, -1) == 2);
  CHECK(curve_invariants(1, 3, -1).finite_poles == 3);
  CHECK_THROWS_AS(curve_invariants(0, 3), PreconditionError);
}

TEST_CASE("genus formula over the invariants grid") {
  for (int m = 1; m <= 6; ++m) {
    for (int N = 2; N <= 8; ++N) {
      auto c = curve_invariants(m, N);
      CHECK(c.s * c.N1 == N);
      CHECK(c.s * c.m1 == m);
      CHECK(c.genus >= 0);
      if (c.s == 1) CHECK(2 * c.genus == (m - 1) * (N - 1));
      CHECK(2 * c.genus + c.s - 1 == (m - 1) * (N - 1));
      CHECK(cycle_count(m, N, -1) == 2 * c.genus + N - 1);
    }
  }
}

TEST_CASE("chart at infinity") {
  SUBCASE("m = N = 3 leading terms") {
    auto ch = expand_at_infinity(curve01x(3, 1), 1, 1);
    CHECK(ch.z.leading_exponent == -1);
    CHECK(ch.z.coefficients.size() == 1);
    CHECK(ch.w.leading_exponent == -1);
    CHECK(ch.w.coefficient(-1) == RatFunc(1));
  }
  SUBCASE("m = 2, N = 3") {
    auto ch = expand_at_infinity(curve01x(2, 1), 1, 3);
    CHECK(ch.z.leading_exponent == -2);
    CHECK(ch.w.leading_exponent == -3);
    CHECK(ch.tag.den == 1);
  }
  SUBCASE("coefficients match the power recurrence") {
    for (int m : {2, 3, 4}) {
      auto c = curve01x(m, 1);
      auto inv = curve_invariants(m, 3);
      int terms = 12;
      auto ch = expand_at_infinity(c, 1, terms);
      auto u = power_recurrence(infinity_poly(c.a, inv.m1), Rational(1, m), terms,
                                [](const Rational& r) { return RatFunc(r); });
      for (int k = 0; k < terms; ++k) CHECK(ch.w.coefficient(-inv.N1 + k) == u[static_cast<std::size_t>(k)]);
    }
  }
  SUBCASE("third coefficient for m = N = 3 by hand") {
    // (1 - t)^(1/3)(1 - x t)^(1/3): t^2 coefficient is -1/9 (1 + x^2) + 1/9 x.
    auto ch = expand_at_infinity(curve01x(3, 1), 1, 3);
    CHECK(ch.w.coefficient(1) == P("-1/9*x^2 + 1/9*x - 1/9"));
    CHECK_THROWS_AS(ch.w.coefficient(2), InsufficientOrder);
  }
  SUBCASE("root of unity tag") {
    auto ch = expand_at_infinity(curve01x(3, 1), 3, 2);
    CHECK(ch.tag.num == 2);
    CHECK(ch.tag.den == 3);
  }
  CHECK_THROWS_AS(expand_at_infinity(curve01x(3, 1), 4, 2), PreconditionError);
  CHECK_THROWS_AS(expand_at_infinity(curve01x(3, 1), 1, 0), PreconditionError);
  CHECK_THROWS_AS(expand_at_infinity(curve01x(3, 1), 1, 1 << 20), InsufficientOrder);
}

TEST_CASE("chart at a branch point") {
  SUBCASE("z has exactly two terms") {
    for (int nu = 1; nu <= 3; ++nu) {
      auto ch = expand_at_branch_point(curve01x(2, -1), nu, 4);
      int nonzero = 0;
      for (const auto& c : ch.z.coefficients) nonzero += !c.is_zero();
      CHECK(nonzero == (nu == 1 ? 1 : 2));  // a_1 = 0 drops the constant
      CHECK(ch.z.coefficient(2) == RatFunc(1));
    }
  }
  SUBCASE("leading coefficient is the product of differences") {
    auto ch = expand_at_branch_point(curve01x(3, -1), 1, 4);
    CHECK(ch.w.coefficient(1) == RatFunc(1));
    REQUIRE(ch.radical.factors.size() == 2);
    CHECK(ch.radical.pow(Rational(3)).as_ratfunc() == P("x"));
  }
  SUBCASE("numeric N = 2, m = 2 against the binomial series") {
    NumericCurve c{2, -1, {0.0, 1.0}};
    auto ch = expand_at_branch_point(c, 1, 6);
    // w = t (t^2 - 1)^(1/2) = i t (1 - t^2)^(1/2) on the principal branch of (-1)^(1/2).
    cplx i(0, 1);
    CHECK(std::abs(ch.w.coefficient(1) - i) < 1e-14);
    CHECK(std::abs(ch.w.coefficient(3) + i / 2.0) < 1e-14);
    CHECK(std::abs(ch.w.coefficient(5) + i / 8.0) < 1e-14);
    CHECK(std::abs(ch.w.coefficient(2)) == 0.0);
  }
  SuperellipticCurve bad = curve01x(2, -1);
  bad.a[2] = RatFunc(1);
  CHECK_THROWS_AS(expand_at_branch_point(bad, 1, 3), DomainError);
  NumericCurve nbad{2, -1, {0.0, 1.0, 1.0 + 1e-14}};
  CHECK_THROWS_AS(expand_at_branch_point(nbad, 1, 3), DomainError);
}

TEST_CASE("differentiated curve equation holds in every chart") {
  for (int m : {2, 3}) {
    auto c = curve01x(m, m == 2 ? -1 : 1);
    auto inv = curve_invariants(m, 3);
    std::vector<SymbolicChart> charts;
    for (int k = 1; k <= inv.s; ++k) charts.push_back(expand_at_infinity(c, k, 8));
    for (int nu = 1; nu <= 3; ++nu) charts.push_back(expand_at_branch_point(c, nu, 8));
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
      auto& ch = charts[ci];
      // Branch charts carry a radical factor r with r^m rational; infinity charts carry
      // a root of unity that drops out of the m-th power.
      RatFunc rm = ci < static_cast<std::size_t>(inv.s) ? RatFunc(1) : ch.radical.pow(Rational(m)).as_ratfunc();
      auto lhs = power(ch.w, m - 1, 8) * ch.w.derivative();
      for (auto& x : lhs.coefficients) x *= RatFunc(m) * rm;
      TruncatedSeries<RatFunc> dP = TruncatedSeries<RatFunc>::exact(0, {});
      for (int i = 0; i < 3; ++i) {
        auto prod = TruncatedSeries<RatFunc>::monomial(0, RatFunc(1));
        for (int h = 0; h < 3; ++h)
          if (h != i) prod = prod * (ch.z + TruncatedSeries<RatFunc>::monomial(0, -c.a[static_cast<std::size_t>(h)]));
        dP = dP + prod;
      }
      auto rhs = dP * ch.z.derivative();
      check_same_to_order(lhs, rhs, lhs.order);
    }
  }
}

TEST_CASE("residue oracle examples") {
  SUBCASE("torus with three punctures: residue proportional to 1 + x") {
    auto r = residue_series_oracle(curve01x(3, 1), 1, 1, InfinityPole{1});
    CHECK(oracle_constant(3, 3, 1, 1, InfinityPole{1}) == Rational(1));
    CHECK(r.value == P("(x + 1)/3"));
    CHECK(r.tag.num == 0);
  }
  SUBCASE("coprime m and N give zero") {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) CHECK(residue_series_oracle(curve01x(2, 1), i, j, InfinityPole{1}).value.is_zero());
  }
  SUBCASE("sphere: m = 1, n = -1, pole at (0, 0)") {
    auto c = curve01x(1, -1);
    CHECK(residue_series_oracle(c, 2, 1, BranchPole{1}).value == P("-1/x"));
    CHECK(residue_series_oracle(c, 1, 1, BranchPole{1}).value == P("(1 + x)/x^2"));
    CHECK(residue_series_oracle(c, 3, 1, BranchPole{1}).value == P("-1/x^2"));
  }
  SUBCASE("branch residue vanishes unless m divides j|n|") {
    auto c = curve01x(2, -1);
    CHECK(residue_series_oracle(c, 2, 1, BranchPole{1}).value.is_zero());
    CHECK_FALSE(residue_series_oracle(c, 2, 2, BranchPole{1}).value.is_zero());
  }
  CHECK_THROWS_AS(residue_series_oracle(curve01x(3, 1), 1, 1, BranchPole{1}), PreconditionError);
  CHECK_THROWS_AS(residue_series_oracle(curve01x(2, -1), 1, 1, InfinityPole{1}), PreconditionError);
}

TEST_CASE("residues over all poles sum to zero") {
  // n > 0: the only poles are at infinity; n < 0: only at the branch points.
  for (int m : {2, 3}) {
    for (int j = 1; j <= 3; ++j) {
      auto c = curve01x(m, -1);
      for (int i = 1; i <= 3; ++i) {
        RatFunc sum;
        for (int nu = 1; nu <= 3; ++nu) sum += residue_series_oracle(c, i, j, BranchPole{nu}).value;
        CHECK(sum.is_zero());
      }
    }
  }
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 10; ++it) {
    NumericCurve c{3, 1, {cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))}};
    for (int j : {1, 2, 4}) {
      cplx sum = 0;
      for (int k = 1; k <= 3; ++k) sum += residue_series_oracle(c, 1, j, InfinityPole{k});
      CHECK(std::abs(sum) < 1e-9 * (1 + std::abs(residue_series_oracle(c, 1, j, InfinityPole{1}))));
    }
  }
}

TEST_CASE("numeric oracle agrees with symbolic evaluation") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 10; ++it) {
    cplx x(u(rng), u(rng));
    for (int m : {2, 3}) {
      int n = m == 3 ? 1 : -1;
      auto sc = curve01x(m, n);
      NumericCurve nc{m, n, {0.0, 1.0, x}};
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 4; ++j) {
          Pole pole = n > 0 ? Pole(InfinityPole{2}) : Pole(BranchPole{2});
          auto s = residue_series_oracle(sc, i, j, pole);
          cplx expect = s.value.evaluate({{"x", x}}) * s.tag.value();
          cplx got = residue_series_oracle(nc, i, j, pole);
          // Nonzero branch residues carry an integer power of the radical, so principal
          // roots in the numeric chart introduce no ambiguity.
          CHECK(std::abs(got - expect) < 1e-9 * (1 + std::abs(expect)));
        }
      }
    }
  }
}
