// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "cli.hpp"
#include "isolab/curve.hpp"
#include "isolab/errors.hpp"
#include "isolab/garnier.hpp"
#include "isolab/golden.hpp"
#include "isolab/painleve.hpp"
#include "isolab/periods.hpp"
#include "isolab/schlesinger.hpp"

using namespace isolab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Verdict golden(const std::string& id) {
  Verdict v;
  auto r = reproduce_example(id);
  for (const auto& c : r.checks)
    if (!c.pass) v.fail(c.name + ": " + c.detail);
  if (v.pass) v.detail = std::to_string(r.checks.size()) + " checks";
  return v;
}

Verdict pvi_residuals() {
  Verdict v;
  int count = 0;
  auto run = [&](const PVISolutionFamily& f, const std::string& label) {
    ++count;
    if (!pvi_residual(f.y, f.params).is_zero()) v.fail(label);
  };
  for (int n = 1; n <= 12; ++n)
    if (n % 3 != 0) run(thm5_solution(n), "polynomial family n=" + std::to_string(n));
  for (int n = -1; n >= -5; --n) run(thm6_family(n), "rational family n=" + std::to_string(n));
  const std::vector<std::tuple<int, Rational, Rational>> grid{
      {1, Rational(-1, 3), Rational(1, 3)}, {2, Rational(-2, 3), Rational(-1, 3)}, {3, Rational(1, 2), Rational(1, 5)},
      {4, Rational(2, 7), Rational(-3, 2)}, {5, Rational(-5, 4), Rational(2, 3)},  {2, Rational(0), Rational(2)},
      {3, Rational(7, 3), Rational(-1, 2)}, {1, Rational(4), Rational(-5, 6)},     {6, Rational(1, 9), Rational(3, 4)},
      {4, Rational(-3), Rational(5, 2)}};
  for (const auto& [n, b, c] : grid) run(thm7_solution(n, b, c), "free b, c at n=" + std::to_string(n) + " b=" + b.str() + " c=" + c.str());
  int admissible = 0;
  for (int a = 1; a <= 8; ++a)
    for (int c = 2; c < a; ++c)
      for (int b = 1; b < c - 1; ++b)
        if (c - a < b) {
          ++admissible;
          run(thm8_family(a, b, c), "integer family (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
  if (v.pass) v.detail = std::to_string(count) + " families, " + std::to_string(admissible) + " integer triples";
  return v;
}

// Instances of the triangular constructions whose hypotheses hold.
std::vector<TriangularSolution> schlesinger_grid() {
  std::vector<TriangularSolution> out;
  for (int p = 2; p <= 4; ++p)
    for (int N = 2; N <= 5; ++N) {
      for (int m : {2, 3, 4})
        for (int n : {1, 2}) {
          try {
            out.push_back(build_polynomial_solution(p, N, m, n, {}));
          } catch (const PreconditionError&) {
          }
        }
      for (int m : {1, 2})
        for (int n : {-1, -2, -3}) {
          try {
            out.push_back(build_rational_solution(p, N, m, n, {}, 1));
          } catch (const PreconditionError&) {
          }
        }
    }
  return out;
}

std::string describe(const TriangularSolution& s) {
  return s.family + " p=" + std::to_string(s.p) + " N=" + std::to_string(s.N) + " m=" + std::to_string(s.m) +
         " n=" + std::to_string(s.n);
}

Verdict schlesinger_residuals(const std::vector<TriangularSolution>& grid) {
  Verdict v;
  int inhom = 0;
  for (const auto& s : grid) {
    auto rep = schlesinger_residual(s);
    if (!rep.equations_hold()) v.fail("Schlesinger residual nonzero for " + describe(s));
    if (s.p >= 3) {
      ++inhom;
      if (!rep.inhomogeneity_vanishes()) v.fail("inhomogeneity nonzero for " + describe(s));
    }
    for (const auto& r : sum_constraint(s))
      if (!r.is_zero()) v.fail("sum constraint fails for " + describe(s));
  }
  if (grid.empty()) v.fail("no admissible instances");
  if (v.pass) v.detail = std::to_string(grid.size()) + " instances, " + std::to_string(inhom) + " with p >= 3";
  return v;
}

Verdict oracle_equivalence(const std::vector<TriangularSolution>& grid) {
  Verdict v;
  int compared = 0;
  for (const auto& s : grid) {
    SuperellipticCurve curve;
    curve.m = s.m;
    curve.n = s.n;
    for (int h = 1; h <= s.N; ++h)
      curve.a.push_back(s.gauge_pole && *s.gauge_pole == h ? RatFunc(0) : RatFunc::variable(TriangularSolution::var(h)));
    Pole pole = s.family == "polynomial" ? Pole(InfinityPole{s.pole}) : Pole(BranchPole{s.pole});
    for (int k = 1; k <= s.p; ++k)
      for (int l = k + 1; l <= s.p; ++l) {
        const int j = l - k;
        const RatFunc constant(oracle_constant(s.m, s.N, s.n, j, pole));
        for (int i = 1; i <= s.N; ++i) {
          ++compared;
          if (!(residue_series_oracle(curve, i, j, pole).value == s.entry(i, k, l) * constant))
            v.fail("oracle differs for " + describe(s) + " i=" + std::to_string(i) + " (k,l)=(" + std::to_string(k) + "," +
                   std::to_string(l) + ")");
        }
      }
  }
  if (v.pass) v.detail = std::to_string(compared) + " entries equal";
  return v;
}

Verdict curve_counts() {
  Verdict v;
  int cells = 0;
  for (int m = 1; m <= 6; ++m)
    for (int N = 2; N <= 8; ++N) {
      ++cells;
      auto c = curve_invariants(m, N);
      const int s = std::gcd(m, N);
      std::string at = " at (m,N)=(" + std::to_string(m) + "," + std::to_string(N) + ")";
      if (c.s != s || c.infinity_points != s) v.fail("points at infinity" + at);
      if (2 * c.genus != (m - 1) * (N - 1) - s + 1) v.fail("genus" + at);
      if (cycle_count(m, N, 1) != (m - 1) * (N - 1)) v.fail("cycle count (n > 0)" + at);
      if (cycle_count(m, N, -1) != 2 * c.genus + N - 1) v.fail("cycle count (n < 0)" + at);
    }
  if (curve_invariants(3, 3).genus != 1) v.fail("genus at (3,3)");
  if (cycle_count(3, 3, 1) != 4) v.fail("L at (3,3)");
  if (cycle_count(1, 3, -1) != 2) v.fail("L at (1,3)");
  if (v.pass) v.detail = std::to_string(cells) + " grid cells; g=1, L=4 at (3,3); L=2 at (1,3)";
  return v;
}

Verdict periods() {
  Verdict v;
  const long double two_pi = 2 * std::acos(-1.0L);
  int cases = 0;
  std::ostringstream worst;
  long double sum_w = 0, loop_w = 0, fd_w = 0;
  std::vector<std::string> low_rank;
  const std::vector<std::vector<cplx>> points{{0, 1, cplx(2, 1)}, {0, 1, cplx(2, 1), cplx(-1, 0.5)}};
  for (int m : {1, 2, 3, 4})
    for (const auto& a : points)
      for (int n : {1, 2, -1, -2})
        for (int j : {1, 2}) {
          // n > 0 with m dividing j n gives exact differentials.
          if (std::gcd(m, std::abs(n)) != 1 || (n > 0 && (j * n) % m == 0)) continue;
          NumericCurve c{m, n, a};
          auto cycles = build_cycle_basis(c);
          if (cycles.empty()) continue;
          ++cases;
          std::string tag = " (m,N,n,j)=(" + std::to_string(m) + "," + std::to_string(c.N()) + "," + std::to_string(n) + "," +
                            std::to_string(j) + ")";
          auto B = period_matrix(c, j, cycles);
          long double scale = 0, sum = 0;
          for (const auto& r : B.entry)
            for (const auto& e : r) scale = std::max(scale, std::abs(e));
          for (int k = 0; k < B.L(); ++k) {
            cld s = 0;
            for (int i = 0; i < B.N; ++i) s += B.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            sum = std::max(sum, std::abs(s) / scale);
          }
          sum_w = std::max(sum_w, sum);
          if (!(sum < 1e-9L)) v.fail("column sum" + tag);
          if (const int r = rank_check(B); r != c.N() - 1) low_rank.push_back(tag.substr(1) + " rank " + std::to_string(r));
          // Small loops: around the points at infinity, or the punctures when n < 0.
          const int loops = n > 0 ? curve_invariants(m, c.N(), n).s : c.N();
          for (int k = 1; k <= loops; ++k) {
            PathSpec loop = n > 0 ? infinity_loop(c, k) : puncture_loop(c, k);
            Pole pole = n > 0 ? Pole(InfinityPole{k}) : Pole(BranchPole{k});
            for (int i = 1; i <= c.N(); ++i) {
              cld got = integrate_omega(c, i, j, loop);
              cld want = cld(0, two_pi) * cld(residue_series_oracle(c, i, j, pole));
              long double err = std::abs(got - want) / std::max(1.0L, std::abs(want));
              loop_w = std::max(loop_w, err);
              if (!(err < 1e-8L)) v.fail("small loop" + tag);
            }
          }
          for (const auto& cyc : cycles) {
            long double fd = isomonodromy_fd_check(c, j, cyc);
            fd_w = std::max(fd_w, fd);
            if (!(fd < 1e-6L)) v.fail("finite-difference check" + tag);
          }
        }
  worst.precision(2);
  worst << cases << " cases; worst column sum " << static_cast<double>(sum_w) << ", small loop " << static_cast<double>(loop_w)
        << ", finite difference " << static_cast<double>(fd_w);
  if (!low_rank.empty()) {
    // Two exact combinations exist in these cases; see the rank-drop test in the periods suite.
    std::string list;
    for (const auto& r : low_rank) list += (list.empty() ? "" : "; ") + r;
    v.fail("rank below N - 1 in " + std::to_string(low_rank.size()) + " cases: " + list + ". Other checks: " + worst.str());
  }
  if (v.pass) v.detail = worst.str();
  return v;
}

Verdict zero_distributions() {
  Verdict v;
  int palins = 0;
  for (int n = 1; n <= 50; ++n) {
    if (n % 3 == 0) continue;
    ++palins;
    auto f = thm5_solution(n);
    if (!is_palindromic(f.pq->second)) v.fail("Q not palindromic at n=" + std::to_string(n));
  }
  for (int n : {25, 28}) {
    auto f = thm5_solution(n);
    for (const auto* poly : {&f.pq->first, &f.pq->second}) {
      auto z = polynomial_zeros(*poly, 1e-8L);
      if (!z.conjugation_symmetric || !z.inversion_paired) v.fail("root symmetry at n=" + std::to_string(n));
    }
    const char* args[] = {"isolab", "zeros", "--n", n == 25 ? "25" : "28", "--format", "csv"};
    std::ostringstream out, err;
    if (cli::run(6, args, out, err) != 0) v.fail("zeros command failed at n=" + std::to_string(n));
    std::map<std::string, int> rows;
    std::istringstream is(out.str());
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) ++rows[line.substr(0, line.find(','))];
    const int want = n + 1;
    if (rows.size() != 2) v.fail("expected two polynomials at n=" + std::to_string(n));
    for (const auto& [id, count] : rows)
      if (count != want) v.fail(id + " has " + std::to_string(count) + " rows, expected " + std::to_string(want));
  }
  if (v.pass) v.detail = std::to_string(palins) + " palindromes; CSV rows 26/26 and 29/29";
  return v;
}

Verdict liouvillian() {
  Verdict v;
  long double wr = 0, ode = 0;
  for (const auto& [n, b, c] : {std::tuple{1, Rational(-1, 3), Rational(1, 3)}, std::tuple{2, Rational(-2, 3), Rational(-1, 3)}})
    for (const auto& s : liouvillian_eval(n, b, c, {2, 3, 5})) {
      wr = std::max(wr, std::abs(s.wronskian / s.wronskian_expected - 1));
      ode = std::max(ode, std::abs(s.ode_residual));
    }
  if (!(wr < 1e-8L)) v.fail("Wronskian relative error " + std::to_string(static_cast<double>(wr)));
  if (!(ode < 1e-6L)) v.fail("ODE residual " + std::to_string(static_cast<double>(ode)));
  std::ostringstream os;
  os.precision(2);
  os << "Wronskian " << static_cast<double>(wr) << ", ODE " << static_cast<double>(ode);
  if (v.pass) v.detail = os.str();
  return v;
}

}  // namespace

int main() {
  std::vector<TriangularSolution> grid;
  struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0: no runtime bound
    std::function<Verdict()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "polynomial PVI example reproduced exactly", 1, [] { return golden("example-1"); }},
      {2, "rational PVI example reproduced exactly", 1, [] { return golden("example-2"); }},
      {3, "PVI residual vanishes on all families", 60, pvi_residuals},
      {4, "Schlesinger residual, sum and inhomogeneity vanish", 120,
       [&] {
         grid = schlesinger_grid();
         return schlesinger_residuals(grid);
       }},
      {5, "residue oracle equals the closed forms", 0, [&] { return oracle_equivalence(grid); }},
      {6, "curve invariants and cycle counts", 0, curve_counts},
      {7, "period matrices: sums, rank, small loops, isomonodromy", 300, periods},
      {8, "zero distributions of the special polynomials", 0, zero_distributions},
      {9, "Okamoto image of the degenerate solution", 0, [] { return golden("example-3"); }},
      {10, "Garnier coefficients and Hamiltonian residuals", 120,
       [] {
         Verdict a = golden("example-8"), b = golden("example-9");
         if (!a.pass) return a;
         if (!b.pass) return b;
         return Verdict{true, "first example " + a.detail + ", second example " + b.detail};
       }},
      {11, "Liouvillian second solution", 0, liouvillian},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds " << c.limit_s << " s";
      v.fail(os.str());
    }
    if (!v.pass) ++failed;
    std::printf("criterion %2d: %s  %s (%.2f s): %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
