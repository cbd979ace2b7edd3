#include "isolab/schlesinger.hpp"

#include <functional>
#include <numeric>

#include "isolab/curve.hpp"
#include "isolab/errors.hpp"
#include "isolab/special.hpp"
#include "isolab/text.hpp"

namespace isolab {

namespace {

std::vector<std::string> a_vars(int N, int skip = 0) {
  std::vector<std::string> v;
  for (int h = 1; h <= N; ++h)
    if (h != skip) v.push_back(TriangularSolution::var(h));
  return v;
}

std::vector<Rational> constants_or_ones(int p, const std::vector<Rational>& c) {
  if (c.empty()) return std::vector<Rational>(static_cast<std::size_t>(p - 1), Rational(1));
  if (static_cast<int>(c.size()) != p - 1) throw PreconditionError("expected p - 1 constants");
  return c;
}

// Visits every (k_1..k_len) with k_h >= 0 and sum exactly `total`.
void compositions(int len, int total, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> k(static_cast<std::size_t>(len), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == len - 1) {
      k[static_cast<std::size_t>(pos)] = left;
      f(k);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  if (len == 0) {
    if (total == 0) f(k);
    return;
  }
  rec(0, total);
}

// Laurent polynomial in the differences delta_h = a_nu - a_h (h != nu), keyed by exponents
// indexed 1..N (the nu slot unused).
using Laurent = std::map<std::vector<int>, Rational>;

Laurent rational_residue_laurent(int N, int d, int i, int nu) {
  std::vector<Rational> bc(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) bc[static_cast<std::size_t>(k)] = binom(Rational(-d), static_cast<unsigned>(k));
  Laurent acc;
  std::vector<int> e(static_cast<std::size_t>(N + 1), 0);
  if (i != nu) {
    // k over all N slots, sum d - 1.
    compositions(N, d - 1, [&](const std::vector<int>& k) {
      int knu = k[static_cast<std::size_t>(nu - 1)];
      Rational c = knu % 2 ? Rational(-1) : Rational(1);
      std::fill(e.begin(), e.end(), 0);
      e[static_cast<std::size_t>(i)] -= knu + 1;
      for (int h = 1; h <= N; ++h) {
        if (h == nu) continue;
        int kh = k[static_cast<std::size_t>(h - 1)];
        c *= bc[static_cast<std::size_t>(kh)];
        e[static_cast<std::size_t>(h)] -= kh + d;
      }
      acc[e] += c;
    });
  } else {
    compositions(N - 1, d, [&](const std::vector<int>& k) {
      Rational c(1);
      std::fill(e.begin(), e.end(), 0);
      int pos = 0;
      for (int h = 1; h <= N; ++h) {
        if (h == nu) continue;
        int kh = k[static_cast<std::size_t>(pos++)];
        c *= bc[static_cast<std::size_t>(kh)];
        e[static_cast<std::size_t>(h)] -= kh + d;
      }
      acc[e] += c;
    });
  }
  for (auto it = acc.begin(); it != acc.end();) it = it->second.is_zero() ? acc.erase(it) : std::next(it);
  return acc;
}

// delta_h -> -a_h: monomial numerator over a monomial denominator.
RatFunc laurent_in_gauge(const Laurent& L, int N, int nu) {
  if (L.empty()) return RatFunc();
  std::vector<std::string> vars = a_vars(N, nu);
  std::vector<int> lo(static_cast<std::size_t>(N + 1), 0);
  for (const auto& [e, c] : L)
    for (int h = 1; h <= N; ++h) lo[static_cast<std::size_t>(h)] = std::min(lo[static_cast<std::size_t>(h)], e[static_cast<std::size_t>(h)]);
  std::vector<Term> terms;
  for (const auto& [e, c] : L) {
    Term t;
    t.coef = c;
    int sign = 0;
    for (int h = 1; h <= N; ++h) {
      if (h == nu) continue;
      sign += e[static_cast<std::size_t>(h)];
      t.exp.push_back(static_cast<std::uint32_t>(e[static_cast<std::size_t>(h)] - lo[static_cast<std::size_t>(h)]));
    }
    if (sign % 2) t.coef = -t.coef;
    terms.push_back(std::move(t));
  }
  Exponents den_exp;
  for (int h = 1; h <= N; ++h)
    if (h != nu) den_exp.push_back(static_cast<std::uint32_t>(-lo[static_cast<std::size_t>(h)]));
  return RatFunc::normalize(MultiPoly(vars, std::move(terms)), MultiPoly::monomial(vars, den_exp, Rational(1)));
}

// delta_h -> a_nu - a_h over the common denominator prod delta_h^E_h.
RatFunc laurent_in_full(const Laurent& L, int N, int nu) {
  if (L.empty()) return RatFunc();
  std::vector<int> lo(static_cast<std::size_t>(N + 1), 0);
  for (const auto& [e, c] : L)
    for (int h = 1; h <= N; ++h) lo[static_cast<std::size_t>(h)] = std::min(lo[static_cast<std::size_t>(h)], e[static_cast<std::size_t>(h)]);
  MultiPoly anu = MultiPoly::variable(TriangularSolution::var(nu));
  std::vector<std::vector<MultiPoly>> powers(static_cast<std::size_t>(N + 1));
  for (int h = 1; h <= N; ++h) {
    if (h == nu) continue;
    MultiPoly delta = anu - MultiPoly::variable(TriangularSolution::var(h));
    auto& pw = powers[static_cast<std::size_t>(h)];
    pw.push_back(MultiPoly(1));
    for (int k = 1; k <= -lo[static_cast<std::size_t>(h)]; ++k) pw.push_back(pw.back() * delta);
  }
  MultiPoly num;
  for (const auto& [e, c] : L) {
    MultiPoly t(c);
    for (int h = 1; h <= N; ++h)
      if (h != nu) t = t * powers[static_cast<std::size_t>(h)][static_cast<std::size_t>(e[static_cast<std::size_t>(h)] - lo[static_cast<std::size_t>(h)])];
    num += t;
  }
  MultiPoly den(1);
  for (int h = 1; h <= N; ++h)
    if (h != nu) den = den * powers[static_cast<std::size_t>(h)].back();
  return RatFunc::normalize(num, den);
}

void check_branch_indices(int N, int i) {
  if (N < 2) throw PreconditionError("need at least two poles");
  if (i < 1 || i > N) throw PreconditionError("pole index out of range");
}

}  // namespace

ExponentGrid ExponentGrid::progression(int p, int N, int n, int m) {
  if (p < 2 || N < 2 || m < 1) throw PreconditionError("exponent grid needs p >= 2, N >= 2, m >= 1");
  ExponentGrid g;
  g.p = p;
  g.N = N;
  Rational step(n, m);
  for (int i = 0; i < N; ++i) {
    std::vector<Rational> row;
    for (int k = 1; k <= p; ++k) row.push_back((Rational(p + 1, 2) - Rational(k)) * step);
    g.beta.push_back(row);
  }
  return g;
}

void ExponentGrid::validate(int n, int m) const {
  if (std::gcd(std::abs(n), m) != 1 || n == 0) throw PreconditionError("n and m must be coprime");
  if (static_cast<int>(beta.size()) != N) throw PreconditionError("exponent grid has the wrong number of rows");
  Rational step(n, m);
  for (const auto& row : beta) {
    if (static_cast<int>(row.size()) != p) throw PreconditionError("exponent grid row has the wrong length");
    for (int k = 0; k + 1 < p; ++k)
      if (row[static_cast<std::size_t>(k)] - row[static_cast<std::size_t>(k + 1)] != step)
        throw PreconditionError("exponents are not a progression with step n/m");
  }
}

RatFunc TriangularSolution::entry(int i, int k, int l) const {
  if (k == l) return RatFunc(diag.at(i, k));
  if (k > l) return RatFunc();
  auto it = entries.find({i, k, l});
  return it == entries.end() ? RatFunc() : it->second;
}

TriangularSolution TriangularSolution::to_full_variables() const {
  if (!gauge_pole) return *this;
  TriangularSolution r = *this;
  r.gauge_pole.reset();
  std::map<std::string, RatFunc> shift;
  RatFunc anu = RatFunc::variable(var(*gauge_pole));
  for (int h = 1; h <= N; ++h)
    if (h != *gauge_pole) shift[var(h)] = RatFunc::variable(var(h)) - anu;
  for (auto& [key, v] : r.entries) v = v.substitute(shift);
  return r;
}

RatFunc TriangularSolution::specialized(int i, int k, int l, const std::map<std::string, RatFunc>& values) const {
  auto value_of = [&](const std::string& name) {
    auto it = values.find(name);
    return it == values.end() ? RatFunc::variable(name) : it->second;
  };
  std::map<std::string, RatFunc> sub;
  if (gauge_pole) {
    RatFunc base = value_of(var(*gauge_pole));
    for (int h = 1; h <= N; ++h)
      if (h != *gauge_pole) sub[var(h)] = value_of(var(h)) - base;
  } else {
    sub = values;
  }
  return entry(i, k, l).substitute(sub);
}

RatFunc polynomial_residue_formula(int N, int m, int n, int j, int i) {
  check_branch_indices(N, i);
  if (n <= 0 || m < 2 || j < 1) throw PreconditionError("residues at infinity need n > 0, m > 1, j >= 1");
  auto inv = curve_invariants(m, N, n);
  if (j % inv.m1 != 0) return RatFunc();
  int d = j * n / inv.m1;  // j n s / m
  int D = inv.N1 * d;
  Rational beta(d, inv.s);
  std::vector<Rational> bc(static_cast<std::size_t>(D + 1));
  for (int k = 0; k <= D; ++k) bc[static_cast<std::size_t>(k)] = binom(beta, static_cast<unsigned>(k));
  std::map<Exponents, Rational> acc;
  // k_1..k_N and q, total D.
  compositions(N + 1, D, [&](const std::vector<int>& k) {
    int q = k[static_cast<std::size_t>(N)];
    Rational c = q % 2 ? Rational(-1) : Rational(1);
    Exponents e(static_cast<std::size_t>(N), 0);
    for (int h = 0; h < N; ++h) {
      c *= bc[static_cast<std::size_t>(k[static_cast<std::size_t>(h)])];
      if (c.is_zero()) return;
      e[static_cast<std::size_t>(h)] = static_cast<std::uint32_t>(k[static_cast<std::size_t>(h)]);
    }
    e[static_cast<std::size_t>(i - 1)] += static_cast<std::uint32_t>(q);
    acc[e] += c;
  });
  std::vector<Term> terms;
  for (auto& [e, c] : acc)
    if (!c.is_zero()) terms.push_back(Term{e, c});
  return RatFunc(MultiPoly(a_vars(N), std::move(terms)));
}

RatFunc rational_residue_formula(int N, int m, int n, int j, int i, int nu, bool gauge) {
  check_branch_indices(N, i);
  check_branch_indices(N, nu);
  if (n >= 0 || m < 1 || j < 1) throw PreconditionError("residues at branch points need n < 0, m >= 1, j >= 1");
  if (j % m != 0) return RatFunc();
  int d = j * (-n) / m;
  Laurent L = rational_residue_laurent(N, d, i, nu);
  return gauge ? laurent_in_gauge(L, N, nu) : laurent_in_full(L, N, nu);
}

TriangularSolution build_polynomial_solution(int p, int N, int m, int n, const std::vector<Rational>& constants,
                                             int pole_index) {
  if (p < 2 || N < 2) throw PreconditionError("need p >= 2 and N >= 2");
  if (n <= 0 || m < 2 || std::gcd(n, m) != 1) throw PreconditionError("need n > 0, m > 1 coprime");
  auto inv = curve_invariants(m, N, n);
  if (inv.s < 2) throw PreconditionError("gcd(m, N) must exceed 1");
  if (pole_index < 1 || pole_index > inv.s) throw PreconditionError("pole index out of range");
  bool some = false;
  for (int j = 1; j <= p - 1; ++j) some = some || (j % inv.m1 == 0 && j % m != 0);
  if (!some) throw PreconditionError("no j <= p - 1 with s j / m integral and j / m fractional");
  TriangularSolution sol;
  sol.p = p;
  sol.N = N;
  sol.m = m;
  sol.n = n;
  sol.diag = ExponentGrid::progression(p, N, n, m);
  sol.family = "polynomial";
  sol.pole = pole_index;
  sol.constants = constants_or_ones(p, constants);
  for (int j = 1; j <= p - 1; ++j) {
    bool nonzero = j % inv.m1 == 0 && j % m != 0;
    for (int i = 1; i <= N; ++i) {
      RatFunc v = nonzero ? RatFunc(sol.constants[static_cast<std::size_t>(j - 1)]) * polynomial_residue_formula(N, m, n, j, i)
                          : RatFunc();
      for (int k = 1; k + j <= p; ++k) sol.entries[{i, k, k + j}] = v;
    }
  }
  return sol;
}

TriangularSolution build_rational_solution(int p, int N, int m, int n, const std::vector<Rational>& constants, int nu,
                                           bool gauge) {
  if (p < 2 || N < 2) throw PreconditionError("need p >= 2 and N >= 2");
  if (n >= 0 || m < 1 || std::gcd(-n, m) != 1) throw PreconditionError("need n < 0, m >= 1 coprime");
  if (nu < 1 || nu > N) throw PreconditionError("pole index out of range");
  bool some = false;
  for (int j = 1; j <= p - 1; ++j) some = some || j % m == 0;
  if (!some) throw PreconditionError("no j <= p - 1 divisible by m");
  TriangularSolution sol;
  sol.p = p;
  sol.N = N;
  sol.m = m;
  sol.n = n;
  sol.diag = ExponentGrid::progression(p, N, n, m);
  sol.family = "rational";
  sol.pole = nu;
  sol.constants = constants_or_ones(p, constants);
  if (gauge) sol.gauge_pole = nu;
  for (int j = 1; j <= p - 1; ++j) {
    for (int i = 1; i <= N; ++i) {
      RatFunc v = j % m == 0 ? RatFunc(sol.constants[static_cast<std::size_t>(j - 1)]) *
                                   rational_residue_formula(N, m, n, j, i, nu, gauge)
                             : RatFunc();
      for (int k = 1; k + j <= p; ++k) sol.entries[{i, k, k + j}] = v;
    }
  }
  return sol;
}

namespace {

struct OffTask {
  int i, j, k, l;
};

// d/da_j, where in the gauge d/da_nu = -sum_(h != nu) d/da_h.
RatFunc derivative(const TriangularSolution& s, const RatFunc& f, int j) {
  if (s.gauge_pole && *s.gauge_pole == j) {
    return -f.derivation(a_vars(s.N, j));
  }
  return f.partial(TriangularSolution::var(j));
}

RatFunc point(const TriangularSolution& s, int i) {
  if (s.gauge_pole && *s.gauge_pole == i) return RatFunc();
  return RatFunc::variable(TriangularSolution::var(i));
}

// [B_i, B_j]_(kl) restricted to k < s < l.
RatFunc inner_commutator(const TriangularSolution& s, int i, int j, int k, int l) {
  RatFunc c;
  for (int t = k + 1; t < l; ++t) c += s.entry(i, k, t) * s.entry(j, t, l) - s.entry(j, k, t) * s.entry(i, t, l);
  return c;
}

void off_diagonal_task(const TriangularSolution& s, const OffTask& t, ResidualEntry& res, ResidualEntry& inh) {
  RatFunc bi = s.entry(t.i, t.k, t.l), bj = s.entry(t.j, t.k, t.l);
  Rational lam_i = s.diag.at(t.i, t.k) - s.diag.at(t.i, t.l);
  Rational lam_j = s.diag.at(t.j, t.k) - s.diag.at(t.j, t.l);
  RatFunc inner = inner_commutator(s, t.i, t.j, t.k, t.l);
  RatFunc comm = RatFunc(lam_i) * bj - RatFunc(lam_j) * bi + inner;
  RatFunc diff = point(s, t.i) - point(s, t.j);
  RatFunc cleared = diff * derivative(s, bi, t.j) - comm;
  res = ResidualEntry{t.i, t.j, t.k, t.l, cleared.is_zero() ? RatFunc() : cleared / diff};
  inh = ResidualEntry{t.i, t.j, t.k, t.l, inner.is_zero() ? RatFunc() : inner / diff};
}

// dB_i/da_i + sum_j [B_i,B_j]/(a_i - a_j) equals (sum_h d/da_h) b_i - sum_(j != i) R_ij.
// In the gauge the translation derivative vanishes by construction.
RatFunc diagonal_value(const TriangularSolution& s, const std::vector<ResidualEntry>& off, int i, int k, int l) {
  RatFunc v;
  if (!s.gauge_pole) {
    v = s.entry(i, k, l).derivation(a_vars(s.N));
  }
  for (const auto& r : off)
    if (r.i == i && r.k == k && r.l == l) v -= r.value;
  return v;
}

std::vector<OffTask> off_tasks(const TriangularSolution& s) {
  std::vector<OffTask> tasks;
  for (int i = 1; i <= s.N; ++i)
    for (int j = 1; j <= s.N; ++j)
      if (j != i)
        for (int k = 1; k <= s.p; ++k)
          for (int l = k + 1; l <= s.p; ++l) tasks.push_back({i, j, k, l});
  return tasks;
}

std::vector<std::array<int, 3>> diag_tasks(const TriangularSolution& s) {
  std::vector<std::array<int, 3>> tasks;
  for (int i = 1; i <= s.N; ++i)
    for (int k = 1; k <= s.p; ++k)
      for (int l = k + 1; l <= s.p; ++l) tasks.push_back({i, k, l});
  return tasks;
}

ResidualReport residual_impl(const TriangularSolution& s, bool parallel) {
  s.diag.validate(s.n, s.m);
  auto tasks = off_tasks(s);
  ResidualReport rep;
  rep.off_diagonal.resize(tasks.size(), ResidualEntry{0, 0, 0, 0, RatFunc()});
  rep.inhomogeneity.resize(tasks.size(), ResidualEntry{0, 0, 0, 0, RatFunc()});
  long nt = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long t = 0; t < nt; ++t)
    off_diagonal_task(s, tasks[static_cast<std::size_t>(t)], rep.off_diagonal[static_cast<std::size_t>(t)],
                      rep.inhomogeneity[static_cast<std::size_t>(t)]);
  auto dt = diag_tasks(s);
  rep.diagonal.resize(dt.size(), ResidualEntry{0, 0, 0, 0, RatFunc()});
  long nd = static_cast<long>(dt.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long t = 0; t < nd; ++t) {
    auto [i, k, l] = dt[static_cast<std::size_t>(t)];
    rep.diagonal[static_cast<std::size_t>(t)] = ResidualEntry{i, i, k, l, diagonal_value(s, rep.off_diagonal, i, k, l)};
  }
  return rep;
}

}  // namespace

bool ResidualReport::equations_hold() const {
  for (const auto& r : off_diagonal)
    if (!r.value.is_zero()) return false;
  for (const auto& r : diagonal)
    if (!r.value.is_zero()) return false;
  return true;
}

bool ResidualReport::inhomogeneity_vanishes() const {
  for (const auto& r : inhomogeneity)
    if (!r.value.is_zero()) return false;
  return true;
}

ResidualReport schlesinger_residual(const TriangularSolution& sol) { return residual_impl(sol, true); }
ResidualReport schlesinger_residual_serial(const TriangularSolution& sol) { return residual_impl(sol, false); }

std::vector<RatFunc> sum_constraint(const TriangularSolution& sol) {
  std::vector<RatFunc> out;
  for (int k = 1; k <= sol.p; ++k)
    for (int l = k + 1; l <= sol.p; ++l) {
      RatFunc s;
      for (int i = 1; i <= sol.N; ++i) s += sol.entry(i, k, l);
      out.push_back(s);
    }
  return out;
}

std::vector<std::vector<Rational>> tau_exponents(const ExponentGrid& g) {
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(g.N), std::vector<Rational>(static_cast<std::size_t>(g.N)));
  for (int i = 1; i <= g.N; ++i)
    for (int j = 1; j <= g.N; ++j) {
      Rational s;
      for (int k = 1; k <= g.p; ++k) s += g.at(i, k) * g.at(j, k);
      a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = s;
    }
  return a;
}

nlohmann::json to_json(const TriangularSolution& sol) {
  nlohmann::json j;
  j["kind"] = "triangular_solution";
  j["family"] = sol.family;
  j["p"] = sol.p;
  j["N"] = sol.N;
  j["m"] = sol.m;
  j["n"] = sol.n;
  j["pole"] = sol.pole;
  j["gauge_pole"] = sol.gauge_pole ? nlohmann::json(*sol.gauge_pole) : nlohmann::json(nullptr);
  for (const auto& c : sol.constants) j["constants"].push_back(c.str());
  for (const auto& row : sol.diag.beta) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& b : row) r.push_back(b.str());
    j["exponents"].push_back(r);
  }
  j["entries"] = nlohmann::json::array();
  for (const auto& [key, v] : sol.entries)
    j["entries"].push_back({{"i", key[0]}, {"k", key[1]}, {"l", key[2]}, {"value", to_string(v)}});
  return j;
}

TriangularSolution solution_from_json(const nlohmann::json& j) {
  try {
    TriangularSolution s;
    s.family = j.at("family").get<std::string>();
    s.p = j.at("p").get<int>();
    s.N = j.at("N").get<int>();
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
    s.pole = j.at("pole").get<int>();
    if (!j.at("gauge_pole").is_null()) s.gauge_pole = j.at("gauge_pole").get<int>();
    for (const auto& c : j.at("constants")) s.constants.push_back(Rational::parse(c.get<std::string>()));
    s.diag.p = s.p;
    s.diag.N = s.N;
    for (const auto& row : j.at("exponents")) {
      std::vector<Rational> r;
      for (const auto& b : row) r.push_back(Rational::parse(b.get<std::string>()));
      s.diag.beta.push_back(r);
    }
    for (const auto& e : j.at("entries"))
      s.entries[{e.at("i").get<int>(), e.at("k").get<int>(), e.at("l").get<int>()}] =
          parse_ratfunc(e.at("value").get<std::string>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed solution JSON: ") + e.what());
  }
}

}  // namespace isolab
