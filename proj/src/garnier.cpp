#include "isolab/garnier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "isolab/errors.hpp"
#include "isolab/schlesinger.hpp"
#include "isolab/text.hpp"

namespace isolab {

namespace {

cld eval(const MultiPoly& p, const std::map<std::string, cld>& at) {
  std::vector<cld> vals;
  vals.reserve(p.vars().size());
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    auto it = at.find(p.vars()[i]);
    if (it != at.end()) {
      vals.push_back(it->second);
    } else if (p.degree(static_cast<int>(i)) == 0) {
      vals.push_back(0);  // placeholder names left behind by substitution
    } else {
      throw DomainError("no value for variable " + p.vars()[i]);
    }
  }
  return p.evaluate(vals);
}

cld eval(const RatFunc& f, const std::map<std::string, cld>& at) {
  cld d = eval(f.den(), at);
  if (d == cld(0)) throw DomainError("denominator vanishes at the evaluation point");
  return eval(f.num(), at) / d;
}

std::map<std::string, cld> point_map(const std::vector<cld>& a) {
  std::map<std::string, cld> m;
  for (std::size_t i = 0; i < a.size(); ++i) m[garnier_var(static_cast<int>(i + 1))] = a[i];
  return m;
}

// Poles a_1..a_M, 0, 1 at a numeric point.
std::vector<cld> poles(const std::vector<cld>& a) {
  std::vector<cld> p = a;
  p.push_back(0);
  p.push_back(1);
  return p;
}

std::map<std::string, RatFunc> tail_substitution(int M) {
  return {{garnier_var(M + 1), RatFunc(0)}, {garnier_var(M + 2), RatFunc(1)}};
}

// Forward-mode derivative in one direction.
struct Dual {
  cld v, d;
  Dual(cld value = 0, cld deriv = 0) : v(value), d(deriv) {}
  friend Dual operator+(Dual x, Dual y) { return {x.v + y.v, x.d + y.d}; }
  friend Dual operator-(Dual x, Dual y) { return {x.v - y.v, x.d - y.d}; }
  friend Dual operator*(Dual x, Dual y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
  friend Dual operator/(Dual x, Dual y) { return {x.v / y.v, (x.d * y.v - x.v * y.d) / (y.v * y.v)}; }
};

template <class T>
T hamiltonian(int k, const std::vector<cld>& a, const std::vector<T>& u, const std::vector<T>& v, const GarnierSpec& spec) {
  const std::vector<cld> pl = poles(a);
  std::vector<cld> th(4);
  for (int i = 0; i < 4; ++i) th[static_cast<std::size_t>(i)] = cld(spec.theta[static_cast<std::size_t>(i)].to_long_double());
  cld sum_theta = th[0] + th[1] + th[2] + th[3];
  cld tinf = spec.theta_inf.to_long_double();
  cld kappa = ((sum_theta - cld(1)) * (sum_theta - cld(1)) - tinf * tinf) / cld(4);

  const cld ak = a[static_cast<std::size_t>(k - 1)];
  cld tprime = 1;
  for (std::size_t h = 0; h < pl.size(); ++h)
    if (h != static_cast<std::size_t>(k - 1)) tprime *= ak - pl[h];
  T lambda_ak = T(1);
  for (const auto& uj : u) lambda_ak = lambda_ak * (T(ak) - uj);

  T acc = T(0);
  for (std::size_t j = 0; j < u.size(); ++j) {
    T tu = T(1);
    for (const auto& p : pl) tu = tu * (u[j] - T(p));
    T lprime = T(1);
    for (std::size_t l = 0; l < u.size(); ++l)
      if (l != j) lprime = lprime * (u[j] - u[l]);
    T s = T(0);
    for (std::size_t i = 0; i < pl.size(); ++i) {
      cld t = th[i] - (i == static_cast<std::size_t>(k - 1) ? cld(1) : cld(0));
      s = s + T(t) / (u[j] - T(pl[i]));
    }
    T bracket = v[j] * v[j] - s * v[j] + T(kappa) / (u[j] * (u[j] - T(1)));
    acc = acc + tu / ((u[j] - T(ak)) * lprime) * bracket;
  }
  return T(0) - lambda_ak / T(tprime) * acc;
}

long double min_separation(const std::vector<cld>& r) {
  long double best = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) best = std::min(best, std::abs(r[i] - r[j]));
  return best;
}

// Simple roots at a numeric point; NumericError on degree drop or repeated roots.
std::vector<cld> simple_roots(const GarnierAlgebraicSolution& sol, const std::vector<cld>& a) {
  URoots r = u_roots(sol.pm_coeffs, a);
  if (r.degree_drop) throw NumericError("P_M drops degree at this point");
  for (int mlt : r.multiplicity)
    if (mlt > 1) throw NumericError("P_M has a repeated root at this point");
  return r.roots;
}

}  // namespace

std::string garnier_var(int i) { return "a" + std::to_string(i); }

std::vector<RatFunc> pm_polynomial(const std::vector<RatFunc>& b, const std::vector<RatFunc>& tail) {
  if (b.size() < 3 || tail.size() != 2) throw PreconditionError("pm_polynomial needs M + 2 >= 3 entries and two fixed poles");
  const int M = static_cast<int>(b.size()) - 2;
  RatFunc total;
  for (const auto& bi : b) total += bi;
  if (!total.is_zero()) throw PreconditionError("sum of b_i is not identically zero");

  std::vector<RatFunc> pl;
  for (int i = 1; i <= M; ++i) pl.push_back(RatFunc::variable(garnier_var(i)));
  pl.push_back(tail[0]);
  pl.push_back(tail[1]);

  std::vector<RatFunc> out(static_cast<std::size_t>(M + 1));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].is_zero()) continue;
    // prod_(h != i) (z - a_h), lowest power first.
    std::vector<RatFunc> prod{RatFunc(1)};
    for (std::size_t h = 0; h < pl.size(); ++h) {
      if (h == i) continue;
      std::vector<RatFunc> next(prod.size() + 1);
      for (std::size_t k = 0; k < prod.size(); ++k) {
        next[k + 1] += prod[k];
        next[k] -= prod[k] * pl[h];
      }
      prod = std::move(next);
    }
    for (std::size_t k = 0; k <= static_cast<std::size_t>(M); ++k) out[k] += b[i] * prod[k];
  }
  return out;
}

GarnierAlgebraicSolution thm10_solution(int M, int m, int n) {
  if (M < 1) throw PreconditionError("M must be positive");
  if (n <= 0 || m <= 1) throw PreconditionError("need n > 0 and m > 1");
  if (std::gcd(n, m) != 1) throw PreconditionError("n and m must be coprime");
  if ((M + 2) % m != 0) throw PreconditionError("m must divide M + 2");
  GarnierAlgebraicSolution s;
  s.theorem = "10";
  s.M = M;
  s.m = m;
  s.n = n;
  const auto tail = tail_substitution(M);
  for (int i = 1; i <= M + 2; ++i) s.b.push_back(polynomial_residue_formula(M + 2, m, n, 1, i).substitute(tail));
  s.pm_coeffs = pm_polynomial(s.b);
  s.betas.assign(static_cast<std::size_t>(M + 2), Rational(n, 2L * m));
  s.beta_inf = -Rational((M + 2L) * n, 2L * m);
  return s;
}

std::vector<RatFunc> thm11_basis_vector(int M, int n, int nu) {
  if (n >= 0) throw PreconditionError("need n < 0");
  if (nu < 1 || nu > M + 1) throw PreconditionError("pole index out of range");
  const auto tail = tail_substitution(M);
  std::vector<RatFunc> b;
  for (int i = 1; i <= M + 2; ++i) b.push_back(rational_residue_formula(M + 2, 1, n, 1, i, nu, false).substitute(tail));
  return b;
}

GarnierAlgebraicSolution thm11_family(int M, int n, const std::vector<Rational>& c) {
  if (M < 1) throw PreconditionError("M must be positive");
  if (n >= 0) throw PreconditionError("need n < 0");
  if (c.size() != static_cast<std::size_t>(M)) throw PreconditionError("need M family constants");
  GarnierAlgebraicSolution s;
  s.theorem = "11";
  s.M = M;
  s.m = 1;
  s.n = n;
  s.constants = c;
  s.b = thm11_basis_vector(M, n, M + 1);
  for (int j = 1; j <= M; ++j) {
    if (c[static_cast<std::size_t>(j - 1)].is_zero()) continue;
    auto bj = thm11_basis_vector(M, n, j);
    for (std::size_t i = 0; i < s.b.size(); ++i) s.b[i] += RatFunc(c[static_cast<std::size_t>(j - 1)]) * bj[i];
  }
  s.pm_coeffs = pm_polynomial(s.b);
  s.betas.assign(static_cast<std::size_t>(M + 2), Rational(n, 2L));
  s.beta_inf = -Rational((M + 2L) * n, 2L);
  return s;
}

GarnierSpec theta_from_eps(const std::vector<Rational>& betas, const std::vector<int>& eps, const Rational& beta_inf) {
  if (betas.size() != eps.size()) throw PreconditionError("betas and eps differ in length");
  GarnierSpec s;
  s.M = static_cast<int>(betas.size()) - 2;
  s.eps = eps;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (eps[i] != 1 && eps[i] != -1) throw PreconditionError("eps entries must be +1 or -1");
    s.theta.push_back(Rational(2L * eps[i]) * betas[i]);
  }
  s.theta_inf = Rational(2) * beta_inf - Rational(1);
  return s;
}

URoots u_roots_numeric(const std::vector<cld>& coeffs, long double lead_tol) {
  long double scale = 0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0) throw DomainError("P_M vanishes identically at this point");
  URoots out;
  const int full = static_cast<int>(coeffs.size()) - 1;
  int deg = full;
  while (deg > 0 && std::abs(coeffs[static_cast<std::size_t>(deg)]) <= lead_tol * scale) --deg;
  out.degree = deg;
  out.degree_drop = deg < full;
  std::vector<cld> c(coeffs.begin(), coeffs.begin() + deg + 1);

  std::vector<cld> all;
  if (deg == 1) {
    all = {-c[0] / c[1]};
  } else if (deg == 2) {
    cld disc = c[1] * c[1] - cld(4) * c[2] * c[0];
    cld sq = std::sqrt(disc);
    if (disc == cld(0)) {
      all = {-c[1] / (cld(2) * c[2]), -c[1] / (cld(2) * c[2])};
    } else {
      // Avoid cancellation: q = -(c1 + sign * sqrt(disc)) / 2 with |q| maximal.
      cld q = std::real(std::conj(c[1]) * sq) >= 0 ? -(c[1] + sq) / cld(2) : -(c[1] - sq) / cld(2);
      all = {q / c[2], q == cld(0) ? cld(0) : c[0] / q};
    }
    sort_roots(all);
  } else if (deg > 2) {
    all = polynomial_roots(c);
  }

  // Group numerically coincident roots.
  for (const auto& r : all) {
    bool merged = false;
    for (std::size_t k = 0; k < out.roots.size(); ++k) {
      if (std::abs(out.roots[k] - r) <= 1e-9L * std::max(1.0L, std::abs(r))) {
        ++out.multiplicity[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.roots.push_back(r);
      out.multiplicity.push_back(1);
    }
  }
  return out;
}

URoots u_roots(const std::vector<RatFunc>& pm_coeffs, const std::vector<cld>& a, long double lead_tol) {
  const auto at = point_map(a);
  std::vector<cld> c;
  for (const auto& f : pm_coeffs) c.push_back(eval(f, at));
  return u_roots_numeric(c, lead_tol);
}

std::vector<cld> v_momenta(const std::vector<cld>& u, const std::vector<Rational>& betas, const std::vector<int>& eps,
                           const std::vector<cld>& a) {
  const auto pl = poles(a);
  if (betas.size() != pl.size() || eps.size() != pl.size()) throw PreconditionError("need M + 2 betas and signs");
  std::vector<cld> v;
  for (const auto& uj : u) {
    cld acc = 0;
    for (std::size_t i = 0; i < pl.size(); ++i) {
      if (uj == pl[i]) throw DomainError("u_j coincides with a pole");
      acc += cld(((1 + eps[i]) * betas[i]).to_long_double()) / (uj - pl[i]);
    }
    v.push_back(acc);
  }
  return v;
}

cld garnier_hamiltonian_m2(int k, const std::vector<cld>& a, const std::vector<cld>& u, const std::vector<cld>& v,
                           const GarnierSpec& spec) {
  if (a.size() != 2 || u.size() != 2 || v.size() != 2 || spec.theta.size() != 4)
    throw PreconditionError("the two-variable Hamiltonians need M = 2");
  if (k != 1 && k != 2) throw PreconditionError("k must be 1 or 2");
  return hamiltonian<cld>(k, a, u, v, spec);
}

std::vector<cld> match_roots(const std::vector<cld>& reference, std::vector<cld> candidate) {
  if (reference.size() != candidate.size()) throw NumericError("root count changed between points");
  const std::size_t n = reference.size();
  std::vector<std::size_t> perm(n), best;
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 7) {
    long double best_cost = std::numeric_limits<long double>::infinity();
    do {
      long double cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += std::abs(reference[i] - candidate[perm[i]]);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> used(n, false);
    best.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t pick = n;
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && (pick == n || std::abs(reference[i] - candidate[j]) < std::abs(reference[i] - candidate[pick])))
          pick = j;
      used[pick] = true;
      best[i] = pick;
    }
  }
  std::vector<cld> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = candidate[best[i]];
  return out;
}

GarnierResidual garnier_residual_m2(const GarnierAlgebraicSolution& sol, const std::vector<cld>& a,
                                    const std::vector<int>& eps, long double h) {
  if (sol.M != 2 || a.size() != 2) throw PreconditionError("garnier_residual_m2 needs M = 2");
  for (const auto& p : {a[0], a[1]})
    if (p == cld(0) || p == cld(1)) throw PreconditionError("a must avoid 0 and 1");
  if (a[0] == a[1]) throw PreconditionError("need a1 != a2");
  const GarnierSpec spec = theta_from_eps(sol.betas, eps, sol.beta_inf);

  GarnierResidual r;
  r.a = a;
  r.eps = eps;
  const auto u = simple_roots(sol, a);
  const auto v = v_momenta(u, sol.betas, eps, a);
  const long double sep = min_separation(u);

  for (int k = 1; k <= 2; ++k) {
    auto ap = a, am = a;
    ap[static_cast<std::size_t>(k - 1)] += h;
    am[static_cast<std::size_t>(k - 1)] -= h;
    auto up = match_roots(u, simple_roots(sol, ap));
    auto um = match_roots(u, simple_roots(sol, am));
    for (std::size_t j = 0; j < 2; ++j)
      if (std::abs(up[j] - u[j]) > sep / 4 || std::abs(um[j] - u[j]) > sep / 4)
        throw NumericError("roots collide within the finite-difference stencil");
    const auto vp = v_momenta(up, sol.betas, eps, ap);
    const auto vm = v_momenta(um, sol.betas, eps, am);

    for (std::size_t j = 0; j < 2; ++j) {
      cld du = (up[j] - um[j]) / cld(2 * h);
      cld dv = (vp[j] - vm[j]) / cld(2 * h);
      std::vector<Dual> U{Dual(u[0]), Dual(u[1])}, V{Dual(v[0]), Dual(v[1])};
      V[j].d = 1;
      cld dH_dv = hamiltonian<Dual>(k, a, U, V, spec).d;
      V[j].d = 0;
      U[j].d = 1;
      cld dH_du = hamiltonian<Dual>(k, a, U, V, spec).d;
      r.du[k - 1][j] = std::abs(du - dH_dv);
      r.dv[k - 1][j] = std::abs(dv + dH_du);
      r.max_abs = std::max({r.max_abs, r.du[k - 1][j], r.dv[k - 1][j]});
    }
  }
  return r;
}

std::vector<std::vector<int>> all_sign_vectors(int M) {
  const int len = M + 2;
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << len); ++mask) {
    std::vector<int> e(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) e[static_cast<std::size_t>(i)] = (mask >> (len - 1 - i)) & 1 ? -1 : 1;
    out.push_back(e);
  }
  return out;
}

std::vector<GarnierResidual> garnier_sweep_serial(const GarnierAlgebraicSolution& sol,
                                                  const std::vector<std::vector<cld>>& points,
                                                  const std::vector<std::vector<int>>& eps_list, long double h) {
  std::vector<GarnierResidual> out;
  for (const auto& p : points)
    for (const auto& e : eps_list) out.push_back(garnier_residual_m2(sol, p, e, h));
  return out;
}

std::vector<GarnierResidual> garnier_sweep(const GarnierAlgebraicSolution& sol, const std::vector<std::vector<cld>>& points,
                                           const std::vector<std::vector<int>>& eps_list, long double h) {
  const long total = static_cast<long>(points.size() * eps_list.size());
  std::vector<GarnierResidual> out(static_cast<std::size_t>(total));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < total; ++idx) {
    try {
      const auto& p = points[static_cast<std::size_t>(idx) / eps_list.size()];
      const auto& e = eps_list[static_cast<std::size_t>(idx) % eps_list.size()];
      out[static_cast<std::size_t>(idx)] = garnier_residual_m2(sol, p, e, h);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::vector<cld>> track_roots(const GarnierAlgebraicSolution& sol, const std::vector<cld>& a0,
                                          const std::vector<cld>& a1, int steps) {
  if (steps < 1 || a0.size() != a1.size()) throw PreconditionError("bad segment");
  std::vector<std::vector<cld>> out;
  for (int s = 0; s <= steps; ++s) {
    long double t = static_cast<long double>(s) / steps;
    std::vector<cld> a(a0.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a0[i] + (a1[i] - a0[i]) * t;
    auto r = simple_roots(sol, a);
    out.push_back(out.empty() ? r : match_roots(out.back(), r));
  }
  return out;
}

nlohmann::json to_json(const GarnierSpec& s) {
  nlohmann::json th = nlohmann::json::array();
  for (const auto& t : s.theta) th.push_back(t.str());
  return {{"M", s.M}, {"theta", th}, {"theta_inf", s.theta_inf.str()}, {"eps", s.eps}};
}

nlohmann::json to_json(const GarnierAlgebraicSolution& s) {
  nlohmann::json j;
  j["kind"] = "garnier_solution";
  j["theorem"] = s.theorem;
  j["M"] = s.M;
  j["m"] = s.m;
  j["n"] = s.n;
  nlohmann::json c = nlohmann::json::array(), b = nlohmann::json::array(), pm = nlohmann::json::array(),
                 be = nlohmann::json::array();
  for (const auto& x : s.constants) c.push_back(x.str());
  for (const auto& x : s.b) b.push_back(to_string(x));
  for (const auto& x : s.pm_coeffs) pm.push_back(to_string(x));
  for (const auto& x : s.betas) be.push_back(x.str());
  j["constants"] = c;
  j["b"] = b;
  j["pm_coeffs"] = pm;
  j["betas"] = be;
  j["beta_inf"] = s.beta_inf.str();
  return j;
}

nlohmann::json to_json(const GarnierResidual& r) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : r.a) a.push_back({static_cast<double>(x.real()), static_cast<double>(x.imag())});
  nlohmann::json eqs = nlohmann::json::array();
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      eqs.push_back({{"eq", "du" + std::to_string(j + 1) + "/da" + std::to_string(k + 1)},
                     {"residual", static_cast<double>(r.du[k][j])}});
      eqs.push_back({{"eq", "dv" + std::to_string(j + 1) + "/da" + std::to_string(k + 1)},
                     {"residual", static_cast<double>(r.dv[k][j])}});
    }
  return {{"a", a}, {"eps", r.eps}, {"equations", eqs}, {"max_abs", static_cast<double>(r.max_abs)}};
}

GarnierAlgebraicSolution garnier_from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "garnier_solution") throw ParseError("not a Garnier solution document");
    auto q = [](const nlohmann::json& v) { return Rational::parse(v.get<std::string>()); };
    GarnierAlgebraicSolution s;
    s.theorem = j.at("theorem").get<std::string>();
    s.M = j.at("M").get<int>();
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
    for (const auto& c : j.at("constants")) s.constants.push_back(q(c));
    for (const auto& b : j.at("b")) s.b.push_back(parse_ratfunc(b.get<std::string>()));
    for (const auto& b : j.at("betas")) s.betas.push_back(q(b));
    s.beta_inf = q(j.at("beta_inf"));
    if (static_cast<int>(s.b.size()) != s.M + 2 || static_cast<int>(s.betas.size()) != s.M + 2)
      throw ParseError("Garnier document needs M + 2 entries and exponents");
    // P_M is rebuilt from the entries so that an edited entry is not masked by stale coefficients.
    RatFunc total;
    for (const auto& b : s.b) total += b;
    if (total.is_zero()) s.pm_coeffs = pm_polynomial(s.b);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Garnier JSON: ") + e.what());
  }
}

}  // namespace isolab
