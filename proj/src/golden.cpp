#include "isolab/golden.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "isolab/errors.hpp"
#include "isolab/garnier.hpp"
#include "isolab/painleve.hpp"
#include "isolab/text.hpp"

namespace isolab {

namespace {

RatFunc R(const std::string& s) { return parse_ratfunc(s); }

void exact(GoldenReport& r, const std::string& name, const RatFunc& got, const RatFunc& want) {
  bool ok = got == want;
  r.checks.push_back({name, ok, ok ? to_string(got) : "expected " + to_string(want) + ", got " + to_string(got)});
}

void flag(GoldenReport& r, const std::string& name, bool ok, const std::string& detail) { r.checks.push_back({name, ok, detail}); }

std::string num(long double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << static_cast<double>(v);
  return os.str();
}

void below(GoldenReport& r, const std::string& name, long double value, long double bound) {
  flag(r, name, value < bound, num(value) + " < " + num(bound));
}

std::string params_text(const PVIParams& p) {
  return "(" + p.alpha.str() + ", " + p.beta.str() + ", " + p.gamma.str() + ", " + p.delta.str() + ")";
}

void params(GoldenReport& r, const std::string& name, const PVIParams& got, const PVIParams& want) {
  bool ok = got == want;
  flag(r, name, ok, ok ? params_text(got) : "expected " + params_text(want) + ", got " + params_text(got));
}

GoldenReport example_1() {
  GoldenReport r{"example-1", "polynomial PVI solutions for n = 1, 2, 4", {}};
  struct Case {
    int n;
    const char *b1, *b2, *b3, *y;
  };
  const Case cases[] = {
      {1, "(x+1)/3", "(x-2)/3", "(-2*x+1)/3", "x*(x+1)/(2*(x^2-x+1))"},
      {2, "(x^2-4*x+1)/9", "(x^2+2*x-2)/9", "(-2*x^2+2*x+1)/9", "x*(x^2-4*x+1)/(2*x^3-3*x^2-3*x+2)"},
      {4, "-(5*x^4-16*x^3+12*x^2-16*x+5)/3^5", "-(5*x^4-4*x^3-6*x^2+20*x-10)/3^5", "-(-10*x^4+20*x^3-6*x^2-4*x+5)/3^5",
       "x*(5*x^4-16*x^3+12*x^2-16*x+5)/(10*x^5-25*x^4+10*x^3+10*x^2-25*x+10)"},
  };
  for (const auto& c : cases) {
    auto f = thm5_solution(c.n);
    std::string tag = "n=" + std::to_string(c.n) + " ";
    exact(r, tag + "b1", f.basis[0].b1, R(c.b1));
    exact(r, tag + "b2", f.basis[0].b2, R(c.b2));
    exact(r, tag + "b3", f.basis[0].b3, R(c.b3));
    exact(r, tag + "y", f.y, R(c.y));
    int n = c.n;
    params(r, tag + "params", f.params, {Rational((n + 1) * (n + 1), 2), Rational(-n * n, 18), Rational(n * n, 18), Rational(9 - n * n, 18)});
  }
  return r;
}

GoldenReport example_2() {
  GoldenReport r{"example-2", "one-parameter rational PVI families for n = -1, -2, -3", {}};
  struct Case {
    int n;
    const char* b[3];
    const char* bt[3];
    const char* y;
  };
  const Case cases[] = {
      {-1, {"(1+x)/x^2", "-1/x", "-1/x^2"}, {"1/(1-x)", "(x-2)/(1-x)^2", "1/(1-x)^2"}, "(1/2)*((1-c)*x^2+c)/((1-c)*x+c)"},
      {-2,
       {"(3+4*x+3*x^2)/x^4", "-(2+3*x)/x^3", "-(3+2*x)/x^4"},
       {"(-5+3*x)/(1-x)^3", "(10-10*x+3*x^2)/(1-x)^4", "(-5+2*x)/(1-x)^4"},
       "(1/5)*((1-c)*x^4*(3*x-5)+c*(3-5*x))/((1-c)*x^3*(x-2)+c*(1-2*x))"},
      {-3,
       {"(10+18*x+18*x^2+10*x^3)/x^6", "-(6+12*x+10*x^2)/x^5", "-(10+12*x+6*x^2)/x^6"},
       {"(28-32*x+10*x^2)/(1-x)^5", "-(-56+84*x-48*x^2+10*x^3)/(1-x)^6", "(28-24*x+6*x^2)/(1-x)^6"},
       "(1/4)*((1-c)*x^6*(14-16*x+5*x^2)+c*(5-16*x+14*x^2))/((1-c)*x^5*(7-7*x+2*x^2)+c*(2-7*x+7*x^2))"},
  };
  for (const auto& c : cases) {
    auto f = thm6_family(c.n);
    std::string tag = "n=" + std::to_string(c.n) + " ";
    exact(r, tag + "b1", f.basis[0].b1, R(c.b[0]));
    exact(r, tag + "b2", f.basis[0].b2, R(c.b[1]));
    exact(r, tag + "b3", f.basis[0].b3, R(c.b[2]));
    exact(r, tag + "b~1", f.basis[1].b1, R(c.bt[0]));
    if (c.n == -3) {
      // The printed b~2 has the wrong sign: with the printed b~1 and b~3 it breaks b1 + b2 + b3 = 0.
      exact(r, tag + "b~2 (printed sign reversed, fixed by b~1 + b~2 + b~3 = 0)", f.basis[1].b2, -R(c.bt[1]));
      exact(r, tag + "sum relation pins the sign of b~2", -R(c.bt[0]) - R(c.bt[2]), -R(c.bt[1]));
    } else {
      exact(r, tag + "b~2", f.basis[1].b2, R(c.bt[1]));
    }
    exact(r, tag + "b~3", f.basis[1].b3, R(c.bt[2]));
    exact(r, tag + "y(x, c)", f.y, R(c.y));
    int n = c.n;
    params(r, tag + "params", f.params, {Rational((3 * n + 1) * (3 * n + 1), 2), Rational(-n * n, 2), Rational(n * n, 2), Rational(1 - n * n, 2)});
  }
  return r;
}

GoldenReport example_3() {
  GoldenReport r{"example-3", "rational family from the degenerate solution y = 0", {}};
  OkamotoCoords b{-1, 1, 0, 1};
  params(r, "source equation", pvi_params(b.theta()), {Rational(1, 2), 0, 2, Rational(-3, 2)});
  flag(r, "y = 0 solves the source equation", degenerate_holds(Degenerate::zero, pvi_params(b.theta())), "beta = 0");
  RatFunc p = R("2*x*(x-1)/(x^2+c)");
  exact(r, "Riccati residual of p", riccati_residual(p, b), 0);
  OkamotoCoords wb = okamoto_action(1, okamoto_action(2, okamoto_action(1, b)));
  bool coords = wb == OkamotoCoords{0, 1, -1, 1};
  flag(r, "w1 w2 w1 (b) = (0, 1, -1, 1)", coords,
       "(" + wb.b1.str() + ", " + wb.b2.str() + ", " + wb.b3.str() + ", " + wb.b4.str() + ")");
  auto img = degenerate_prolongation(p, b.b1, b.b3);
  exact(r, "y_w", img.first, R("(1/2)*(x^2+c)/(x+c)"));
  exact(r, "p_w", img.second, (p - 2) / (p - 1));
  params(r, "image equation", pvi_params(wb.theta()), {2, Rational(-1, 2), Rational(1, 2), 0});
  exact(r, "PVI residual of y_w", pvi_residual(img.first, pvi_params(wb.theta())), 0);
  auto hr = hamiltonian_residual(img.first, img.second, wb.theta());
  exact(r, "Hamiltonian residual (y equation)", hr.first, 0);
  exact(r, "Hamiltonian residual (p equation)", hr.second, 0);
  return r;
}

// Printed second solutions: b1L = f1 I, b3L = f3 I + g with I the integral of h from 2 to x.
struct PrintedLiouvillian {
  int n;
  Rational b, c;
  std::function<long double(long double)> f1, f3, g, h;
};

GoldenReport example_4() {
  GoldenReport r{"example-4", "Liouvillian PVI families for (n, b, c) = (1, -1/3, 1/3), (2, -2/3, -1/3)", {}};
  params(r, "n=1 params", thm7_solution(1, Rational(-1, 3), Rational(1, 3)).params,
         {2, Rational(-1, 18), Rational(1, 18), Rational(4, 9)});
  params(r, "n=2 params", thm7_solution(2, Rational(-2, 3), Rational(-1, 3)).params,
         {Rational(9, 2), Rational(-2, 9), Rational(2, 9), Rational(5, 18)});
  using std::cbrt;
  using std::pow;
  const std::vector<PrintedLiouvillian> cases{
      {1, Rational(-1, 3), Rational(1, 3), [](long double x) { return x + 1; }, [](long double x) { return 1 - 2 * x; },
       [](long double x) { return -3 * pow(x, 2.0L / 3) * pow(x - 1, 2.0L / 3) / (x + 1); },
       [](long double x) { return pow(x - 1, 2.0L / 3) / (cbrt(x) * (x + 1) * (x + 1)); }},
      {2, Rational(-2, 3), Rational(-1, 3), [](long double x) { return x * x - 4 * x + 1; },
       [](long double x) { return -2 * x * x + 2 * x + 1; },
       [](long double x) { return -3 * pow(x, 4.0L / 3) * pow(x - 1, 4.0L / 3) / (2 * (x * x - 4 * x + 1)); },
       [](long double x) {
         long double q = x * x - 4 * x + 1;
         return cbrt(x) * pow(x - 1, 4.0L / 3) / (q * q);
       }},
  };
  for (const auto& c : cases) {
    std::string tag = "n=" + std::to_string(c.n) + " ";
    // Sample points stay below the zero 2 + sqrt(3) of x^2 - 4x + 1 so the printed integral is real.
    std::vector<long double> xs = c.n == 1 ? std::vector<long double>{3, 5, 7} : std::vector<long double>{2.5L, 3, 3.5L};
    auto lib = liouvillian_eval(c.n, c.b, c.c, xs);
    long double k = 0, worst = 0;
    for (std::size_t s = 0; s < xs.size(); ++s) {
      long double x = xs[s], err = 0;
      long double I = boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(c.h, 2.0L, x, 20, 1e-14L, &err);
      long double p1 = c.f1(x) * I, p3 = c.f3(x) * I + c.g(x);
      if (s == 0) k = lib[0].b1L / p1;
      worst = std::max({worst, std::abs(lib[s].b1L - k * p1) / std::abs(k * p1), std::abs(lib[s].b3L - k * p3) / std::abs(k * p3)});
    }
    below(r, tag + "b1L, b3L proportional to the printed integrals (one constant)", worst, 1e-8L);
    auto s = liouvillian_eval(c.n, c.b, c.c, {2, 3, 5});
    long double w = 0, ode = 0;
    for (const auto& v : s) {
      w = std::max(w, std::abs(v.wronskian / v.wronskian_expected - 1));
      ode = std::max(ode, std::abs(v.ode_residual));
    }
    below(r, tag + "Wronskian identity at x = 2, 3, 5 (relative)", w, 1e-8L);
    below(r, tag + "hypergeometric ODE residual of b1L at x = 2, 3, 5", ode, 1e-6L);
  }
  return r;
}

const std::vector<std::vector<cld>>& garnier_points() {
  static const std::vector<std::vector<cld>> pts{{2.0L, 3.5L}, {-0.7L, 2.3L}, {1.7L, 6.1L}};
  return pts;
}

void garnier_sweep_check(GoldenReport& r, const std::string& name, const GarnierAlgebraicSolution& sol) {
  auto rs = garnier_sweep(sol, garnier_points(), all_sign_vectors(2));
  long double w = 0;
  for (const auto& x : rs) w = std::max(w, x.max_abs);
  below(r, name + ": Hamiltonian residual, 3 points x 16 sign vectors", w, 1e-6L);
}

void theta_check(GoldenReport& r, const std::string& name, const GarnierAlgebraicSolution& sol, const Rational& theta_abs,
                 const Rational& theta_inf) {
  bool ok = true;
  for (const auto& eps : all_sign_vectors(2)) {
    auto spec = theta_from_eps(sol.betas, eps, sol.beta_inf);
    for (std::size_t i = 0; i < 4; ++i) ok = ok && spec.theta[i] == Rational(eps[i]) * theta_abs;
    ok = ok && spec.theta_inf == theta_inf;
  }
  flag(r, name + ": parameters (" + theta_abs.str() + " eps_i, " + theta_inf.str() + ")", ok, ok ? "all 16 sign vectors" : "mismatch");
}

GoldenReport example_8() {
  GoldenReport r{"example-8", "algebraic Garnier solutions for M = 2, m = 2 and m = 4", {}};
  auto s1 = thm10_solution(2, 2, 1);
  const char* case1[] = {"3*a1^2-2*a1*a2-a2^2-2*a1+2*a2-1", "3*a2^2-2*a1*a2-a1^2+2*a1-2*a2-1",
                         "-a1^2+2*a1*a2-a2^2+2*a1+2*a2-1", "-a1^2+2*a1*a2-a2^2-2*a1-2*a2+3"};
  for (int i = 0; i < 4; ++i)
    exact(r, "m=2 b" + std::to_string(i + 1) + " (factor 1/8)", s1.b[static_cast<std::size_t>(i)], RatFunc(Rational(1, 8)) * R(case1[i]));
  auto s2 = thm10_solution(2, 4, 1);
  const char* case2[] = {"-3*a1+a2+1", "a1-3*a2+1", "a1+a2+1", "a1+a2-3"};
  // The printed prefactor is -1/4; the binomial sums give +1/4.
  for (int i = 0; i < 4; ++i)
    exact(r, "m=4 b" + std::to_string(i + 1) + " (factor 1/4, printed -1/4)", s2.b[static_cast<std::size_t>(i)],
          RatFunc(Rational(1, 4)) * R(case2[i]));
  auto pm = pm_polynomial({R("b1"), R("b2"), R("b3"), R("-b1-b2-b3")});
  exact(r, "P_2 z^2 coefficient", pm[2], R("(-b1-b2-b3) + a1*b1 + a2*b2"));
  exact(r, "P_2 z coefficient", pm[1], R("a1*a2*(b3 + (-b1-b2-b3)) + a1*(b2+b3) + a2*(b1+b3)"));
  exact(r, "P_2 constant term", pm[0], R("-a1*a2*b3"));
  theta_check(r, "m=2", s1, Rational(1, 2), -3);
  theta_check(r, "m=4", s2, Rational(1, 4), -2);
  garnier_sweep_check(r, "m=2", s1);
  garnier_sweep_check(r, "m=4", s2);
  return r;
}

GoldenReport example_9() {
  GoldenReport r{"example-9", "two-parameter algebraic Garnier family for M = 2, n = -1", {}};
  auto v1 = thm11_basis_vector(2, -1, 1);
  exact(r, "b2^(1)", v1[1], R("1/((a1-a2)^2*a1*(a1-1))"));
  exact(r, "b3^(1)", v1[2], R("1/((a1-a2)*a1^2*(a1-1))"));
  exact(r, "b4^(1)", v1[3], R("1/((a1-a2)*a1*(a1-1)^2)"));
  exact(r, "b1^(1)", v1[0], -v1[1] - v1[2] - v1[3]);
  auto v2 = thm11_basis_vector(2, -1, 2);
  exact(r, "b1^(2)", v2[0], R("1/((a2-a1)^2*a2*(a2-1))"));
  exact(r, "b3^(2)", v2[2], R("1/((a2-a1)*a2^2*(a2-1))"));
  exact(r, "b4^(2)", v2[3], R("1/((a2-a1)*a2*(a2-1)^2)"));
  exact(r, "b2^(2)", v2[1], -v2[0] - v2[2] - v2[3]);
  auto v3 = thm11_basis_vector(2, -1, 3);
  exact(r, "b1^(3)", v3[0], R("1/(a1^2*a2)"));
  exact(r, "b2^(3)", v3[1], R("1/(a2^2*a1)"));
  exact(r, "b3^(3)", v3[2], R("-(a1*a2+a1+a2)/(a1^2*a2^2)"));
  exact(r, "b4^(3)", v3[3], R("1/(a1*a2)"));
  for (auto [c1, c2] : {std::pair{1, 1}, std::pair{2, -1}}) {
    auto fam = thm11_family(2, -1, {c1, c2});
    std::string tag = "c=(" + std::to_string(c1) + "," + std::to_string(c2) + ")";
    // theta_i = 2 eps_i beta_i = -eps_i: the printed (eps_1, .., eps_4, 3) after eps -> -eps.
    theta_check(r, tag, fam, -1, 3);
    garnier_sweep_check(r, tag, fam);
  }
  return r;
}

}  // namespace

bool GoldenReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::vector<std::string> golden_ids() { return {"example-1", "example-2", "example-3", "example-4", "example-8", "example-9"}; }

GoldenReport reproduce_example(const std::string& id) {
  static const std::map<std::string, GoldenReport (*)()> table{{"example-1", example_1}, {"example-2", example_2},
                                                               {"example-3", example_3}, {"example-4", example_4},
                                                               {"example-8", example_8}, {"example-9", example_9}};
  auto it = table.find(id);
  if (it == table.end()) throw PreconditionError("unknown example id '" + id + "'");
  return it->second();
}

nlohmann::json to_json(const GoldenReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"checks", checks}};
}

}  // namespace isolab
