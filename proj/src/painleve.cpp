#include "isolab/painleve.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "isolab/errors.hpp"
#include "isolab/special.hpp"
#include "isolab/text.hpp"

namespace isolab {

namespace {

const RatFunc& X() {
  static const RatFunc x = RatFunc::variable(kPviVar);
  return x;
}

RatFunc dx(const RatFunc& f) { return f.partial(kPviVar); }

// sum_j coef(j) * base^j for j = 0..top.
template <class F>
RatFunc power_sum(int top, const RatFunc& base, F coef) {
  RatFunc acc;
  RatFunc pw(1);
  for (int j = 0; j <= top; ++j) {
    acc += RatFunc(coef(j)) * pw;
    pw *= base;
  }
  return acc;
}

Rational bn(const Rational& top, int j) { return binom(top, static_cast<unsigned>(j)); }

RatFunc combine(const RatFunc& b, const RatFunc& bt) { return RatFunc::variable(kFamilyVar) * b + bt; }

RatFunc family_y(const std::vector<BTriple>& basis) {
  if (basis.size() == 1) return y_from_b(basis[0].b1, basis[0].b3);
  return y_from_b(combine(basis[0].b1, basis[1].b1), combine(basis[0].b3, basis[1].b3));
}

ThetaTuple hypergeometric_theta(const Rational& a, const Rational& b, const Rational& c) {
  // a = -2(beta1 + beta2 + beta3), b = -2 beta3, c = 1 - 2(beta1 + beta3).
  ThetaTuple t;
  t.beta3 = -b / 2;
  t.beta1 = (1 + b - c) / 2;
  t.beta2 = -a / 2 - t.beta1 - t.beta3;
  t.beta_inf = a / 2;
  return t;
}

std::vector<Rational> dense_coefficients(const MultiPoly& p, const std::string& var) {
  for (const auto& v : p.used_vars())
    if (v != var) throw DomainError("expected a polynomial in " + var + " only");
  int idx = p.var_index(var);
  int deg = p.is_zero() ? -1 : (idx < 0 ? 0 : p.degree(idx));
  std::vector<Rational> out(static_cast<std::size_t>(deg + 1));
  for (const auto& t : p.terms()) out[static_cast<std::size_t>(idx < 0 ? 0 : t.exp[static_cast<std::size_t>(idx)])] = t.coef;
  return out;
}

long double eval_ld(const std::vector<Rational>& c, long double x) {
  long double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->to_long_double();
  return acc;
}

}  // namespace

OkamotoCoords OkamotoCoords::from_theta(const ThetaTuple& t) {
  return {t.beta1 + t.beta2, t.beta1 - t.beta2, t.beta3 + t.beta_inf - 1, t.beta3 - t.beta_inf};
}

ThetaTuple OkamotoCoords::theta() const {
  return {(b1 + b2) / 2, (b1 - b2) / 2, (b3 + b4 + 1) / 2, (b3 - b4 + 1) / 2};
}

RatFunc PVISolutionFamily::at(const Rational& c) const {
  return has_family_parameter() ? y.substitute(kFamilyVar, RatFunc(c)) : y;
}

PVIParams pvi_params(const ThetaTuple& t) {
  Rational two_inf = 2 * t.beta_inf - 1;
  return {two_inf * two_inf / 2, -2 * t.beta1 * t.beta1, 2 * t.beta2 * t.beta2, Rational(1, 2) - 2 * t.beta3 * t.beta3};
}

RatFunc y_from_b(const RatFunc& b1, const RatFunc& b3) {
  RatFunc den = b1 + (RatFunc(1) - X()) * b3;
  if (den.is_zero()) throw DomainError("b1 + (1 - x) b3 vanishes identically");
  return X() * b1 / den;
}

std::pair<RatFunc, RatFunc> linear_system_residual(const RatFunc& b1, const RatFunc& b2, const ThetaTuple& t) {
  RatFunc r1 = dx(b1) - RatFunc(2) / X() * (RatFunc(t.beta1 + t.beta3) * b1 + RatFunc(t.beta1) * b2);
  RatFunc r2 = dx(b2) - RatFunc(2) / (X() - 1) * (RatFunc(t.beta2) * b1 + RatFunc(t.beta2 + t.beta3) * b2);
  return {r1, r2};
}

RatFunc hypergeom_residual(const RatFunc& b, int which, const ThetaTuple& t) {
  if (which != 1 && which != 2) throw PreconditionError("which must be 1 or 2");
  Rational c0 = 2 * t.beta1 + 2 * t.beta3 - (which == 1 ? 1 : 0);
  Rational c1 = 1 - 2 * t.beta1 - 2 * t.beta2 - 4 * t.beta3;
  Rational k = 4 * t.beta3 * (t.beta1 + t.beta2 + t.beta3);
  RatFunc db = dx(b);
  RatFunc xx = X() * (X() - 1);
  return dx(db) + ((RatFunc(c0) + RatFunc(c1) * X()) * db + RatFunc(k) * b) / xx;
}

PVISolutionFamily thm5_solution(int n) {
  if (n < 1) throw PreconditionError("n must be a positive integer");
  if (n % 3 == 0) throw PreconditionError("3 divides n");
  Rational q(n, 3);
  Rational sgn = (n + 1) % 2 ? Rational(-1) : Rational(1);
  PVISolutionFamily f;
  f.theorem = "5";
  f.inputs["n"] = n;
  f.theta = {Rational(n, 6), Rational(n, 6), Rational(n, 6), Rational(-n, 2)};
  f.params = pvi_params(f.theta);
  BTriple t;
  t.b1 = power_sum(n, X(), [&](int j) { return sgn * bn(q, j) * bn(q, n - j); });
  t.b2 = power_sum(n, X(), [&](int j) { return sgn * bn(q, j) * bn(q - 1, n - j); });
  t.b3 = power_sum(n, X(), [&](int j) { return sgn * bn(q - 1, j) * bn(q, n - j); });
  f.basis = {t};
  std::vector<Rational> pc(static_cast<std::size_t>(n + 2)), qc(static_cast<std::size_t>(n + 2));
  Rational qk = Rational(-3 * (n + 1)) / n;
  for (int j = 0; j <= n + 1; ++j) {
    if (j >= 1) pc[static_cast<std::size_t>(j)] = bn(q, j - 1) * bn(q, n - j + 1);
    qc[static_cast<std::size_t>(j)] = qk * bn(q, j) * bn(q, n - j + 1);
  }
  MultiPoly P = MultiPoly::univariate(kPviVar, pc), Q = MultiPoly::univariate(kPviVar, qc);
  f.pq = std::make_pair(P, Q);
  f.y = RatFunc(P) / RatFunc(Q);
  return f;
}

PVISolutionFamily thm6_family(int n) {
  if (n > -1) throw PreconditionError("n must be a negative integer");
  const int d = -n;
  Rational s = d % 2 ? Rational(-1) : Rational(1);
  Rational md(-d), md1(-d - 1);
  PVISolutionFamily f;
  f.theorem = "6";
  f.inputs["n"] = n;
  f.theta = {Rational(n, 2), Rational(n, 2), Rational(n, 2), Rational(-3 * n, 2)};
  f.params = pvi_params(f.theta);
  RatFunc omx = RatFunc(1) - X();
  BTriple r, rt;
  r.b1 = RatFunc(s) * X().pow(-2 * d) * power_sum(d, X(), [&](int j) { return bn(md, j) * bn(md, d - j); });
  r.b2 = RatFunc(s) * X().pow(1 - 2 * d) * power_sum(d - 1, X(), [&](int j) { return bn(md1, j) * bn(md, d - 1 - j); });
  r.b3 = RatFunc(s) * X().pow(-2 * d) * power_sum(d - 1, X(), [&](int j) { return bn(md, j) * bn(md1, d - 1 - j); });
  rt.b1 = omx.pow(1 - 2 * d) * power_sum(d - 1, omx, [&](int j) { return bn(md1, j) * bn(md, d - 1 - j); });
  rt.b2 = omx.pow(-2 * d) * power_sum(d, omx, [&](int j) { return bn(md, j) * bn(md, d - j); });
  rt.b3 = omx.pow(-2 * d) * power_sum(d - 1, omx, [&](int j) { return bn(md, j) * bn(md1, d - 1 - j); });
  f.basis = {r, rt};
  f.y = family_y(f.basis);
  return f;
}

MultiPoly hypergeometric_polynomial(int n, const Rational& b, const Rational& c) {
  std::vector<Rational> co(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) co[static_cast<std::size_t>(j)] = bn(-b, j) * bn(c + n - 1, n - j);
  return MultiPoly::univariate(kPviVar, co);
}

RatFunc b3_from_b1(const RatFunc& b1, const Rational& b, const Rational& c) {
  Rational k = 1 + b - c;
  if (k.is_zero()) throw PreconditionError("c = b + 1");
  return -(X() * dx(b1) + RatFunc(b) * b1) / RatFunc(k);
}

PVISolutionFamily thm7_solution(int n, const Rational& b, const Rational& c) {
  if (n < 1) throw PreconditionError("n must be a positive integer");
  for (int k = 1; k <= n - 1; ++k)
    if (c == Rational(-k)) throw PreconditionError("c lies in {-1, ..., -n+1}");
  if (c == b + 1) throw PreconditionError("c = b + 1");
  PVISolutionFamily f;
  f.theorem = "7";
  f.inputs = {{"n", n}, {"b", b}, {"c", c}};
  f.theta = hypergeometric_theta(Rational(-n), b, c);
  f.params = pvi_params(f.theta);
  BTriple t;
  t.b1 = RatFunc(hypergeometric_polynomial(n, b, c));
  t.b3 = b3_from_b1(t.b1, b, c);
  t.b2 = -t.b1 - t.b3;
  f.basis = {t};
  std::vector<Rational> pc(static_cast<std::size_t>(n + 2)), qc(static_cast<std::size_t>(n + 2));
  Rational qk = Rational(-(n + 1)) / (1 + b - c);
  for (int j = 0; j <= n + 1; ++j) {
    if (j >= 1) pc[static_cast<std::size_t>(j)] = bn(-b, j - 1) * bn(c + n - 1, n - j + 1);
    qc[static_cast<std::size_t>(j)] = qk * bn(-b, j) * bn(c + n - 1, n - j + 1);
  }
  MultiPoly P = MultiPoly::univariate(kPviVar, pc), Q = MultiPoly::univariate(kPviVar, qc);
  if (Q.is_zero()) throw DomainError("Q vanishes identically");
  f.pq = std::make_pair(P, Q);
  f.y = RatFunc(P) / RatFunc(Q);
  return f;
}

PVISolutionFamily hypergeometric_rational_family(int a, int b, int c) {
  if (c - b - 1 < 0 || a - c < 0) throw PreconditionError("need c - b - 1 >= 0 and a - c >= 0");
  if (b + 1 == c) throw PreconditionError("c = b + 1");
  PVISolutionFamily f;
  f.theorem = "8";
  f.inputs = {{"a", a}, {"b", b}, {"c", c}};
  f.theta = hypergeometric_theta(Rational(a), Rational(b), Rational(c));
  f.params = pvi_params(f.theta);
  Rational rb(b), rc(c);
  RatFunc omx = RatFunc(1) - X();
  BTriple r, rt;
  // x^(1-c) F(b-c+1, a-c+1; 2-c; x) and (1-x)^(c-a-b) F(c-a, c-b; c-a-b+1; 1-x), up to constants.
  r.b1 = X().pow(1 - c) * power_sum(c - b - 1, X(), [&](int j) { return bn(Rational(c - a - 1), j) * bn(Rational(-b), c - b - 1 - j); });
  rt.b1 = omx.pow(c - a - b) * power_sum(a - c, omx, [&](int j) { return bn(Rational(b - c), j) * bn(Rational(-b), a - c - j); });
  for (BTriple* t : {&r, &rt}) {
    t->b3 = b3_from_b1(t->b1, rb, rc);
    t->b2 = -t->b1 - t->b3;
  }
  f.basis = {r, rt};
  f.y = family_y(f.basis);
  return f;
}

PVISolutionFamily thm8_family(int a, int b, int c) {
  if (!(c > 1)) throw PreconditionError("c > 1 fails");
  if (!(b >= 1)) throw PreconditionError("b >= 1 fails");
  if (!(a > c)) throw PreconditionError("a > c fails");
  if (!(c - a < b && b < c - 1)) throw PreconditionError("c - a < b < c - 1 fails");
  return hypergeometric_rational_family(a, b, c);
}

Degenerate degenerate_kind(const RatFunc& y) {
  if (y.is_zero()) return Degenerate::zero;
  if (y == RatFunc(1)) return Degenerate::one;
  if (y == X()) return Degenerate::x;
  return Degenerate::none;
}

bool degenerate_holds(Degenerate kind, const PVIParams& p) {
  switch (kind) {
    case Degenerate::infinity: return p.alpha.is_zero();
    case Degenerate::zero: return p.beta.is_zero();
    case Degenerate::one: return p.gamma.is_zero();
    case Degenerate::x: return p.delta == Rational(1, 2);
    case Degenerate::none: break;
  }
  return false;
}

MultiPoly pvi_residual_numerator(const RatFunc& y, const PVIParams& prm) {
  const MultiPoly& P = y.num();
  const MultiPoly& Q = y.den();
  MultiPoly x = MultiPoly::variable(kPviVar);
  MultiPoly xm1 = x - MultiPoly(1);
  MultiPoly A = P - Q, B = P - x * Q;
  MultiPoly W = P.partial(kPviVar) * Q - P * Q.partial(kPviVar);
  MultiPoly Wp = W.partial(kPviVar);
  MultiPoly xx2 = (x * xm1).pow(2);
  MultiPoly PAB = P * A * B;
  MultiPoly r = MultiPoly(2) * xx2 * PAB * (Wp * Q - MultiPoly(2) * W * Q.partial(kPviVar));
  r -= xx2 * W * W * (A * B + P * B + P * A);
  r += MultiPoly(2) * (MultiPoly(2) * x - MultiPoly(1)) * x * xm1 * W * Q * PAB;
  r += MultiPoly(2) * xx2 * W * Q * Q * P * A;
  MultiPoly Q2 = Q * Q, P2 = P * P, A2 = A * A, B2 = B * B;
  MultiPoly forcing = prm.alpha * (P2 * A2 * B2);
  forcing += prm.beta * (x * Q2 * A2 * B2);
  forcing += prm.gamma * (xm1 * Q2 * P2 * B2);
  forcing += prm.delta * (x * xm1 * Q2 * P2 * A2);
  r -= MultiPoly(2) * forcing;
  return r;
}

RatFunc pvi_residual(const RatFunc& y, const PVIParams& prm) {
  Degenerate k = degenerate_kind(y);
  if (k != Degenerate::none) {
    if (degenerate_holds(k, prm)) return RatFunc();
    switch (k) {
      case Degenerate::zero: return RatFunc(prm.beta);
      case Degenerate::one: return RatFunc(prm.gamma);
      default: return RatFunc(prm.delta - Rational(1, 2));
    }
  }
  MultiPoly num = pvi_residual_numerator(y, prm);
  if (num.is_zero()) return RatFunc();
  const MultiPoly& P = y.num();
  const MultiPoly& Q = y.den();
  MultiPoly x = MultiPoly::variable(kPviVar);
  MultiPoly den = MultiPoly(2) * Q.pow(3) * P * (P - Q) * (P - x * Q) * (x * (x - MultiPoly(1))).pow(2);
  return RatFunc::normalize(num, den);
}

std::pair<RatFunc, RatFunc> hamiltonian_residual(const RatFunc& y, const RatFunc& p, const ThetaTuple& t) {
  RatFunc x = X();
  RatFunc xx = x * (x - 1);
  RatFunc ye = y * (y - 1) * (y - x) / xx *
               (RatFunc(2) * p - RatFunc(2 * t.beta3 - 1) / (y - x) - RatFunc(2 * t.beta1) / y - RatFunc(2 * t.beta2) / (y - 1));
  Rational s = t.beta1 + t.beta2 + t.beta3;
  Rational kappa = (s - t.beta_inf) * (s + t.beta_inf - 1);
  RatFunc quad = RatFunc(3) * y * y - RatFunc(2) * (x + 1) * y + x;
  RatFunc lin = RatFunc(2 - 4 * s) * y + RatFunc(2 * t.beta1 + 2 * t.beta3 - 1) + RatFunc(2 * t.beta1 + 2 * t.beta2) * x;
  RatFunc pe = -(quad * p * p + lin * p + RatFunc(kappa)) / xx;
  return {dx(y) - ye, dx(p) - pe};
}

RatFunc conjugate_momentum(const RatFunc& y, const ThetaTuple& t) {
  if (degenerate_kind(y) != Degenerate::none) throw DomainError("conjugate momentum of a degenerate solution");
  RatFunc x = X();
  RatFunc core = dx(y) * x * (x - 1) / (y * (y - 1) * (y - x));
  return (core + RatFunc(2 * t.beta3 - 1) / (y - x) + RatFunc(2 * t.beta1) / y + RatFunc(2 * t.beta2) / (y - 1)) /
         RatFunc(2);
}

OkamotoCoords okamoto_action(int g, const OkamotoCoords& b) {
  switch (g) {
    case 0: return {b.b1, b.b2, -b.b4 - 1, -b.b3 - 1};
    case 1: return {b.b2, b.b1, b.b3, b.b4};
    case 2: return {b.b1, b.b3, b.b2, b.b4};
    case 3: return {b.b1, b.b2, b.b4, b.b3};
    case 4: return {-b.b2, -b.b1, b.b3, b.b4};
    default: throw PreconditionError("unknown Okamoto generator w" + std::to_string(g));
  }
}

std::vector<int> parse_okamoto_word(const std::string& word) {
  std::vector<int> out;
  for (std::size_t i = 0; i < word.size(); i += 2) {
    if (word[i] != 'w' || i + 1 >= word.size() || word[i + 1] < '0' || word[i + 1] > '4')
      throw ParseError("bad Okamoto word: " + word);
    out.push_back(word[i + 1] - '0');
  }
  return out;
}

namespace {

struct Sym {
  Rational s1, s2, s3;   // over b1..b4
  Rational t1, t2, t3;   // over b1, b3, b4
};

Sym symmetric(const OkamotoCoords& b) {
  Sym s;
  const Rational v[4] = {b.b1, b.b2, b.b3, b.b4};
  for (int i = 0; i < 4; ++i) {
    s.s1 += v[i];
    for (int j = i + 1; j < 4; ++j) {
      s.s2 += v[i] * v[j];
      for (int k = j + 1; k < 4; ++k) s.s3 += v[i] * v[j] * v[k];
    }
  }
  s.t1 = b.b1 + b.b3 + b.b4;
  s.t2 = b.b1 * b.b3 + b.b1 * b.b4 + b.b3 * b.b4;
  s.t3 = b.b1 * b.b3 * b.b4;
  return s;
}

struct Mat2 {
  RatFunc a, b, c, d;
};

Mat2 okamoto_F(const OkamotoCoords& b, const RatFunc& h) {
  Sym s = symmetric(b);
  return {-h + s.t2, RatFunc(-b.b3 - b.b4), RatFunc(s.t1) * h - s.t3, -h + b.b3 * b.b4};
}

std::pair<RatFunc, RatFunc> okamoto_g(const OkamotoCoords& b, const RatFunc& h) {
  Sym s = symmetric(b);
  return {RatFunc(-s.s2 / 2), RatFunc(-s.s1 / 2) * h + RatFunc(s.s3 / 2)};
}

}  // namespace

namespace {

RatFunc okamoto_h(const RatFunc& y, const RatFunc& p, const OkamotoCoords& b) {
  return -y * (y - 1) * p * p + (RatFunc(2 * b.b1) * y - RatFunc(b.b1 + b.b2)) * p - RatFunc(b.b1 * b.b1);
}

// F[b] (y, y (y - 1) p) + g[b] with a given h.
std::pair<RatFunc, RatFunc> okamoto_side(const OkamotoCoords& b, const RatFunc& h, const RatFunc& y, const RatFunc& p) {
  Mat2 F = okamoto_F(b, h);
  auto g = okamoto_g(b, h);
  RatFunc u = y * (y - 1) * p;
  return {F.a * y + F.b * u + g.first, F.c * y + F.d * u + g.second};
}

}  // namespace

std::pair<RatFunc, RatFunc> okamoto_relation_residual(const OkamotoCoords& b, const RatFunc& y, const RatFunc& p,
                                                      const OkamotoCoords& wb, const RatFunc& yw, const RatFunc& pw) {
  RatFunc h = okamoto_h(y, p, b);
  auto l = okamoto_side(b, h, y, p), r = okamoto_side(wb, h, yw, pw);
  return {l.first - r.first, l.second - r.second};
}

OkamotoImage okamoto_apply(const std::vector<int>& word, const RatFunc& y0, const RatFunc& p0, const OkamotoCoords& b0) {
  OkamotoImage cur{y0, p0, b0};
  for (int g : word) {
    OkamotoCoords wb = okamoto_action(g, cur.b);
    const RatFunc& y = cur.y;
    const RatFunc& p = cur.p;
    if (g == 0) {
      // beta3 -> -beta3 with y fixed; p follows from the first Hamiltonian equation.
      Rational beta3 = cur.b.theta().beta3;
      RatFunc d = y - X();
      if (d.is_zero()) throw DomainError("w0 on y = x");
      cur = {y, p - RatFunc(2 * beta3) / d, wb};
      continue;
    }
    RatFunc h = okamoto_h(y, p, cur.b);
    auto r = okamoto_side(cur.b, h, y, p);
    Mat2 Fw = okamoto_F(wb, h);
    auto gw = okamoto_g(wb, h);
    RatFunc r1 = r.first - gw.first, r2 = r.second - gw.second;
    RatFunc det = Fw.a * Fw.d - Fw.b * Fw.c;
    if (det.is_zero()) throw DomainError("F[w(b)] is singular on (y, p); use the degenerate prolongation");
    RatFunc yw = (r1 * Fw.d - Fw.b * r2) / det;
    RatFunc uw = (Fw.a * r2 - Fw.c * r1) / det;
    RatFunc yy = yw * (yw - 1);
    if (yy.is_zero()) throw DomainError("image y is 0 or 1; momentum undefined");
    cur = {yw, uw / yy, wb};
  }
  return cur;
}

std::pair<RatFunc, RatFunc> degenerate_prolongation(const RatFunc& p, const Rational& b1, const Rational& b3) {
  RatFunc s = p + RatFunc(2 * b1);
  if (s.is_zero()) throw DomainError("p + 2 b1 vanishes identically");
  RatFunc t = p + RatFunc(b1 + b3);
  if (t.is_zero()) throw DomainError("p + b1 + b3 vanishes identically");
  return {RatFunc(b1 - b3) / s, -RatFunc(b1 + b3) * s / t};
}

RatFunc riccati_residual(const RatFunc& p, const OkamotoCoords& b) {
  RatFunc x = X();
  return -x * (x - 1) * dx(p) -
         (x * p * p + (RatFunc(2 * b.b1) * x + RatFunc(b.b3 + b.b4)) * p + RatFunc((b.b1 + b.b3) * (b.b1 + b.b4)));
}

namespace {

// Integral of x^-c (x-1)^e / b1P(x)^2 between real points in (1, inf). Real zeros of b1P
// are passed on semicircles; the integrand has zero residue there because b1P solves a
// second-order equation that is regular at those points, so either side gives the same value.
class LiouvillianIntegral {
 public:
  LiouvillianIntegral(int n, const Rational& b, const Rational& c, long double tol)
      : co_(dense_coefficients(hypergeometric_polynomial(n, b, c), kPviVar)),
        c_(c.to_long_double()),
        e_((c - b + n - 1).to_long_double()),
        tol_(tol) {
    std::vector<cld> cc;
    for (const auto& r : co_) cc.push_back(cld(r.to_long_double()));
    for (const cld& z : polynomial_roots(cc))
      if (std::abs(z.imag()) < 1e-10L * (1 + std::abs(z)) && z.real() > 1) real_zeros_.push_back(z.real());
  }

  const std::vector<Rational>& coefficients() const { return co_; }
  const std::vector<long double>& real_zeros() const { return real_zeros_; }

  cld integrand(cld t) const {
    cld bp = 0;
    for (auto it = co_.rbegin(); it != co_.rend(); ++it) bp = bp * t + cld(it->to_long_double());
    return std::pow(t, cld(-c_)) * std::pow(t - 1.0L, cld(e_)) / (bp * bp);
  }

  // Signed integral from lo to hi; side = +1 passes zeros above the axis, -1 below.
  cld operator()(long double lo, long double hi, int side = 1) const {
    if (lo == hi) return 0;
    if (lo > hi) return -(*this)(hi, lo, side);
    cld acc = 0;
    long double at = lo;
    for (long double r : real_zeros_) {
      if (r <= lo || r >= hi) continue;
      long double rho = radius(r);
      if (r - rho < lo || r + rho > hi) throw PreconditionError("b1P vanishes too close to an endpoint");
      acc += segment(at, r - rho);
      acc += arc(r, rho, side);
      at = r + rho;
    }
    return acc + segment(at, hi);
  }

 private:
  long double radius(long double r) const {
    long double rho = std::min(0.25L, (r - 1) / 2);
    for (long double q : real_zeros_)
      if (q != r) rho = std::min(rho, std::abs(q - r) / 3);
    return rho;
  }

  template <class F>
  cld gk(F f, long double lo, long double hi) const {
    long double err = 0;
    cld v = boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(f, lo, hi, 20, tol_, &err);
    if (!std::isfinite(std::abs(v)) || err > 10 * tol_ * std::max(std::abs(v), 1e-30L))
      throw NumericError("quadrature did not reach the requested tolerance");
    return v;
  }

  cld segment(long double lo, long double hi) const {
    if (lo == hi) return 0;
    return gk([this](long double t) { return integrand(cld(t)); }, lo, hi);
  }

  // r + rho e^(i theta) from theta = pi to 0 (upper) or -pi to 0 (lower).
  cld arc(long double r, long double rho, int side) const {
    const long double pi = std::acos(-1.0L);
    auto f = [&](long double th) {
      cld e = std::polar(rho, th);
      return integrand(r + e) * cld(0, 1) * e;
    };
    return side > 0 ? -gk(f, 0, pi) : gk(f, -pi, 0);
  }

  std::vector<Rational> co_;
  long double c_, e_, tol_;
  std::vector<long double> real_zeros_;
};

}  // namespace

long double liouvillian_integrand(int n, const Rational& b, const Rational& c, long double x) {
  return LiouvillianIntegral(n, b, c, 1e-10L).integrand(cld(x)).real();
}

std::vector<LiouvillianSample> liouvillian_eval(int n, const Rational& b, const Rational& c,
                                                const std::vector<long double>& xs, long double quad_tol,
                                                long double h) {
  if (!(quad_tol > 0)) throw PreconditionError("quad_tol must be positive");
  const long double x0 = 2;
  LiouvillianIntegral integral(n, b, c, quad_tol);
  const auto& co = integral.coefficients();
  std::vector<Rational> dco;
  for (std::size_t k = 1; k < co.size(); ++k) dco.push_back(co[k] * Rational(static_cast<long>(k)));
  const long double cc = c.to_long_double(), bb = b.to_long_double();
  const long double e = (c - b + n - 1).to_long_double();
  auto real_part = [&](cld v, long double scale) {
    if (std::abs(v.imag()) > 1e-8L * std::max(scale, 1.0L)) throw NumericError("integral is not real; nonzero residue");
    return v.real();
  };
  std::vector<LiouvillianSample> out;
  for (long double x : xs) {
    if (!(x - 2 * h > 1)) throw PreconditionError("sample points must lie in (1, inf)");
    for (long double r : integral.real_zeros())
      if (std::abs(r - x) <= 4 * h) throw PreconditionError("sample point at a zero of b1P");
    cld up = integral(x0, x, 1), down = integral(x0, x, -1);
    if (std::abs(up - down) > 1e-8L * std::max(std::abs(up), 1.0L))
      throw NumericError("detours above and below a zero of b1P disagree");
    long double base = real_part(up, std::abs(up));
    auto inc = [&](long double lo, long double hi) { return real_part(integral(lo, hi), 1); };
    long double ip = base + inc(x, x + h), im = base - inc(x - h, x);
    long double ip2 = ip + inc(x + h, x + 2 * h), im2 = im - inc(x - 2 * h, x - h);
    auto L = [&](long double t, long double I) { return eval_ld(co, t) * I; };
    long double l0 = L(x, base), lp = L(x + h, ip), lm = L(x - h, im);
    long double lp2 = L(x + 2 * h, ip2), lm2 = L(x - 2 * h, im2);
    // Fourth-order central differences.
    long double d1 = (lm2 - 8 * lm + 8 * lp - lp2) / (12 * h);
    long double d2 = (-lm2 + 16 * lm - 30 * l0 + 16 * lp - lp2) / (12 * h * h);
    LiouvillianSample s;
    s.x = x;
    s.b1L = l0;
    s.b3L = -(x * d1 + bb * l0) / (1 + bb - cc);
    s.wronskian = eval_ld(co, x) * d1 - eval_ld(dco, x) * l0;
    s.wronskian_expected = std::pow(x, -cc) * std::pow(x - 1, e);
    long double xx = x * (x - 1);
    s.ode_residual = d2 + ((bb - n + 1) * x - cc) / xx * d1 - n * bb / xx * l0;
    out.push_back(s);
  }
  return out;
}

bool is_palindromic(const MultiPoly& p) {
  auto co = dense_coefficients(p, kPviVar);
  for (std::size_t i = 0; i < co.size(); ++i)
    if (!(co[i] == co[co.size() - 1 - i])) return false;
  return true;
}

ZeroReport polynomial_zeros(const MultiPoly& p, long double tol) {
  if (p.is_zero()) throw DomainError("zeros of the zero polynomial");
  std::string var = kPviVar;
  auto used = p.used_vars();
  if (used.size() == 1) var = used[0];
  auto co = dense_coefficients(p, var);
  if (co.size() < 2) throw PreconditionError("degree must be at least 1");
  std::vector<cld> cc;
  for (const auto& r : co) cc.push_back(cld(r.to_long_double()));
  ZeroReport rep;
  rep.roots = polynomial_roots(cc);
  auto nearest = [&](cld target) {
    long double best = std::numeric_limits<long double>::infinity();
    for (const cld& w : rep.roots) best = std::min(best, std::abs(w - target));
    return best / std::max(1.0L, std::abs(target));
  };
  for (const cld& z : rep.roots) {
    rep.max_conjugation_error = std::max(rep.max_conjugation_error, nearest(std::conj(z)));
    if (std::abs(z) > tol) rep.max_inversion_error = std::max(rep.max_inversion_error, nearest(1.0L / z));
  }
  rep.conjugation_symmetric = rep.max_conjugation_error <= tol;
  rep.inversion_paired = rep.max_inversion_error <= tol;
  return rep;
}

nlohmann::json to_json(const PVIParams& p) {
  return {{"alpha", p.alpha.str()}, {"beta", p.beta.str()}, {"gamma", p.gamma.str()}, {"delta", p.delta.str()}};
}

nlohmann::json to_json(const ThetaTuple& t) {
  return {{"beta1", t.beta1.str()}, {"beta2", t.beta2.str()}, {"beta3", t.beta3.str()}, {"beta_inf", t.beta_inf.str()}};
}

nlohmann::json to_json(const PVISolutionFamily& f) {
  nlohmann::json j;
  j["kind"] = "pvi_family";
  j["theorem"] = f.theorem;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : f.inputs) in[k] = v.str();
  j["inputs"] = in;
  j["theta"] = to_json(f.theta);
  j["params"] = to_json(f.params);
  j["family_parameter"] = f.has_family_parameter() ? nlohmann::json(kFamilyVar) : nlohmann::json(nullptr);
  j["y"] = to_string(f.y);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& t : f.basis) basis.push_back({{"b1", to_string(t.b1)}, {"b2", to_string(t.b2)}, {"b3", to_string(t.b3)}});
  j["basis"] = basis;
  if (f.pq) j["pq"] = {{"P", to_string(f.pq->first)}, {"Q", to_string(f.pq->second)}};
  return j;
}

PVISolutionFamily family_from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "pvi_family") throw ParseError("not a PVI family document");
    auto q = [](const nlohmann::json& v) { return Rational::parse(v.get<std::string>()); };
    PVISolutionFamily f;
    f.theorem = j.at("theorem").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items()) f.inputs[k] = q(v);
    const auto& t = j.at("theta");
    f.theta = {q(t.at("beta1")), q(t.at("beta2")), q(t.at("beta3")), q(t.at("beta_inf"))};
    const auto& p = j.at("params");
    f.params = {q(p.at("alpha")), q(p.at("beta")), q(p.at("gamma")), q(p.at("delta"))};
    f.y = parse_ratfunc(j.at("y").get<std::string>());
    for (const auto& b : j.at("basis"))
      f.basis.push_back({parse_ratfunc(b.at("b1").get<std::string>()), parse_ratfunc(b.at("b2").get<std::string>()),
                         parse_ratfunc(b.at("b3").get<std::string>())});
    if (j.contains("pq"))
      f.pq = std::make_pair(parse_poly(j.at("pq").at("P").get<std::string>()), parse_poly(j.at("pq").at("Q").get<std::string>()));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed PVI family JSON: ") + e.what());
  }
}

}  // namespace isolab
