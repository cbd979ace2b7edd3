#include <algorithm>

#include "isolab/errors.hpp"
#include "isolab/multipoly.hpp"

namespace isolab {

namespace {

using UPoly = std::vector<MultiPoly>;  // coefficients in the main variable, lowest first

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int udeg(const UPoly& u) { return static_cast<int>(u.size()) - 1; }

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in polynomial gcd");
  return *q;
}

// lc(v)^(deg u - deg v + 1) * u mod v
UPoly prem(UPoly u, const UPoly& v) {
  int dv = udeg(v);
  int e = udeg(u) - dv + 1;
  const MultiPoly& lcv = v.back();
  while (!u.empty() && udeg(u) >= dv) {
    MultiPoly lr = u.back();
    int k = udeg(u) - dv;
    for (auto& c : u) c *= lcv;
    for (int i = 0; i <= dv; ++i) u[static_cast<std::size_t>(i + k)] -= lr * v[static_cast<std::size_t>(i)];
    trim(u);
    --e;
  }
  if (e > 0 && !u.empty()) {
    MultiPoly f = lcv.pow(static_cast<unsigned>(e));
    for (auto& c : u) c *= f;
  }
  return u;
}

MultiPoly content_of(const UPoly& u);
MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b);

MultiPoly primitive_part(const UPoly& u, int idx) {
  MultiPoly c = content_of(u);
  UPoly q;
  q.reserve(u.size());
  for (const auto& x : u) q.push_back(exact(x, c));
  return MultiPoly::from_coefficients(q, idx);
}

// Knuth's subresultant PRS on primitive inputs with deg a >= deg b >= 1.
MultiPoly prs_gcd(UPoly u, UPoly v, int idx) {
  MultiPoly g(1), h(1);
  g = g.with_vars(u.back().vars());
  h = g;
  while (true) {
    int delta = udeg(u) - udeg(v);
    UPoly r = prem(u, v);
    if (r.empty()) return primitive_part(v, idx);
    if (udeg(r) == 0) return MultiPoly(1);
    MultiPoly div = g * h.pow(static_cast<unsigned>(delta));
    u = std::move(v);
    v.clear();
    for (const auto& c : r) v.push_back(exact(c, div));
    g = u.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
}

MultiPoly content_of(const UPoly& u) {
  MultiPoly c;
  for (const auto& x : u) {
    if (x.is_zero()) continue;
    c = c.is_zero() ? x.monic() : gcd(c, x);
    if (c.is_constant()) return MultiPoly(1);
  }
  return c;
}

bool is_linear(const MultiPoly& p) { return p.total_degree() == 1; }

MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a == b) return a.monic();
  if (is_linear(a)) return divide_exact(b, a) ? a.monic() : MultiPoly(1);
  if (is_linear(b)) return divide_exact(a, b) ? b.monic() : MultiPoly(1);

  const auto& vars = a.vars();
  std::vector<int> da(vars.size()), db(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    da[i] = a.degree(static_cast<int>(i));
    db[i] = b.degree(static_cast<int>(i));
  }
  // A variable present in only one argument cannot occur in the gcd.
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (da[i] > 0 && db[i] == 0) return gcd(content_of(a.coefficients_in(static_cast<int>(i))), b);
    if (db[i] > 0 && da[i] == 0) return gcd(a, content_of(b.coefficients_in(static_cast<int>(i))));
  }
  int idx = -1;
  int best = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (da[i] == 0) continue;
    int cost = std::max(da[i], db[i]);
    if (idx < 0 || cost < best) {
      idx = static_cast<int>(i);
      best = cost;
    }
  }
  UPoly ua = a.coefficients_in(idx), ub = b.coefficients_in(idx);
  MultiPoly ca = content_of(ua), cb = content_of(ub);
  for (auto& x : ua) x = exact(x, ca);
  for (auto& x : ub) x = exact(x, cb);
  MultiPoly c = gcd(ca, cb);
  if (udeg(ua) < udeg(ub)) std::swap(ua, ub);
  MultiPoly g = prs_gcd(std::move(ua), std::move(ub), idx);
  return (c * g).monic();
}

}  // namespace

MultiPoly gcd(const MultiPoly& x, const MultiPoly& y) {
  auto vars = merge_vars(x.vars(), y.vars());
  MultiPoly a = x.with_vars(vars), b = y.with_vars(vars);
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1).with_vars(vars);
  Exponents ea = a.min_exponents(), eb = b.min_exponents();
  Exponents e(vars.size());
  bool has_mono = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = std::min(ea[i], eb[i]);
    has_mono = has_mono || e[i] > 0;
  }
  MultiPoly a1 = a.shift_down(ea), b1 = b.shift_down(eb);
  MultiPoly g = gcd_core(a1, b1).with_vars(vars);
  if (has_mono) g = g.shift_up(e);
  return g.monic();
}

}  // namespace isolab
