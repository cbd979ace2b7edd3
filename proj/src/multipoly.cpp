#include "isolab/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "isolab/errors.hpp"

namespace isolab {

bool var_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size() - 1));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size() - 1));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = i2;
      j = j2;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  if (a == b) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && var_less(a[i], b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || var_less(b[j], a[i])) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

int grlex_compare(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {

struct ExpHash {
  std::size_t operator()(const Exponents& e) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_compare(a, b) > 0; }
};

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back(Term{{}, c});
}

MultiPoly::MultiPoly(std::vector<std::string> vars, std::vector<Term> terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
  if (!std::is_sorted(vars_.begin(), vars_.end(), var_less) ||
      std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end()) {
    // Re-sort variables and permute exponents accordingly.
    std::vector<std::string> sorted = vars_;
    std::sort(sorted.begin(), sorted.end(), var_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      pos[i] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), vars_[i]) - sorted.begin());
    for (auto& t : terms_) {
      Exponents e(sorted.size(), 0);
      for (std::size_t i = 0; i < vars_.size(); ++i) e[pos[i]] += t.exp[i];
      t.exp = std::move(e);
    }
    vars_ = std::move(sorted);
  }
  for (auto& t : terms_)
    if (t.exp.size() != vars_.size()) throw DomainError("exponent vector length mismatch");
  normalize_terms();
}

void MultiPoly::normalize_terms() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_compare(a.exp, b.exp) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  terms_ = std::move(out);
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_.push_back(Term{{1}, Rational(1)});
  return p;
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& vars, Exponents exp, Rational coef) {
  return MultiPoly(vars, {Term{std::move(exp), std::move(coef)}});
}

MultiPoly MultiPoly::univariate(const std::string& var, const std::vector<Rational>& coeffs) {
  std::vector<Term> ts;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) ts.push_back(Term{{static_cast<std::uint32_t>(k)}, coeffs[k]});
  return MultiPoly({var}, std::move(ts));
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_[0].exp)
    if (e) return false;
  return true;
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  for (const auto& t : terms_)
    if (t.exp == e) return t.coef;
  return Rational(0);
}

int MultiPoly::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (auto e : terms_.front().exp) d += static_cast<int>(e);
  return d;
}

int MultiPoly::degree(int idx) const {
  if (terms_.empty()) return -1;
  if (idx < 0) return 0;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[idx]));
  return d;
}

int MultiPoly::degree(const std::string& var) const { return degree(var_index(var)); }

std::vector<std::string> MultiPoly::used_vars() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (const auto& t : terms_)
      if (t.exp[i]) {
        out.push_back(vars_[i]);
        break;
      }
  return out;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& target) const {
  if (target == vars_) return *this;
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(target.begin(), target.end(), vars_[i]);
    if (it == target.end()) {
      if (degree(static_cast<int>(i)) > 0)
        throw DomainError("variable " + vars_[i] + " missing from target list");
      pos[i] = target.size();
    } else {
      pos[i] = static_cast<std::size_t>(it - target.begin());
    }
  }
  MultiPoly out;
  out.vars_ = target;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (pos[i] < target.size()) e[pos[i]] = t.exp[i];
    out.terms_.push_back(Term{std::move(e), t.coef});
  }
  // Variable lists are both sorted, so relative order of terms is preserved.
  return out;
}

MultiPoly MultiPoly::trimmed() const { return with_vars(used_vars()); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  auto vars = merge_vars(vars_, o.vars_);
  MultiPoly a = with_vars(vars), b = o.with_vars(vars);
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c;
    if (i == a.terms_.size()) c = -1;
    else if (j == b.terms_.size()) c = 1;
    else c = grlex_compare(a.terms_[i].exp, b.terms_[j].exp);
    if (c > 0) {
      out.push_back(std::move(a.terms_[i++]));
    } else if (c < 0) {
      out.push_back(std::move(b.terms_[j++]));
    } else {
      a.terms_[i].coef += b.terms_[j].coef;
      if (!a.terms_[i].coef.is_zero()) out.push_back(std::move(a.terms_[i]));
      ++i;
      ++j;
    }
  }
  vars_ = std::move(vars);
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
  if (x.is_zero() || y.is_zero()) return MultiPoly(merge_vars(x.vars_, y.vars_), {});
  auto vars = merge_vars(x.vars_, y.vars_);
  MultiPoly a = x.with_vars(vars), b = y.with_vars(vars);
  if (a.terms_.size() < b.terms_.size()) std::swap(a, b);
  std::vector<Term> out;
  if (b.terms_.size() == 1) {
    const auto& m = b.terms_[0];
    out.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      Exponents e = t.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += m.exp[k];
      out.push_back(Term{std::move(e), t.coef * m.coef});
    }
    MultiPoly r;
    r.vars_ = std::move(vars);
    r.terms_ = std::move(out);  // multiplying by a monomial preserves grlex order
    return r;
  }
  std::unordered_map<Exponents, Rational, ExpHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Exponents e(vars.size());
  mpq_class prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = s.exp[k] + t.exp[k];
      mpq_mul(prod.get_mpq_t(), s.coef.value().get_mpq_t(), t.coef.value().get_mpq_t());
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(e, Rational(prod));
      } else {
        it->second += Rational(prod);
      }
    }
  }
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (!kv.second.is_zero()) out.push_back(Term{kv.first, std::move(kv.second)});
  std::sort(out.begin(), out.end(),
            [](const Term& p, const Term& q) { return grlex_compare(p.exp, q.exp) > 0; });
  MultiPoly r;
  r.vars_ = std::move(vars);
  r.terms_ = std::move(out);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.vars_ == b.vars_) {
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }
  MultiPoly x = a.trimmed(), y = b.trimmed();
  if (x.vars_ != y.vars_) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i)
    if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coef != y.terms_[i].coef) return false;
  return true;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = MultiPoly(Rational(1)).with_vars(vars_);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial(const std::string& var) const {
  int idx = var_index(var);
  MultiPoly r;
  r.vars_ = vars_;
  if (idx < 0) return r;
  for (const auto& t : terms_) {
    if (t.exp[idx] == 0) continue;
    Term d{t.exp, t.coef * Rational(static_cast<long>(t.exp[idx]))};
    d.exp[idx] -= 1;
    r.terms_.push_back(std::move(d));
  }
  r.normalize_terms();
  return r;
}

Exponents MultiPoly::min_exponents() const {
  Exponents m(vars_.size(), 0);
  if (terms_.empty()) return m;
  m = terms_[0].exp;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exp[i]);
  return m;
}

MultiPoly MultiPoly::shift_down(const Exponents& e) const {
  MultiPoly r = *this;
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < e.size(); ++i) t.exp[i] -= e[i];
  return r;
}

MultiPoly MultiPoly::shift_up(const Exponents& e) const {
  MultiPoly r = *this;
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < e.size(); ++i) t.exp[i] += e[i];
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int idx) const {
  int d = degree(idx);
  std::vector<std::vector<Term>> parts(static_cast<std::size_t>(std::max(d, 0) + 1));
  for (const auto& t : terms_) {
    Term c = t;
    std::uint32_t k = idx >= 0 ? c.exp[idx] : 0;
    if (idx >= 0) c.exp[idx] = 0;
    parts[k].push_back(std::move(c));
  }
  std::vector<MultiPoly> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    MultiPoly m;
    m.vars_ = vars_;
    m.terms_ = std::move(p);  // relative grlex order survives zeroing one coordinate
    m.normalize_terms();
    out.push_back(std::move(m));
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, int idx) {
  MultiPoly r;
  if (coeffs.empty()) return r;
  r.vars_ = coeffs[0].vars_;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Term c = t;
      c.exp[idx] += static_cast<std::uint32_t>(k);
      r.terms_.push_back(std::move(c));
    }
  r.normalize_terms();
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  Rational lc = terms_.front().coef;
  if (lc.is_one()) return *this;
  MultiPoly r = *this;
  Rational inv = Rational(1) / lc;
  for (auto& t : r.terms_) t.coef *= inv;
  return r;
}

std::complex<double> MultiPoly::evaluate(const std::map<std::string, std::complex<double>>& at) const {
  std::vector<std::complex<double>> vals(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = at.find(vars_[i]);
    if (it == at.end()) {
      if (degree(static_cast<int>(i)) > 0) throw DomainError("no value for variable " + vars_[i]);
      continue;
    }
    vals[i] = it->second;
  }
  return evaluate<std::complex<double>>(vals);
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& at) const {
  std::vector<Rational> vals(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = at.find(vars_[i]);
    if (it == at.end()) {
      if (degree(static_cast<int>(i)) > 0) throw DomainError("no value for variable " + vars_[i]);
      continue;
    }
    vals[i] = it->second;
  }
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i]) v *= vals[i].pow(t.exp[i]);
    acc += v;
  }
  return acc;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& x, const MultiPoly& y) {
  if (y.is_zero()) throw DomainError("division by zero polynomial");
  auto vars = merge_vars(x.vars(), y.vars());
  MultiPoly a = x.with_vars(vars), b = y.with_vars(vars);
  if (a.is_zero()) return a;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (a.degree(static_cast<int>(i)) < b.degree(static_cast<int>(i))) return std::nullopt;
  const Term& lb = b.leading();
  auto divides = [](const Exponents& d, const Exponents& e) {
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] > e[i]) return false;
    return true;
  };
  if (b.is_monomial()) {
    std::vector<Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!divides(lb.exp, t.exp)) return std::nullopt;
      Exponents e = t.exp;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] -= lb.exp[i];
      q.push_back(Term{std::move(e), t.coef / lb.coef});
    }
    return MultiPoly(vars, std::move(q));
  }
  std::map<Exponents, Rational, GrlexGreater> r;
  for (const auto& t : a.terms()) r.emplace(t.exp, t.coef);
  std::vector<Term> q;
  Rational inv = Rational(1) / lb.coef;
  while (!r.empty()) {
    auto it = r.begin();
    if (!divides(lb.exp, it->first)) return std::nullopt;
    Exponents qe = it->first;
    for (std::size_t i = 0; i < qe.size(); ++i) qe[i] -= lb.exp[i];
    Rational qc = it->second * inv;
    for (const auto& t : b.terms()) {
      Exponents e = t.exp;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += qe[i];
      auto jt = r.find(e);
      Rational delta = qc * t.coef;
      if (jt == r.end()) {
        r.emplace(std::move(e), -delta);
      } else {
        jt->second -= delta;
        if (jt->second.is_zero()) r.erase(jt);
      }
    }
    q.push_back(Term{std::move(qe), std::move(qc)});
  }
  return MultiPoly(vars, std::move(q));
}

}  // namespace isolab
