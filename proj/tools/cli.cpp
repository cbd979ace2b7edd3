#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "isolab/errors.hpp"
#include "isolab/garnier.hpp"
#include "isolab/golden.hpp"
#include "isolab/painleve.hpp"
#include "isolab/periods.hpp"
#include "isolab/schlesinger.hpp"
#include "isolab/text.hpp"

namespace isolab::cli {

namespace {

using json = nlohmann::json;

// Usage problems: bad flags, missing parameters, unreadable documents.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string theorem;
  int p = 2, N = 3, M = 2, j = 1, pole = 1;
  std::optional<int> m, n;
  std::string b, c, a, eps, x, in = "-";
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  bool gauge = false, numeric = false, all_sheets = false, infinity_loops = false, fd = false;
  std::string example;
};

std::string trim(std::string s) {
  auto issp = [](unsigned char ch) { return std::isspace(ch); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

Rational parse_rational(const std::string& s) {
  try {
    return Rational::parse(trim(s));
  } catch (const Error&) {
    throw UsageError("not a rational number: '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  Rational r = parse_rational(s);
  if (!r.is_integer()) throw UsageError("not an integer: '" + s + "'");
  return static_cast<int>(r.to_long_double());
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  if (trim(s).empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  return out;
}

template <class T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

std::string need(const std::string& v, const char* flag) {
  if (trim(v).empty()) throw UsageError(std::string("missing ") + flag);
  return v;
}

json wrap(const std::string& command, json body) {
  body["schema_version"] = kSchemaVersion;
  body["command"] = command;
  return body;
}

json check(const std::string& equation, bool ok, json residual) {
  return {{"equation", equation}, {"pass", ok}, {"residual", std::move(residual)}};
}

// Canonical text of an exact residual, shortened for reports.
std::string residual_text(const RatFunc& r) {
  std::string s = to_string(r);
  if (s.size() > 240) s = s.substr(0, 240) + "...";
  return s;
}

json exact_check(const std::string& equation, const RatFunc& residual) {
  return check(equation, residual.is_zero(), residual_text(residual));
}

json numeric_check(const std::string& equation, long double value, long double bound) {
  return check(equation, value < bound, static_cast<double>(value));
}

// ---------------------------------------------------------------- generate

json liouvillian_document(int n, const Rational& b, const Rational& c, const std::vector<long double>& xs) {
  auto f = thm7_solution(n, b, c);
  json samples = json::array();
  for (const auto& s : liouvillian_eval(n, b, c, xs))
    samples.push_back({{"x", static_cast<double>(s.x)},
                       {"b1L", static_cast<double>(s.b1L)},
                       {"b3L", static_cast<double>(s.b3L)},
                       {"wronskian", static_cast<double>(s.wronskian)},
                       {"wronskian_expected", static_cast<double>(s.wronskian_expected)},
                       {"ode_residual", static_cast<double>(s.ode_residual)}});
  return {{"kind", "liouvillian_family"},
          {"theorem", "9"},
          {"inputs", {{"n", std::to_string(n)}, {"b", b.str()}, {"c", c.str()}}},
          {"params", to_json(f.params)},
          {"theta", to_json(f.theta)},
          {"b1P", to_string(f.basis[0].b1)},
          {"b3P", to_string(f.basis[0].b3)},
          {"samples", samples}};
}

std::vector<long double> sample_points(const std::string& x) {
  std::vector<long double> xs;
  for (const auto& t : split(x.empty() ? "2,3,5" : x, ',')) xs.push_back(parse_double(t));
  return xs;
}

json cmd_generate(const RunConfig& cfg) {
  const std::string& t = need(cfg.theorem, "--theorem");
  json doc;
  std::string builder;
  try {
    if (t == "3") {
      builder = "polynomial residues at infinity";
      doc = to_json(build_polynomial_solution(cfg.p, cfg.N, require(cfg.m, "--m"), require(cfg.n, "--n"),
                                              parse_rational_list(cfg.c), cfg.pole));
    } else if (t == "4") {
      builder = "rational residues at a branch point";
      doc = to_json(build_rational_solution(cfg.p, cfg.N, cfg.m.value_or(1), require(cfg.n, "--n"),
                                            parse_rational_list(cfg.c), cfg.pole, cfg.gauge));
    } else if (t == "5") {
      builder = "thm5_solution";
      doc = to_json(thm5_solution(require(cfg.n, "--n")));
    } else if (t == "6") {
      builder = "thm6_family";
      doc = to_json(thm6_family(require(cfg.n, "--n")));
    } else if (t == "7") {
      builder = "thm7_solution";
      doc = to_json(thm7_solution(require(cfg.n, "--n"), parse_rational(need(cfg.b, "--b")), parse_rational(need(cfg.c, "--c"))));
    } else if (t == "8") {
      builder = "thm8_family";
      doc = to_json(thm8_family(parse_int(need(cfg.a, "--a")), parse_int(need(cfg.b, "--b")), parse_int(need(cfg.c, "--c"))));
    } else if (t == "9") {
      builder = "liouvillian second solution";
      doc = liouvillian_document(require(cfg.n, "--n"), parse_rational(need(cfg.b, "--b")), parse_rational(need(cfg.c, "--c")),
                                 sample_points(cfg.x));
    } else if (t == "10") {
      builder = "thm10_solution";
      doc = to_json(thm10_solution(cfg.M, require(cfg.m, "--m"), require(cfg.n, "--n")));
    } else if (t == "11") {
      builder = "thm11_family";
      doc = to_json(thm11_family(cfg.M, require(cfg.n, "--n"), parse_rational_list(need(cfg.c, "--c"))));
    } else {
      throw UsageError("unknown theorem '" + t + "' (expected 3..11)");
    }
  } catch (const PreconditionError& e) {
    throw PreconditionError("theorem " + t + " hypothesis violated: " + e.what());
  }
  return wrap("generate", {{"provenance", {{"theorem", t}, {"builder", builder}, {"tool", "isolab"}}}, {"document", doc}});
}

// ---------------------------------------------------------------- verify

json read_document(const std::string& path) {
  json j;
  try {
    if (path == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream f(path);
      if (!f) throw UsageError("cannot open '" + path + "'");
      j = json::parse(f);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed input document: ") + e.what());
  }
  if (j.contains("document")) j = j.at("document");
  if (!j.is_object() || !j.contains("kind")) throw UsageError("malformed input document: no kind");
  return j;
}

json verify_pvi(const json& d) {
  PVISolutionFamily f = family_from_json(d);
  json checks = json::array();
  checks.push_back(exact_check("PVI", pvi_residual(f.y, f.params)));
  if (!(pvi_params(f.theta) == f.params)) checks.push_back(check("parameter map", false, "params differ from theta"));
  for (std::size_t k = 0; k < f.basis.size(); ++k) {
    const auto& t = f.basis[k];
    std::string tag = f.basis.size() == 1 ? "" : (k == 0 ? " (b)" : " (b~)");
    checks.push_back(exact_check("b1 + b2 + b3 = 0" + tag, t.b1 + t.b2 + t.b3));
    auto ls = linear_system_residual(t.b1, t.b2, f.theta);
    checks.push_back(exact_check("linear system, b1 equation" + tag, ls.first));
    checks.push_back(exact_check("linear system, b2 equation" + tag, ls.second));
    checks.push_back(exact_check("hypergeometric equation for b1" + tag, hypergeom_residual(t.b1, 1, f.theta)));
    checks.push_back(exact_check("hypergeometric equation for b2" + tag, hypergeom_residual(t.b2, 2, f.theta)));
  }
  if (!f.basis.empty()) {
    RatFunc c = RatFunc::variable(kFamilyVar);
    RatFunc y = f.basis.size() == 1 ? y_from_b(f.basis[0].b1, f.basis[0].b3)
                                    : y_from_b(c * f.basis[0].b1 + f.basis[1].b1, c * f.basis[0].b3 + f.basis[1].b3);
    checks.push_back(exact_check("y = x b1/(b1 + (1 - x) b3)", y - f.y));
  }
  return checks;
}

json verify_triangular(const json& d) {
  TriangularSolution s = solution_from_json(d);
  auto rep = schlesinger_residual(s);
  json checks = json::array();
  auto add = [&](const std::string& what, const std::vector<ResidualEntry>& es) {
    for (const auto& e : es)
      checks.push_back(exact_check(what + " i=" + std::to_string(e.i) + " j=" + std::to_string(e.j) + " (k,l)=(" +
                                       std::to_string(e.k) + "," + std::to_string(e.l) + ")",
                                   e.value));
  };
  add("Schlesinger dB_i/da_j", rep.off_diagonal);
  add("Schlesinger dB_i/da_i", rep.diagonal);
  add("inhomogeneity", rep.inhomogeneity);
  auto sums = sum_constraint(s);
  for (std::size_t q = 0; q < sums.size(); ++q) checks.push_back(exact_check("sum_i b_i #" + std::to_string(q + 1), sums[q]));
  return checks;
}

std::vector<std::vector<cld>> garnier_points(const std::string& a) {
  if (trim(a).empty()) return {{2.0L, 3.5L}, {-0.7L, 2.3L}, {1.7L, 6.1L}};
  std::vector<std::vector<cld>> pts;
  for (const auto& p : split(a, ';')) {
    std::vector<cld> v;
    for (const auto& z : parse_complex_list(p)) v.push_back(cld(z.real(), z.imag()));
    pts.push_back(v);
  }
  return pts;
}

json verify_garnier(const json& d, const RunConfig& cfg) {
  GarnierAlgebraicSolution s = garnier_from_json(d);
  json checks = json::array();
  RatFunc total;
  for (const auto& b : s.b) total += b;
  checks.push_back(exact_check("sum_i b_i", total));
  if (!total.is_zero()) return checks;
  auto pts = garnier_points(cfg.a);
  std::vector<std::vector<int>> signs = trim(cfg.eps).empty() || cfg.eps == "all" ? all_sign_vectors(s.M)
                                                                                 : std::vector<std::vector<int>>{parse_signs(cfg.eps)};
  const long double bound = cfg.tol.value_or(1e-6);
  for (const auto& pt : pts) {
    for (const auto& e : signs) {
      std::string label = "Hamiltonian system at a=(";
      for (std::size_t q = 0; q < pt.size(); ++q) {
        std::ostringstream os;
        os << static_cast<double>(pt[q].real());
        if (pt[q].imag() != 0) os << (pt[q].imag() > 0 ? "+" : "") << static_cast<double>(pt[q].imag()) << "i";
        label += (q ? "," : "") + os.str();
      }
      label += ") eps=";
      for (int v : e) label += v > 0 ? '+' : '-';
      try {
        auto r = garnier_residual_m2(s, pt, e);
        checks.push_back(numeric_check(label, r.max_abs, bound));
      } catch (const NumericError& ex) {
        checks.push_back(check(label, false, std::string("not computable: ") + ex.what()));
      }
    }
  }
  return checks;
}

json verify_liouvillian(const json& d, const RunConfig& cfg) {
  const auto& in = d.at("inputs");
  int n = parse_int(in.at("n").get<std::string>());
  Rational b = parse_rational(in.at("b").get<std::string>()), c = parse_rational(in.at("c").get<std::string>());
  json checks = json::array();
  auto f = thm7_solution(n, b, c);
  checks.push_back(exact_check("b1P is the hypergeometric polynomial", parse_ratfunc(d.at("b1P").get<std::string>()) - f.basis[0].b1));
  checks.push_back(exact_check("b3P partner of b1P", parse_ratfunc(d.at("b3P").get<std::string>()) - f.basis[0].b3));
  std::vector<long double> xs;
  for (const auto& s : d.at("samples")) xs.push_back(s.at("x").get<double>());
  if (xs.empty()) xs = {2, 3, 5};
  const long double bound = cfg.tol.value_or(1e-6);
  for (const auto& s : liouvillian_eval(n, b, c, xs)) {
    std::ostringstream x;
    x << static_cast<double>(s.x);
    checks.push_back(numeric_check("Wronskian identity (relative) at x=" + x.str(), std::abs(s.wronskian / s.wronskian_expected - 1), 1e-8L));
    checks.push_back(numeric_check("hypergeometric equation for b1L at x=" + x.str(), std::abs(s.ode_residual), bound));
  }
  return checks;
}

json cmd_verify(const RunConfig& cfg) {
  json d = read_document(cfg.in);
  const std::string kind = d.at("kind").get<std::string>();
  json checks;
  try {
    if (kind == "pvi_family") checks = verify_pvi(d);
    else if (kind == "triangular_solution") checks = verify_triangular(d);
    else if (kind == "garnier_solution") checks = verify_garnier(d, cfg);
    else if (kind == "liouvillian_family") checks = verify_liouvillian(d, cfg);
    else throw UsageError("cannot verify documents of kind '" + kind + "'");
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed input document: ") + e.what());
  }
  bool ok = !checks.empty();
  for (const auto& c : checks) ok = ok && c.at("pass").get<bool>();
  return wrap("verify", {{"kind", kind}, {"pass", ok}, {"checks", checks}});
}

// ---------------------------------------------------------------- zeros

json cmd_zeros(const RunConfig& cfg) {
  const int n = require(cfg.n, "--n");
  const std::string t = cfg.theorem.empty() ? "5" : cfg.theorem;
  PVISolutionFamily f;
  try {
    if (t == "5") f = thm5_solution(n);
    else if (t == "7") f = thm7_solution(n, parse_rational(need(cfg.b, "--b")), parse_rational(need(cfg.c, "--c")));
    else throw UsageError("zeros needs --theorem 5 or 7");
  } catch (const PreconditionError& e) {
    throw PreconditionError("theorem " + t + " hypothesis violated: " + e.what());
  }
  if (!f.pq) throw UsageError("no numerator/denominator pair for this family");
  const long double tol = cfg.tol.value_or(1e-8);
  json polys = json::array();
  for (const auto& [id, poly] : {std::pair{std::string("P"), f.pq->first}, std::pair{std::string("Q"), f.pq->second}}) {
    auto rep = polynomial_zeros(poly, tol);
    json roots = json::array();
    auto nearest = [&](cld target) {
      long double best = std::numeric_limits<long double>::infinity();
      for (const cld& w : rep.roots) best = std::min(best, std::abs(w - target));
      return best / std::max(1.0L, std::abs(target));
    };
    for (const auto& z : rep.roots) {
      json r{{"re", static_cast<double>(z.real())}, {"im", static_cast<double>(z.imag())}};
      long double ce = nearest(std::conj(z));
      r["conjugate_error"] = static_cast<double>(ce);
      r["conjugate_ok"] = ce <= tol;
      if (std::abs(z) > tol) {
        long double ie = nearest(1.0L / z);
        r["inversion_error"] = static_cast<double>(ie);
        r["inversion_ok"] = ie <= tol;
      } else {
        r["inversion_error"] = nullptr;
        r["inversion_ok"] = nullptr;
      }
      roots.push_back(r);
    }
    polys.push_back({{"poly_id", id + std::to_string(n + 1)},
                     {"degree", static_cast<int>(rep.roots.size())},
                     {"palindromic", is_palindromic(poly)},
                     {"conjugation_symmetric", rep.conjugation_symmetric},
                     {"inversion_paired", rep.inversion_paired},
                     {"roots", roots}});
  }
  return wrap("zeros", {{"theorem", t}, {"n", n}, {"tol", static_cast<double>(tol)}, {"polynomials", polys}});
}

std::string zeros_csv(const json& doc) {
  std::ostringstream os;
  os.precision(17);
  os << "poly_id,degree,re,im,conjugate_error,conjugate_ok,inversion_error,inversion_ok\n";
  for (const auto& p : doc.at("polynomials"))
    for (const auto& r : p.at("roots")) {
      os << p.at("poly_id").get<std::string>() << "," << p.at("degree").get<int>() << "," << r.at("re").get<double>() << ","
         << r.at("im").get<double>() << "," << r.at("conjugate_error").get<double>() << ","
         << (r.at("conjugate_ok").get<bool>() ? "true" : "false") << ",";
      if (r.at("inversion_error").is_null()) os << ",na\n";
      else os << r.at("inversion_error").get<double>() << "," << (r.at("inversion_ok").get<bool>() ? "true" : "false") << "\n";
    }
  return os.str();
}

// ---------------------------------------------------------------- periods

json cmd_periods(const RunConfig& cfg, std::string& csv) {
  NumericCurve c{require(cfg.m, "--m"), require(cfg.n, "--n"), parse_complex_list(need(cfg.a, "--a"))};
  const long double tol = cfg.tol.value_or(1e-10);
  c.validate();
  CycleOptions opt;
  opt.all_sheets = cfg.all_sheets;
  opt.infinity_loops = cfg.infinity_loops;
  auto cycles = build_cycle_basis(c, opt);
  if (cycles.empty()) throw PreconditionError("no cycles carry the differentials for these parameters");
  auto B = period_matrix(c, cfg.j, cycles, tol);
  csv = period_matrix_csv(B);
  long double scale = 0, sum = 0;
  for (const auto& r : B.entry)
    for (const auto& v : r) scale = std::max(scale, std::abs(v));
  for (int k = 0; k < B.L(); ++k) {
    cld s = 0;
    for (int i = 0; i < B.N; ++i) s += B.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    sum = std::max(sum, std::abs(s));
  }
  json checks = json::array();
  int rank = 0;
  if (c.n > 0 && (cfg.j * c.n) % c.m == 0) {
    // Exact differentials: every period vanishes, so relative checks would only measure noise.
    checks.push_back(numeric_check("all periods vanish (exact differential)", scale, 1e-8L));
    rank = scale < 1e-8L ? 0 : rank_check(B);
  } else {
    checks.push_back(numeric_check("column sums vanish (relative)", scale > 0 ? sum / scale : sum, 1e-9L));
    rank = rank_check(B);
    checks.push_back(check("rank = " + std::to_string(c.N() - 1), rank == c.N() - 1, rank));
  }
  if (cfg.fd) {
    long double worst = 0;
    for (const auto& cyc : cycles) worst = std::max(worst, isomonodromy_fd_check(c, cfg.j, cyc));
    checks.push_back(numeric_check("finite-difference isomonodromy residual", worst, 1e-6L));
  }
  json sv = json::array();
  for (auto s : singular_values(B.entry)) sv.push_back(static_cast<double>(s));
  json a = json::array();
  for (const auto& z : c.a) a.push_back({z.real(), z.imag()});
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.at("pass").get<bool>();
  return wrap("periods", {{"curve", {{"m", c.m}, {"n", c.n}, {"a", a}}},
                          {"case", to_string(cycle_case(c.m, c.N(), c.n))},
                          {"period_matrix", to_json(B)},
                          {"rank", rank},
                          {"singular_values", sv},
                          {"checks", checks},
                          {"pass", ok}});
}

// ---------------------------------------------------------------- reproduce

json cmd_reproduce(const RunConfig& cfg) {
  const std::string id = need(cfg.example, "example id");
  std::vector<std::string> ids = id == "all" ? golden_ids() : std::vector<std::string>{id};
  const auto known = golden_ids();
  if (id != "all" && std::find(known.begin(), known.end(), id) == known.end())
    throw UsageError("unknown example id '" + id + "'");
  json reports = json::array();
  bool ok = true;
  for (const auto& e : ids) {
    auto r = reproduce_example(e);
    ok = ok && r.pass();
    reports.push_back(to_json(r));
  }
  return wrap("reproduce", {{"pass", ok}, {"examples", reports}});
}

std::string reproduce_csv(const json& doc) {
  std::ostringstream os;
  os << "example,check,pass,detail\n";
  auto quote = [](std::string s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& e : doc.at("examples"))
    for (const auto& c : e.at("checks"))
      os << e.at("id").get<std::string>() << "," << quote(c.at("name").get<std::string>()) << ","
         << (c.at("pass").get<bool>() ? "true" : "false") << "," << quote(c.at("detail").get<std::string>()) << "\n";
  return os.str();
}

std::string checks_csv(const json& doc) {
  std::ostringstream os;
  os.precision(17);
  os << "equation,pass,residual\n";
  for (const auto& c : doc.at("checks")) {
    std::string eq = c.at("equation").get<std::string>(), res = c.at("residual").is_string() ? c.at("residual").get<std::string>()
                                                                                           : c.at("residual").dump();
    os << "\"" << eq << "\"," << (c.at("pass").get<bool>() ? "true" : "false") << ",\"" << res << "\"\n";
  }
  return os.str();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out, "output file (default: standard output)");
}

void configure_threads() {
  const char* t = std::getenv("ISOLAB_THREADS");
  if (!t || !*t) return;
  int v = 0;
  try {
    v = std::stoi(t);
  } catch (const std::exception&) {
    throw UsageError("ISOLAB_THREADS must be a positive integer");
  }
  if (v < 1) throw UsageError("ISOLAB_THREADS must be a positive integer");
  omp_set_num_threads(v);
}

}  // namespace

std::complex<double> parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0};
  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  auto imag = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (cut == std::string::npos) return {0, imag(body)};
  return {parse_double(body.substr(0, cut)), imag(body.substr(cut))};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_complex(t));
  return out;
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  std::string s = trim(text);
  if (s.find(',') == std::string::npos) {
    for (char ch : s) {
      if (ch == '+') out.push_back(1);
      else if (ch == '-') out.push_back(-1);
      else throw UsageError("signs must be + or -: '" + text + "'");
    }
    return out;
  }
  for (const auto& t : split(s, ',')) {
    if (t == "+" || t == "1" || t == "+1") out.push_back(1);
    else if (t == "-" || t == "-1") out.push_back(-1);
    else throw UsageError("signs must be + or -: '" + text + "'");
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"isolab: isomonodromic solution families and their verification"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "build a solution family as JSON");
  gen->add_option("--theorem", cfg.theorem, "family: 3, 4 (Schlesinger), 5-9 (Painleve VI), 10, 11 (Garnier)")->required();
  gen->add_option("--p", cfg.p, "matrix size (3, 4)");
  gen->add_option("--N", cfg.N, "number of poles (3, 4)");
  gen->add_option("--m", cfg.m, "curve exponent");
  gen->add_option("--n", cfg.n, "eigenvalue step numerator");
  gen->add_option("--M", cfg.M, "Garnier dimension");
  gen->add_option("--b", cfg.b, "parameter b");
  gen->add_option("--c", cfg.c, "parameter c, or comma-separated constants");
  gen->add_option("--a", cfg.a, "parameter a (8)");
  gen->add_option("--pole", cfg.pole, "pole index for the residues (3, 4)");
  gen->add_flag("--gauge", cfg.gauge, "translate the pole to 0 (4)");
  gen->add_option("--x", cfg.x, "sample points for 9, comma-separated");
  add_common(gen, cfg);

  auto* ver = app.add_subcommand("verify", "run the residual suite on a JSON document");
  ver->add_option("--in", cfg.in, "input document (default: standard input)");
  ver->add_flag("--numeric", cfg.numeric, "accepted for symmetry; numeric checks run whenever the family needs them");
  ver->add_option("--a", cfg.a, "Garnier points: a1,a2[;a1,a2...]");
  ver->add_option("--eps", cfg.eps, "sign vector such as ++-+ (default: all)");
  ver->add_option("--tol", cfg.tol, "numeric residual bound (default 1e-6)")->check(CLI::PositiveNumber);
  add_common(ver, cfg);

  auto* zer = app.add_subcommand("zeros", "roots of the numerator and denominator of y");
  zer->add_option("--n", cfg.n, "degree parameter")->required();
  zer->add_option("--theorem", cfg.theorem, "5 (default) or 7");
  zer->add_option("--b", cfg.b, "parameter b (7)");
  zer->add_option("--c", cfg.c, "parameter c (7)");
  zer->add_option("--tol", cfg.tol, "symmetry tolerance (default 1e-8)")->check(CLI::PositiveNumber);
  add_common(zer, cfg);

  auto* per = app.add_subcommand("periods", "period matrix of w^(jn) dz/(z - a_i) over a cycle basis");
  per->add_option("--m", cfg.m, "curve exponent")->required();
  per->add_option("--n", cfg.n, "exponent of w")->required();
  per->add_option("--a", cfg.a, "branch points, comma-separated complex numbers")->required();
  per->add_option("--j", cfg.j, "differential index (default 1)");
  per->add_option("--tol", cfg.tol, "quadrature tolerance (default 1e-10)")->check(CLI::PositiveNumber);
  per->add_flag("--all-sheets", cfg.all_sheets, "include the dependent last-sheet figure-eights");
  per->add_flag("--infinity-loops", cfg.infinity_loops, "append loops around the points at infinity");
  per->add_flag("--fd", cfg.fd, "also run the finite-difference isomonodromy check");
  add_common(per, cfg);

  auto* rep = app.add_subcommand("reproduce", "regenerate a worked example and compare with the embedded values");
  rep->add_option("example", cfg.example, "example-1, -2, -3, -4, -8, -9 or all")->required();
  add_common(rep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return Exit::usage;
  }

  try {
    configure_threads();
    json doc;
    std::string text;
    if (gen->parsed()) {
      if (cfg.format == "csv") throw UsageError("generate writes JSON only");
      doc = cmd_generate(cfg);
    } else if (ver->parsed()) {
      doc = cmd_verify(cfg);
      if (cfg.format == "csv") text = checks_csv(doc);
    } else if (zer->parsed()) {
      doc = cmd_zeros(cfg);
      if (cfg.format == "csv") text = zeros_csv(doc);
    } else if (per->parsed()) {
      std::string csv;
      doc = cmd_periods(cfg, csv);
      if (cfg.format == "csv") text = csv;
    } else if (rep->parsed()) {
      doc = cmd_reproduce(cfg);
      if (cfg.format == "csv") text = reproduce_csv(doc);
    }
    if (text.empty()) text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw UsageError("cannot write '" + cfg.out + "'");
      f << text;
    }
    if (doc.contains("pass") && !doc.at("pass").get<bool>()) return Exit::fail;
    return Exit::pass;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const PreconditionError& e) {
    err << "parameter error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const DomainError& e) {
    err << "parameter error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return Exit::fail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
}

}  // namespace isolab::cli
