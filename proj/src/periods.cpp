#include "isolab/periods.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#include "isolab/errors.hpp"
#include "isolab/schlesinger.hpp"

namespace isolab {

namespace {

const long double kPi = std::acos(-1.0L);

cld to_cld(cplx z) { return cld(z.real(), z.imag()); }
cld root_of_unity(int num, int den) { return std::polar(1.0L, 2 * kPi * num / den); }

std::vector<cld> branch_points(const NumericCurve& c) {
  std::vector<cld> out;
  for (const auto& a : c.a) out.push_back(to_cld(a));
  return out;
}

cld center_of(const std::vector<cld>& a) {
  cld s = 0;
  for (const auto& x : a) s += x;
  return s / static_cast<long double>(a.size());
}

long double spread(const std::vector<cld>& a, cld c) {
  long double r = 0;
  for (const auto& x : a) r = std::max(r, std::abs(x - c));
  return r;
}

long double point_segment_distance(cld p, cld a, cld b) {
  cld d = b - a;
  long double len2 = std::norm(d);
  long double t = len2 == 0 ? 0 : std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0L, 1.0L);
  return std::abs(p - (a + d * t));
}

// Radius of the small loop around a_i: 0.3 of the distance to the nearest other branch point.
long double loop_radius(const std::vector<cld>& a, std::size_t i) {
  long double d = std::numeric_limits<long double>::infinity();
  for (std::size_t h = 0; h < a.size(); ++h)
    if (h != i) d = std::min(d, std::abs(a[i] - a[h]));
  return 0.3L * d;
}

// Common base point for the spokes: far from the branch points, in the direction that keeps
// every spoke farthest from the other branch points.
cld spoke_base(const std::vector<cld>& a) {
  const cld c = center_of(a);
  const long double R = 2 * spread(a, c) + 1;
  cld best = c + cld(0, -R);
  long double best_clear = -1;
  for (int t = 0; t < 64; ++t) {
    cld B = c + std::polar(R, 2 * kPi * (t + 0.5L) / 64);
    long double clear = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t h = 0; h < a.size(); ++h)
        if (h != i) clear = std::min(clear, point_segment_distance(a[h], B, a[i]));
    if (clear > best_clear) {
      best_clear = clear;
      best = B;
    }
  }
  return best;
}

// Spoke B -> circle around a_i, one turn (dir = +1 counterclockwise, -1 clockwise), spoke back.
void append_lollipop(std::vector<Segment>& segs, const std::vector<cld>& a, std::size_t i, cld B, int dir) {
  const long double rho = loop_radius(a, i);
  const long double phi = std::arg(B - a[i]);
  const cld p = a[i] + std::polar(rho, phi);
  segs.push_back(Segment::line(B, p));
  segs.push_back(Segment::arc(a[i], rho, phi, phi + dir * 2 * kPi));
  segs.push_back(Segment::line(p, B));
}

// sum_i Log((z - a_i)/(z0 - a_i)); continuous while |z - z0| < |z0 - a_i| / 2.
cld log_ratio(const std::vector<cld>& a, cld z, cld z0) {
  cld s = 0;
  for (const auto& ai : a) s += std::log((z - ai) / (z0 - ai));
  return s;
}

long double min_distance(const std::vector<cld>& a, cld z) {
  long double d = std::numeric_limits<long double>::infinity();
  for (const auto& ai : a) d = std::min(d, std::abs(z - ai));
  return d;
}

// Splits every segment into pieces no longer than half the distance to the nearest branch
// point and calls f(segment, t0, dt, z(t0), w(t0)) for each, carrying w analytically.
template <class F>
cld walk(const std::vector<cld>& a, int m, const PathSpec& path, cld w0, F f) {
  cld w = w0;
  long pieces = 0;
  long double scale = 1;
  for (const auto& ai : a) scale = std::max(scale, std::abs(ai));
  for (const auto& seg : path.segments) {
    const long double len = seg.length();
    long double t = 0;
    while (t < 1) {
      cld zs = seg.point(t);
      long double d = min_distance(a, zs);
      if (d < 1e-12L * scale) throw NumericError("integration path passes through a branch point");
      long double dt = len == 0 ? 1 - t : std::min(1 - t, 0.5L * d / len);
      if (1 - t - dt < 1e-15L) dt = 1 - t;
      const bool last = dt == 1 - t;
      f(seg, t, dt, zs, w);
      w *= std::exp(log_ratio(a, zs + seg.offset(t, dt), zs) / static_cast<long double>(m));
      t = last ? 1 : t + dt;
      if (++pieces > 2000000) throw NumericError("path needs too many pieces");
    }
  }
  return w;
}

template <class G>
cld gk(G g, long double lo, long double hi, long double tol, long double& err) {
  long double e = 0;
  cld v = boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(g, lo, hi, 15, tol, &e);
  err += e;
  return v;
}

cld start_value(const NumericCurve& c, const PathSpec& path) { return sheet_value(c, path.start(), path.start_branch); }

NumericCurve moved(const NumericCurve& c, int k, long double delta) {
  NumericCurve d = c;
  d.a[static_cast<std::size_t>(k - 1)] += cplx(static_cast<double>(delta), 0);
  return d;
}

}  // namespace

Segment Segment::line(cld a, cld b) {
  Segment s;
  s.kind = Kind::line;
  s.z0 = a;
  s.z1 = b;
  return s;
}

Segment Segment::arc(cld center, long double radius, long double theta0, long double theta1) {
  Segment s;
  s.kind = Kind::arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  return s;
}

cld Segment::point(long double t) const {
  if (kind == Kind::line) return z0 + (z1 - z0) * t;
  return center + std::polar(radius, theta0 + (theta1 - theta0) * t);
}

cld Segment::velocity(long double t) const {
  if (kind == Kind::line) return z1 - z0;
  long double th = theta0 + (theta1 - theta0) * t;
  return cld(0, theta1 - theta0) * std::polar(radius, th);
}

cld Segment::offset(long double t0, long double u) const {
  if (kind == Kind::line) return (z1 - z0) * u;
  const long double th = theta0 + (theta1 - theta0) * t0, dth = (theta1 - theta0) * u;
  // e^(i(th + dth)) - e^(i th) without cancellation.
  return std::polar(radius, th + dth / 2) * cld(0, 2 * std::sin(dth / 2));
}

long double Segment::length() const {
  if (kind == Kind::line) return std::abs(z1 - z0);
  return radius * std::abs(theta1 - theta0);
}

bool PathSpec::closed() const {
  if (segments.empty()) return false;
  return std::abs(end() - start()) <= 1e-12L * std::max(1.0L, std::abs(start()));
}

cld sheet_value(const NumericCurve& c, cld z, int branch) {
  cld w = root_of_unity(branch, c.m);
  for (const auto& a : branch_points(c)) w *= std::pow(z - a, 1.0L / c.m);
  return w;
}

long double min_branch_distance(const NumericCurve& c, cld z) { return min_distance(branch_points(c), z); }

long double branch_separation(const NumericCurve& c) {
  auto a = branch_points(c);
  long double d = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t h = i + 1; h < a.size(); ++h) d = std::min(d, std::abs(a[i] - a[h]));
  return d;
}

std::vector<PathSample> continue_w(const NumericCurve& c, const PathSpec& path, int steps, long double clearance) {
  c.validate();
  if (steps < 1 || path.segments.empty()) throw PreconditionError("need a nonempty path and steps >= 1");
  if (clearance < 0) clearance = 0.05L * branch_separation(c);
  const auto a = branch_points(c);
  auto check = [&](cld z) {
    if (min_distance(a, z) < clearance) throw PreconditionError("path violates the branch-point clearance");
  };
  // Nearest of the m candidate roots at z; NumericError-free, returns ambiguity flag.
  auto pick = [&](cld z, cld prev, bool& ambiguous) {
    cld base = sheet_value(c, z, 0);
    long double d1 = std::numeric_limits<long double>::infinity(), d2 = d1;
    cld best = base;
    for (int b = 0; b < c.m; ++b) {
      cld cand = base * root_of_unity(b, c.m);
      long double d = std::abs(cand - prev);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = cand;
      } else if (d < d2) {
        d2 = d;
      }
    }
    ambiguous = c.m > 1 && d2 < 2 * d1;
    return best;
  };

  std::vector<PathSample> out;
  cld w = start_value(c, path);
  check(path.start());
  out.push_back({path.start(), w});
  for (const auto& seg : path.segments) {
    const long double dt = 1.0L / steps;
    for (int s = 0; s < steps; ++s) {
      // Advance from t0 to t0 + dt, halving on ambiguity.
      long double t = s * dt, target = (s + 1) * dt;
      long double h = dt;
      int halvings = 0;
      while (t < target - 1e-18L) {
        long double tn = std::min(target, t + h);
        cld z = seg.point(tn);
        check(z);
        bool amb = false;
        cld next = pick(z, w, amb);
        if (amb) {
          if (++halvings > 40) throw NumericError("branch tracking step too coarse");
          h /= 2;
          continue;
        }
        w = next;
        t = tn;
      }
      out.push_back({seg.point(target), w});
    }
  }
  return out;
}

cld monodromy(const NumericCurve& c, const PathSpec& path) {
  c.validate();
  cld w0 = start_value(c, path);
  cld w1 = walk(branch_points(c), c.m, path, w0, [](const Segment&, long double, long double, cld, cld) {});
  return w1 / w0;
}

PathSpec figure_eight(const NumericCurve& c, int i, int k, int sheet) {
  c.validate();
  if (i < 1 || k < 1 || i > c.N() || k > c.N() || i == k) throw PreconditionError("figure-eight needs two distinct branch points");
  const auto a = branch_points(c);
  const cld B = spoke_base(a);
  PathSpec p;
  append_lollipop(p.segments, a, static_cast<std::size_t>(i - 1), B, +1);
  append_lollipop(p.segments, a, static_cast<std::size_t>(k - 1), B, -1);
  p.start_branch = ((sheet % c.m) + c.m) % c.m;
  p.label = "eight(" + std::to_string(i) + "," + std::to_string(k) + ";" + std::to_string(p.start_branch) + ")";
  return p;
}

PathSpec puncture_loop(const NumericCurve& c, int nu) {
  c.validate();
  if (nu < 1 || nu > c.N()) throw PreconditionError("branch point index out of range");
  const auto a = branch_points(c);
  PathSpec p;
  p.segments.push_back(Segment::arc(a[static_cast<std::size_t>(nu - 1)], loop_radius(a, static_cast<std::size_t>(nu - 1)), 0,
                                    2 * kPi * c.m));
  p.label = "puncture(" + std::to_string(nu) + ")";
  return p;
}

PathSpec infinity_loop(const NumericCurve& c, int k) {
  c.validate();
  auto inv = curve_invariants(c.m, c.N(), c.n);
  if (k < 1 || k > inv.s) throw PreconditionError("point at infinity index out of range");
  const auto a = branch_points(c);
  long double amax = 0;
  for (const auto& x : a) amax = std::max(amax, std::abs(x));
  const long double R = 10 * amax + 10;
  PathSpec p;
  p.segments.push_back(Segment::arc(0, R, 0, -2 * kPi * inv.m1));
  // Chart value at t = R^(-1/m1) > 0: eps_s^(k-1) t^(-N1) prod (1 - a_i t^m1)^(1/m).
  cld target = root_of_unity(k - 1, inv.s) * std::pow(R, static_cast<long double>(inv.N1) / inv.m1);
  for (const auto& x : a) target *= std::pow(cld(1) - x / R, 1.0L / c.m);
  int best = 0;
  long double bd = std::numeric_limits<long double>::infinity();
  for (int b = 0; b < c.m; ++b) {
    long double d = std::abs(sheet_value(c, cld(R), b) - target);
    if (d < bd) {
      bd = d;
      best = b;
    }
  }
  p.start_branch = best;
  p.label = "infinity(" + std::to_string(k) + ")";
  return p;
}

PathSpec empty_loop(const NumericCurve& c) {
  c.validate();
  const auto a = branch_points(c);
  const cld ctr = center_of(a);
  PathSpec p;
  p.segments.push_back(Segment::arc(ctr + (spread(a, ctr) + 2.0L), 0.5L, 0, 2 * kPi));
  p.label = "empty";
  return p;
}

CycleCase cycle_case(int m, int N, int n) {
  if (n < 0) return CycleCase::punctured_branch;
  if (n == 0 || m < 2) throw PreconditionError("n > 0 needs m > 1 and n = 0 carries no differentials");
  return std::gcd(m, N) == 1 ? CycleCase::compact : CycleCase::punctured_infinity;
}

std::string to_string(CycleCase c) {
  switch (c) {
    case CycleCase::compact: return "compact";
    case CycleCase::punctured_infinity: return "punctured_infinity";
    case CycleCase::punctured_branch: return "punctured_branch";
  }
  return "";
}

std::vector<PathSpec> build_cycle_basis(const NumericCurve& c, CycleCase expected, const CycleOptions& opt) {
  c.validate();
  if (cycle_case(c.m, c.N(), c.n) != expected)
    throw PreconditionError("requested cycle case " + to_string(expected) + " does not match (m, N, n)");
  return build_cycle_basis(c, opt);
}

std::vector<PathSpec> build_cycle_basis(const NumericCurve& c, const CycleOptions& opt) {
  c.validate();
  auto inv = curve_invariants(c.m, c.N(), c.n);
  std::vector<PathSpec> out;
  const int sheets = opt.all_sheets ? c.m : c.m - 1;
  for (int i = 1; i < c.N(); ++i)
    for (int s = 0; s < sheets; ++s) out.push_back(figure_eight(c, i, i + 1, s));
  if (c.n < 0)
    for (int nu = 1; nu <= c.N() - inv.s; ++nu) out.push_back(puncture_loop(c, nu));
  if (opt.infinity_loops && c.n > 0)
    for (int k = 1; k <= inv.s; ++k) out.push_back(infinity_loop(c, k));
  return out;
}

cld integrate_omega_from(const NumericCurve& c, int i, int j, const PathSpec& path, cld w0, long double tol) {
  c.validate();
  if (i < 1 || i > c.N() || j < 1) throw PreconditionError("differential index out of range");
  if (path.segments.empty()) throw PreconditionError("empty path");
  const auto a = branch_points(c);
  const cld ai = a[static_cast<std::size_t>(i - 1)];
  const int jn = j * c.n;
  const long double e = static_cast<long double>(jn) / c.m;
  cld total = 0;
  long double err = 0, mass = 0;
  walk(a, c.m, path, w0, [&](const Segment& seg, long double t0, long double dt, cld zs, cld ws) {
    const cld W = std::pow(ws, jn);
    // Local variable s in [0, 1], t = t0 + s dt: keeps z - a_i accurate and the quadrature
    // well scaled when the piece is tiny.
    auto f = [&](long double s) {
      cld z = zs + seg.offset(t0, s * dt);
      return W * std::exp(e * log_ratio(a, z, zs)) / (z - ai) * seg.velocity(t0 + s * dt) * dt;
    };
    cld v = gk(f, 0, 1, tol, err);
    total += v;
    mass += std::abs(v);
  });
  if (!std::isfinite(std::abs(total))) throw NumericError("non-finite period");
  if (err > 100 * tol * std::max(mass, 1e-300L)) throw NumericError("quadrature did not reach the requested tolerance");
  return total;
}

cld integrate_omega(const NumericCurve& c, int i, int j, const PathSpec& path, long double tol) {
  return integrate_omega_from(c, i, j, path, start_value(c, path), tol);
}

PeriodMatrix period_matrix_serial(const NumericCurve& c, int j, const std::vector<PathSpec>& cycles, long double tol) {
  PeriodMatrix B;
  B.N = c.N();
  B.j = j;
  for (const auto& p : cycles) B.labels.push_back(p.label);
  B.entry.assign(static_cast<std::size_t>(c.N()), std::vector<cld>(cycles.size()));
  for (int i = 1; i <= c.N(); ++i)
    for (std::size_t k = 0; k < cycles.size(); ++k)
      B.entry[static_cast<std::size_t>(i - 1)][k] = integrate_omega(c, i, j, cycles[k], tol);
  return B;
}

PeriodMatrix period_matrix(const NumericCurve& c, int j, const std::vector<PathSpec>& cycles, long double tol) {
  PeriodMatrix B;
  B.N = c.N();
  B.j = j;
  for (const auto& p : cycles) B.labels.push_back(p.label);
  B.entry.assign(static_cast<std::size_t>(c.N()), std::vector<cld>(cycles.size()));
  const long L = static_cast<long>(cycles.size());
  const long total = c.N() * L;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < total; ++idx) {
    try {
      const long i = idx / L, k = idx % L;
      B.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          integrate_omega(c, static_cast<int>(i + 1), j, cycles[static_cast<std::size_t>(k)], tol);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return B;
}

std::vector<long double> singular_values(const std::vector<std::vector<cld>>& B) {
  if (B.empty() || B[0].empty()) return {};
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(B.size()), static_cast<Eigen::Index>(B[0].size()));
  for (std::size_t r = 0; r < B.size(); ++r)
    for (std::size_t k = 0; k < B[r].size(); ++k)
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
          std::complex<double>(static_cast<double>(B[r][k].real()), static_cast<double>(B[r][k].imag()));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  std::vector<long double> out;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) out.push_back(svd.singularValues()(k));
  return out;
}

int rank_check(const std::vector<std::vector<cld>>& B, long double rank_tol) {
  auto sv = singular_values(B);
  if (sv.empty() || sv[0] == 0) return 0;
  int r = 0;
  for (auto s : sv) r += s > rank_tol * sv[0];
  return r;
}

int rank_check(const PeriodMatrix& B, long double rank_tol) { return rank_check(B.entry, rank_tol); }

cld exact_loop_period(const NumericCurve& c, int i, int j, const Pole& pole) {
  c.validate();
  std::map<std::string, cplx> at;
  for (int h = 1; h <= c.N(); ++h) at["a" + std::to_string(h)] = c.a[static_cast<std::size_t>(h - 1)];
  const cld two_pi_i(0, 2 * kPi);
  const Rational k = oracle_constant(c.m, c.N(), c.n, j, pole);
  if (const auto* p = std::get_if<InfinityPole>(&pole)) {
    auto inv = curve_invariants(c.m, c.N(), c.n);
    RatFunc f = polynomial_residue_formula(c.N(), c.m, c.n, j, i);
    int tag = (((p->k - 1) * j * c.n) % inv.s + inv.s) % inv.s;
    return two_pi_i * to_cld(f.evaluate(at)) * k.to_long_double() * root_of_unity(tag, inv.s);
  }
  const auto& bp = std::get<BranchPole>(pole);
  RatFunc f = rational_residue_formula(c.N(), c.m, c.n, j, i, bp.nu, false);
  return two_pi_i * to_cld(f.evaluate(at)) * k.to_long_double();
}

cld period_derivative(const NumericCurve& c, int i, int j, const PathSpec& cycle, int k, long double h, long double tol) {
  c.validate();
  if (k < 1 || k > c.N()) throw PreconditionError("branch point index out of range");
  const cld z0 = cycle.start();
  const cld w0 = start_value(c, cycle);
  const cld ak = to_cld(c.a[static_cast<std::size_t>(k - 1)]);
  auto at = [&](long double delta) {
    NumericCurve d = moved(c, k, delta);
    // Continue w(z0) in a: only the a_k factor changes.
    cld w = w0 * std::pow((z0 - to_cld(d.a[static_cast<std::size_t>(k - 1)])) / (z0 - ak), 1.0L / c.m);
    for (const auto& seg : cycle.segments)
      for (long double t : {0.0L, 0.5L, 1.0L})
        if (min_branch_distance(d, seg.point(t)) < 0.5L * min_branch_distance(c, seg.point(t)))
          throw PreconditionError("moved branch point violates the cycle clearance");
    return integrate_omega_from(d, i, j, cycle, w, tol);
  };
  // Fourth-order central stencil; the second-order one leaves h^2 |b'''| ~ 1e-6 near close poles.
  return (8.0L * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
}

long double isomonodromy_fd_check(const NumericCurve& c, int j, const PathSpec& cycle, long double h, long double tol) {
  c.validate();
  const int N = c.N();
  std::vector<cld> b(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) b[static_cast<std::size_t>(i - 1)] = integrate_omega(c, i, j, cycle, tol);
  const long double rate = static_cast<long double>(j * c.n) / c.m;
  long double worst = 0;
  for (int k = 1; k <= N; ++k)
    for (int i = 1; i <= N; ++i) {
      if (i == k) continue;
      cld d = period_derivative(c, i, j, cycle, k, h, tol);
      cld rhs = -rate * (b[static_cast<std::size_t>(i - 1)] - b[static_cast<std::size_t>(k - 1)]) /
                (to_cld(c.a[static_cast<std::size_t>(i - 1)]) - to_cld(c.a[static_cast<std::size_t>(k - 1)]));
      worst = std::max(worst, std::abs(d - rhs));
    }
  return worst;
}

std::string period_matrix_csv(const PeriodMatrix& B) {
  std::ostringstream os;
  os.precision(17);
  os << "i";
  for (const auto& l : B.labels) os << ",\"" << l << " re\",\"" << l << " im\"";
  os << "\n";
  for (int i = 0; i < B.N; ++i) {
    os << i + 1;
    for (const auto& v : B.entry[static_cast<std::size_t>(i)]) os << "," << static_cast<double>(v.real()) << "," << static_cast<double>(v.imag());
    os << "\n";
  }
  return os.str();
}

std::string continuation_csv(const std::vector<PathSample>& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "z_re,z_im,w_re,w_im\n";
  for (const auto& s : trace)
    os << static_cast<double>(s.z.real()) << "," << static_cast<double>(s.z.imag()) << "," << static_cast<double>(s.w.real())
       << "," << static_cast<double>(s.w.imag()) << "\n";
  return os.str();
}

nlohmann::json to_json(const PeriodMatrix& B) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : B.entry) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : r) row.push_back({static_cast<double>(v.real()), static_cast<double>(v.imag())});
    rows.push_back(row);
  }
  return {{"kind", "period_matrix"}, {"N", B.N}, {"j", B.j}, {"cycles", B.labels}, {"entries", rows}};
}

}  // namespace isolab
