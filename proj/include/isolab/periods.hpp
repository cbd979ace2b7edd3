#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/curve.hpp"
#include "isolab/roots.hpp"

namespace isolab {

// Straight segment z0 -> z1, or the arc center + radius e^(i theta), theta0 -> theta1
// (|theta1 - theta0| may exceed 2 pi for repeated turns).
struct Segment {
  enum class Kind { line, arc } kind = Kind::line;
  cld z0, z1;
  cld center;
  long double radius = 0, theta0 = 0, theta1 = 0;

  static Segment line(cld a, cld b);
  static Segment arc(cld center, long double radius, long double theta0, long double theta1);
  cld point(long double t) const;  // t in [0, 1]
  cld velocity(long double t) const;
  cld offset(long double t0, long double u) const;  // point(t0 + u) - point(t0), accurate for small u
  cld start() const { return point(0); }
  cld end() const { return point(1); }
  long double length() const;
};

// Sheet b at a point z means w = e^(2 pi i b/m) prod_i (z - a_i)^(1/m), principal roots.
struct PathSpec {
  std::vector<Segment> segments;
  int start_branch = 0;
  std::string label;

  cld start() const { return segments.front().start(); }
  cld end() const { return segments.back().end(); }
  bool closed() const;
};

struct PathSample {
  cld z, w;
};

cld sheet_value(const NumericCurve& c, cld z, int branch);
long double min_branch_distance(const NumericCurve& c, cld z);
long double branch_separation(const NumericCurve& c);

// w along the path by nearest m-th root selection at `steps` points per segment,
// halving a step while the two closest candidate roots are within a factor 2.
// PreconditionError when the path comes closer than `clearance` to a branch point,
// NumericError when halving does not resolve an ambiguity.
std::vector<PathSample> continue_w(const NumericCurve& c, const PathSpec& path, int steps, long double clearance = -1);

// w at the end of the path divided by w at the start (analytic continuation).
cld monodromy(const NumericCurve& c, const PathSpec& path);

// Small loop around a_i (counterclockwise) then around a_k (clockwise), both reached by
// straight spokes from a common base point; closed on the curve for every start sheet.
PathSpec figure_eight(const NumericCurve& c, int i, int k, int sheet);
// m counterclockwise turns around a_nu: a small loop around the point (a_nu, 0).
PathSpec puncture_loop(const NumericCurve& c, int nu);
// m1 clockwise turns of the radius 10 max|a_i| + 10 circle on the sheet of the k-th point at
// infinity: a small positive loop around that point.
PathSpec infinity_loop(const NumericCurve& c, int k);
// A small circle with no branch point inside or on it.
PathSpec empty_loop(const NumericCurve& c);

// Which homology group the cycles are taken from: the compact curve (n > 0, gcd(m, N) = 1),
// the curve minus its points at infinity (n > 0, gcd(m, N) > 1), or the curve minus the
// ramification points over a_1..a_N (n < 0).
enum class CycleCase { compact, punctured_infinity, punctured_branch };
CycleCase cycle_case(int m, int N, int n);
std::string to_string(CycleCase c);

struct CycleOptions {
  // Also include figure-eights starting on the last sheet (dependent on the others).
  bool all_sheets = false;
  // Append the s large circles around the points at infinity (dependent on the figure-eights).
  bool infinity_loops = false;
};
// n > 0: figure-eights around (a_i, a_(i+1)) on sheets 0..m-2, (m-1)(N-1) cycles.
// n < 0: the same plus puncture loops around a_1..a_(N-s), 2g + N - 1 cycles.
// Throws PreconditionError when the request's case does not match (m, N, n).
std::vector<PathSpec> build_cycle_basis(const NumericCurve& c, CycleCase expected, const CycleOptions& opt = {});
std::vector<PathSpec> build_cycle_basis(const NumericCurve& c, const CycleOptions& opt = {});

// Integral of w^(jn) dz/(z - a_i) along the path, relative tolerance tol.
cld integrate_omega(const NumericCurve& c, int i, int j, const PathSpec& path, long double tol = 1e-10L);
// Same with an explicit value of w at the start of the path.
cld integrate_omega_from(const NumericCurve& c, int i, int j, const PathSpec& path, cld w0, long double tol = 1e-10L);

struct PeriodMatrix {
  int N = 0;
  int j = 1;
  std::vector<std::string> labels;      // one per column
  std::vector<std::vector<cld>> entry;  // entry[i][k], i < N, k < L
  int L() const { return static_cast<int>(labels.size()); }
};

// OpenMP over (i, cycle) pairs; the serial version is the reference.
PeriodMatrix period_matrix(const NumericCurve& c, int j, const std::vector<PathSpec>& cycles, long double tol = 1e-10L);
PeriodMatrix period_matrix_serial(const NumericCurve& c, int j, const std::vector<PathSpec>& cycles,
                                  long double tol = 1e-10L);

std::vector<long double> singular_values(const std::vector<std::vector<cld>>& B);
// Singular values above rank_tol times the largest.
int rank_check(const PeriodMatrix& B, long double rank_tol = 1e-8L);
int rank_check(const std::vector<std::vector<cld>>& B, long double rank_tol = 1e-8L);

// 2 pi i times the residue from the closed-form sums, constant and root-of-unity tag.
cld exact_loop_period(const NumericCurve& c, int i, int j, const Pole& pole);

// Fourth-order central difference of the period over a_k, the cycle fixed in the z-plane.
cld period_derivative(const NumericCurve& c, int i, int j, const PathSpec& cycle, int k, long double h,
                      long double tol = 1e-12L);
// max over i != k of |d b_i/d a_k + (j n/m)(b_i - b_k)/(a_i - a_k)| with central differences.
long double isomonodromy_fd_check(const NumericCurve& c, int j, const PathSpec& cycle, long double h = 1e-4L,
                                  long double tol = 1e-12L);

std::string period_matrix_csv(const PeriodMatrix& B);
std::string continuation_csv(const std::vector<PathSample>& trace);
nlohmann::json to_json(const PeriodMatrix& B);

}  // namespace isolab
