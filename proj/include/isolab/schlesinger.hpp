#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/ratfunc.hpp"

namespace isolab {

// Diagonal exponents beta_i^k (1-based i <= N, k <= p) with a common step
// beta_i^k - beta_i^(k+1) = n/m.
struct ExponentGrid {
  int p = 2;
  int N = 3;
  std::vector<std::vector<Rational>> beta;  // beta[i-1][k-1]

  // Centered progression beta_i^k = ((p+1)/2 - k) n/m, the same for every i.
  static ExponentGrid progression(int p, int N, int n, int m);
  const Rational& at(int i, int k) const { return beta[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)]; }
  // Throws unless every row is an arithmetic progression with step n/m, gcd(n, m) = 1.
  void validate(int n, int m) const;
};

struct TriangularSolution {
  int p = 2;
  int N = 3;
  int m = 1;
  int n = 1;
  ExponentGrid diag;
  std::string family;              // "polynomial" or "rational"
  int pole = 1;                    // pole used for the residues
  std::vector<Rational> constants; // c_1 .. c_(p-1), indexed by l-k
  // Upper entries b_i^(kl), k < l, keyed by (i, k, l). Missing keys are zero.
  std::map<std::array<int, 3>, RatFunc> entries;
  // When set, a_nu has been translated to 0: entries depend on a_h - a_nu only and
  // are stored with a_nu = 0 (the variable a_nu does not occur).
  std::optional<int> gauge_pole;

  RatFunc entry(int i, int k, int l) const;
  static std::string var(int h) { return "a" + std::to_string(h); }
  // Undo the translation gauge by a_h -> a_h - a_nu (identity when no gauge).
  TriangularSolution to_full_variables() const;
  // Entry with branch points specialized (unlisted variables stay symbolic). Handles the gauge.
  RatFunc specialized(int i, int k, int l, const std::map<std::string, RatFunc>& values) const;
};

// Closed-form residue sum at infinity: sum over k_1+..+k_N+q = N1 d of
// (-1)^q prod binom(d/s, k_h) a_h^k_h a_i^q with d = j n s / m. Zero unless m1 | j.
RatFunc polynomial_residue_formula(int N, int m, int n, int j, int i);

// Closed-form residue sums at (a_nu, 0) for n < 0, d = j|n|/m; zero unless m | j.
// With gauge = true a_nu is set to 0 and the result is a Laurent polynomial.
RatFunc rational_residue_formula(int N, int m, int n, int j, int i, int nu, bool gauge);

// Entries c_(l-k) times the residue formula at infinity. Empty constants mean all ones.
TriangularSolution build_polynomial_solution(int p, int N, int m, int n, const std::vector<Rational>& constants,
                                             int pole_index = 1);
TriangularSolution build_rational_solution(int p, int N, int m, int n, const std::vector<Rational>& constants,
                                           int nu, bool gauge = true);

struct ResidualEntry {
  int i, j, k, l;
  RatFunc value;
};

struct ResidualReport {
  // dB_i/da_j - [B_i, B_j]/(a_i - a_j), j != i, upper entries.
  std::vector<ResidualEntry> off_diagonal;
  // dB_i/da_i + sum_(j != i) [B_i, B_j]/(a_i - a_j).
  std::vector<ResidualEntry> diagonal;
  // Inhomogeneity components: the part of the commutator coming from k < s < l, over (a_i - a_j).
  std::vector<ResidualEntry> inhomogeneity;

  bool equations_hold() const;
  bool inhomogeneity_vanishes() const;
};

// Parallel over (i, j, k, l) with OpenMP; the serial version is the reference.
ResidualReport schlesinger_residual(const TriangularSolution& sol);
ResidualReport schlesinger_residual_serial(const TriangularSolution& sol);

// sum_i b_i^(kl) for every k < l, in (k, l) lexicographic order.
std::vector<RatFunc> sum_constraint(const TriangularSolution& sol);

// alpha_ij = sum_k beta_i^k beta_j^k.
std::vector<std::vector<Rational>> tau_exponents(const ExponentGrid& grid);

nlohmann::json to_json(const TriangularSolution& sol);
TriangularSolution solution_from_json(const nlohmann::json& j);

}  // namespace isolab
