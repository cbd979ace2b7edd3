#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/ratfunc.hpp"
#include "isolab/roots.hpp"

namespace isolab {

// Deformation variables are "a1".."aM"; the last two poles are fixed at 0 and 1.
struct GarnierSpec {
  int M = 2;
  std::vector<Rational> theta;  // theta_1 .. theta_(M+2)
  Rational theta_inf;
  std::vector<int> eps;
};

struct GarnierAlgebraicSolution {
  std::string theorem;  // "10" or "11"
  int M = 2;
  int m = 1;
  int n = 1;
  std::vector<Rational> constants;  // c_1..c_M for the n < 0 family
  std::vector<RatFunc> b;           // b_1 .. b_(M+2)
  std::vector<RatFunc> pm_coeffs;   // P_M(z, a) in z, lowest power first
  std::vector<Rational> betas;      // beta_1 .. beta_(M+2)
  Rational beta_inf;
};

std::string garnier_var(int i);

// Coefficients of prod (z - a_i) sum b_i/(z - a_i) over the M + 2 poles
// (a_1, .., a_M, tail[0], tail[1]). Throws PreconditionError unless sum b_i = 0.
std::vector<RatFunc> pm_polynomial(const std::vector<RatFunc>& b,
                                   const std::vector<RatFunc>& tail = {RatFunc(0), RatFunc(1)});

// Polynomial entries for n > 0, m > 1, gcd(n, m) = 1, m | M + 2; beta_i = n/2m.
GarnierAlgebraicSolution thm10_solution(int M, int m, int n);

// b^(nu)_i: residue at the nu-th pole (nu = 1..M+1, pole M+1 is z = 0) for m = 1, n < 0.
std::vector<RatFunc> thm11_basis_vector(int M, int n, int nu);
// sum_j c_j b^(j) + b^(M+1), beta_i = n/2.
GarnierAlgebraicSolution thm11_family(int M, int n, const std::vector<Rational>& c);

GarnierSpec theta_from_eps(const std::vector<Rational>& betas, const std::vector<int>& eps, const Rational& beta_inf);

struct URoots {
  std::vector<cld> roots;  // distinct roots sorted by (real, imag)
  std::vector<int> multiplicity;
  int degree = 0;           // degree actually present at this point
  bool degree_drop = false; // leading coefficient vanished
};
// Leading coefficient counts as zero below lead_tol times the largest coefficient.
URoots u_roots(const std::vector<RatFunc>& pm_coeffs, const std::vector<cld>& a, long double lead_tol = 1e-12L);
URoots u_roots_numeric(const std::vector<cld>& coeffs, long double lead_tol = 1e-12L);

// v_j = sum_i (1 + eps_i) beta_i / (u_j - a_i); throws DomainError when some u_j hits a pole.
std::vector<cld> v_momenta(const std::vector<cld>& u, const std::vector<Rational>& betas, const std::vector<int>& eps,
                           const std::vector<cld>& a);

// Hamiltonian H_k (k = 1, 2) of the two-variable system at (a, u, v).
cld garnier_hamiltonian_m2(int k, const std::vector<cld>& a, const std::vector<cld>& u, const std::vector<cld>& v,
                           const GarnierSpec& spec);

struct GarnierResidual {
  std::vector<cld> a;
  std::vector<int> eps;
  // du_j/da_k - dH_k/dv_j and dv_j/da_k + dH_k/du_j, indexed [k][j].
  long double du[2][2]{};
  long double dv[2][2]{};
  long double max_abs = 0;
};

// Central differences of u, v in a with nearest-root matching between stencil points;
// H derivatives in (u, v) are exact (forward-mode). Throws PreconditionError unless M = 2,
// NumericError on a degree drop or a root collision within the stencil.
GarnierResidual garnier_residual_m2(const GarnierAlgebraicSolution& sol, const std::vector<cld>& a,
                                    const std::vector<int>& eps, long double h = 1e-5L);

// All 2^(M+2) sign vectors in lexicographic order with +1 first.
std::vector<std::vector<int>> all_sign_vectors(int M);

// Residuals for every (a-point, eps) pair, in point-major order. OpenMP and serial reference.
std::vector<GarnierResidual> garnier_sweep(const GarnierAlgebraicSolution& sol, const std::vector<std::vector<cld>>& points,
                                           const std::vector<std::vector<int>>& eps_list, long double h = 1e-5L);
std::vector<GarnierResidual> garnier_sweep_serial(const GarnierAlgebraicSolution& sol,
                                                  const std::vector<std::vector<cld>>& points,
                                                  const std::vector<std::vector<int>>& eps_list, long double h = 1e-5L);

// Roots along the straight segment from a0 to a1 (steps + 1 points), each matched to the
// nearest root of the previous point.
std::vector<std::vector<cld>> track_roots(const GarnierAlgebraicSolution& sol, const std::vector<cld>& a0,
                                          const std::vector<cld>& a1, int steps);

// Reorders candidate roots to minimize the total distance to the reference ones.
std::vector<cld> match_roots(const std::vector<cld>& reference, std::vector<cld> candidate);

nlohmann::json to_json(const GarnierSpec& s);
nlohmann::json to_json(const GarnierAlgebraicSolution& s);
nlohmann::json to_json(const GarnierResidual& r);
// Inverse of to_json for solutions. P_M is recomputed from b, and left empty when sum b_i != 0.
// ParseError on a malformed document.
GarnierAlgebraicSolution garnier_from_json(const nlohmann::json& j);

}  // namespace isolab
