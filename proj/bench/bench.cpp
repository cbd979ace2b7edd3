// Serial reference vs OpenMP kernels: Schlesinger residual batches, period matrices, Garnier sweeps.
// Usage: isolab_bench [--quick] [--repeat N]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "isolab/garnier.hpp"
#include "isolab/periods.hpp"
#include "isolab/schlesinger.hpp"

using namespace isolab;

namespace {

double seconds(const std::function<void()>& f, int repeat) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, const std::string& size, double serial, double parallel, bool same) {
  std::printf("%-22s %-28s %10.4f %10.4f %7.2fx  %s\n", kernel, size.c_str(), serial, parallel, serial / parallel,
              same ? "match" : "MISMATCH");
}

bool same_report(const ResidualReport& a, const ResidualReport& b) {
  if (a.off_diagonal.size() != b.off_diagonal.size() || a.diagonal.size() != b.diagonal.size()) return false;
  for (std::size_t t = 0; t < a.off_diagonal.size(); ++t)
    if (!(a.off_diagonal[t].value == b.off_diagonal[t].value)) return false;
  for (std::size_t t = 0; t < a.diagonal.size(); ++t)
    if (!(a.diagonal[t].value == b.diagonal[t].value)) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  int repeat = 3;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "--quick")) quick = true;
    else if (!std::strcmp(argv[k], "--repeat") && k + 1 < argc) repeat = std::max(1, std::atoi(argv[++k]));
    else {
      std::fprintf(stderr, "usage: %s [--quick] [--repeat N]\n", argv[0]);
      return 2;
    }
  }
  if (quick) repeat = 1;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %-28s %10s %10s %8s  %s\n", "kernel", "size", "serial s", "openmp s", "speedup", "result");
  bool ok = true;

  {
    auto sol = quick ? build_polynomial_solution(3, 4, 2, 1, {}) : build_rational_solution(4, 5, 2, -1, {}, 1);
    ResidualReport a, b;
    double ts = seconds([&] { a = schlesinger_residual_serial(sol); }, repeat);
    double tp = seconds([&] { b = schlesinger_residual(sol); }, repeat);
    bool same = same_report(a, b);
    ok = ok && same;
    row("schlesinger_residual", sol.family + " p=" + std::to_string(sol.p) + " N=" + std::to_string(sol.N), ts, tp, same);
  }
  {
    NumericCurve c{3, 1, quick ? std::vector<cplx>{0, 1, cplx(2, 1)} : std::vector<cplx>{0, 1, cplx(2, 1), cplx(-1, 0.5), cplx(0.3, -1.2), cplx(-1.5, -0.4)}};
    auto cycles = build_cycle_basis(c);
    PeriodMatrix a, b;
    double ts = seconds([&] { a = period_matrix_serial(c, 1, cycles); }, repeat);
    double tp = seconds([&] { b = period_matrix(c, 1, cycles); }, repeat);
    bool same = a.entry == b.entry;
    ok = ok && same;
    row("period_matrix", "m=3 N=" + std::to_string(c.N()) + " L=" + std::to_string(a.L()), ts, tp, same);
  }
  {
    auto sol = thm10_solution(2, 4, 3);
    std::vector<std::vector<cld>> pts{{2.0L, 3.5L}, {-0.7L, 2.3L}, {1.7L, 6.1L}};
    if (!quick)
      for (int k = 0; k < 13; ++k) pts.push_back({cld(0.37L * k - 2, 0.11L * k), cld(3 + 0.29L * k, -0.07L * k)});
    auto eps = all_sign_vectors(2);
    std::vector<GarnierResidual> a, b;
    double ts = seconds([&] { a = garnier_sweep_serial(sol, pts, eps); }, repeat);
    double tp = seconds([&] { b = garnier_sweep(sol, pts, eps); }, repeat);
    bool same = a.size() == b.size();
    for (std::size_t t = 0; same && t < a.size(); ++t) same = a[t].max_abs == b[t].max_abs;
    ok = ok && same;
    row("garnier_sweep", std::to_string(pts.size()) + " points x 16 signs", ts, tp, same);
  }
  return ok ? 0 : 1;
}
