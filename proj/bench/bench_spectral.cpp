// Serial reference vs parallel kernels on the torus model.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "bsloc/cli.hpp"
#include "bsloc/spectral.hpp"

using namespace bsloc;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_limit();
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads %d, torus N=%d, t=10\n", omp_get_max_threads(), n);
  std::printf("%8s %14s %14s %14s %14s %14s\n", "n_x", "apply serial", "apply omp", "dense", "lapack serial",
              "lapack omp");
  for (int per : {64, 128, 256, 512}) {
    GridSpec g;
    g.n_x = per * n;
    DiscretizedOperator op = assemble(TorusModel{n, 10.0}, g);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(op.even_dim())), w;
    double as = best_of(20, [&] { apply_even_serial(op, v, w); });
    double ap = best_of(20, [&] { apply_even(op, v, w); });
    double dn = per <= 64 ? best_of(1, [&] { solve_spectrum_serial(op, 21, Backend::Dense); }) : -1.0;
    double ls = best_of(3, [&] { solve_spectrum_serial(op, 21, Backend::Lapack); });
    double lp = best_of(3, [&] { solve_spectrum(op, 21, Backend::Lapack); });
    if (dn < 0)
      std::printf("%8d %14.6f %14.6f %14s %14.6f %14.6f\n", g.n_x, as, ap, "-", ls, lp);
    else
      std::printf("%8d %14.6f %14.6f %14.6f %14.6f %14.6f\n", g.n_x, as, ap, dn, ls, lp);
  }
  return 0;
}
