// Prints the diagonal and spectral entropies next to the area-law bounds for
// a handful of lambda values.

#include <cstdio>

#include "entlab/entropy.hpp"

int main() {
  std::printf("%8s %14s %14s %14s %14s %14s\n", "lambda", "S_diag_A", "S_diag_B", "S_spec", "subleading",
              "leading");
  for (double lambda : {5.0, 10.0, 20.0, 50.0, 100.0}) {
    const entlab::ModelParams params(lambda);
    const auto norm = entlab::normalization(params, entlab::Mode::exact);
    const auto sa = entlab::diagonal_entropy(entlab::Region::A, params, norm, entlab::Mode::exact);
    const auto sb = entlab::diagonal_entropy(entlab::Region::B, params, norm, entlab::Mode::exact);
    const auto spec = entlab::spectral_entropy(entlab::Region::A, params, norm, 120);
    std::printf("%8.1f %14.6e %14.6e %14.6e %14.6e %14.6e\n", lambda, sa.value, sb.value, spec.entropy,
                entlab::subleading_bound(lambda), entlab::leading_bound(lambda));
  }
  return 0;
}
