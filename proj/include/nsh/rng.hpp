#pragma once

#include <cstdint>
#include <random>

#include "nsh/field.hpp"

namespace nsh {

// Deterministic gaussian source: mt19937_64 + Box-Muller, independent of
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return (eng_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Gaussian coefficients, optionally shaped by a spectral window centered at
// mu = mu0 with width w (w <= 0: flat spectrum).
SpectralField random_field(std::shared_ptr<const Basis> basis, Rng& rng,
                           double mu0 = -1.0, double width = -1.0);

// Number of worker threads: NSH_THREADS env var, else hardware concurrency.
int worker_threads();

// Runs fn(i) for i in [0, count); deterministic per-index work, any schedule.
void parallel_for_index(int count, const std::function<void(int)>& fn);

}  // namespace nsh
