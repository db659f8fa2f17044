#include "nsh/rng.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace nsh {

SpectralField random_field(std::shared_ptr<const Basis> basis, Rng& rng,
                           double mu0, double width) {
  std::vector<double> c(basis->n_coeffs());
  const auto& modes = basis->modes();
  for (size_t j = 0; j < c.size(); ++j) {
    double g = rng.gaussian();
    if (width > 0.0) {
      const double d = (modes[j].mu - mu0) / width;
      g *= std::exp(-d * d);
    }
    c[j] = g;
  }
  return SpectralField(std::move(basis), std::move(c));
}

int worker_threads() {
  if (const char* env = std::getenv("NSH_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for_index(int count, const std::function<void(int)>& fn) {
  const int nt = std::min(worker_threads(), count);
  if (nt <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace nsh
