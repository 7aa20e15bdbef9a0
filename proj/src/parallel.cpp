#include "pcfilm/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pcfilm::parallel {

int resolve_worker_count(int requested) {
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    try {
      const int k = std::stoi(env);
      if (k > 0) return k;
    } catch (const std::exception&) {
      // fall through to the configured value
    }
  }
  if (requested > 0) return requested;
  return omp_get_max_threads();
}

int set_worker_count(int requested) {
  const int k = resolve_worker_count(requested);
  omp_set_num_threads(k);
  return k;
}

int worker_count() { return omp_get_max_threads(); }

double tree_reduce(std::span<double> partials) {
  std::size_t count = partials.size();
  if (count == 0) return 0.0;
  while (count > 1) {
    const std::size_t half = count / 2;
    for (std::size_t i = 0; i < half; ++i) partials[i] = partials[2 * i] + partials[2 * i + 1];
    if (count % 2 == 1) {
      partials[half] = partials[count - 1];
      count = half + 1;
    } else {
      count = half;
    }
  }
  return partials[0];
}

}  // namespace pcfilm::parallel
