#include "gaussweyl/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

int configure_threads_from_env() {
  const char* raw = std::getenv("WEYL_THREADS");
  if (raw && *raw) {
    int n = 0;
    const char* end = raw + std::strlen(raw);
    const auto res = std::from_chars(raw, end, n);
    if (res.ec != std::errc() || res.ptr != end || n < 1) {
      throw DomainError(std::string("WEYL_THREADS must be a positive integer, got '") + raw + "'");
    }
    omp_set_num_threads(n);
  }
  return omp_get_max_threads();
}

}  // namespace gaussweyl
