#pragma once

namespace gaussweyl {

/// Caps OpenMP parallelism at WEYL_THREADS when that variable is set.
/// Returns the thread count in effect. Throws DomainError when the variable
/// is not a positive integer.
int configure_threads_from_env();

}  // namespace gaussweyl
