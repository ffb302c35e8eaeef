#pragma once

#include <exception>
#include <mutex>

namespace gaussweyl::detail {

// Carries the first exception out of an OpenMP loop body, where letting it
// escape would terminate the process.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& body) {
    try {
      body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_) first_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr first_;
};

}  // namespace gaussweyl::detail
