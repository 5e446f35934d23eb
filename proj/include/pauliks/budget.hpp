#pragma once

#include <chrono>
#include <cstdint>

namespace pks {

// Resource limits for exhaustive searches. Zero means unlimited.
struct Budget {
  uint64_t max_nodes = 0;
  double max_seconds = 0.0;
};

class BudgetTracker {
 public:
  explicit BudgetTracker(Budget b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  // Counts one search node; returns false once the budget is exhausted.
  bool tick() {
    ++nodes_;
    if (exhausted_) return false;
    if (budget_.max_nodes && nodes_ > budget_.max_nodes) exhausted_ = true;
    if (budget_.max_seconds > 0 && (nodes_ & 0x3FF) == 0 && elapsed() > budget_.max_seconds) exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  uint64_t nodes() const { return nodes_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace pks
