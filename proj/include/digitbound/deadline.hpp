#pragma once

#include <chrono>

namespace digitbound {

// Cooperative wall-clock deadline passed into long-running kernels.
// Default-constructed deadline never expires.
class Deadline {
 public:
  using clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline none() { return Deadline{}; }
  static Deadline after(std::chrono::nanoseconds budget) {
    Deadline d;
    d.at_ = clock::now() + budget;
    d.armed_ = true;
    return d;
  }

  bool expired() const { return armed_ && clock::now() >= at_; }

 private:
  clock::time_point at_{};
  bool armed_ = false;
};

}  // namespace digitbound
