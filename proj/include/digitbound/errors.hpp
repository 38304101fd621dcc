#pragma once

#include <stdexcept>
#include <string>

namespace digitbound {

// A typed refusal: the request is well-formed but violates a resource guard
// or an admissibility bound (e.g. n below the minimal verifiable value).
// CLI maps this to exit code 1, distinct from usage errors (exit 2).
class RefusalError : public std::runtime_error {
 public:
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

// Cooperative deadline expiry inside a long-running kernel.
class Timeout : public std::runtime_error {
 public:
  explicit Timeout(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace digitbound
