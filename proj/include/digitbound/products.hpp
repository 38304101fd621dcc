#pragma once

#include <cstdint>
#include <span>

#include "digitbound/deadline.hpp"
#include "digitbound/natural.hpp"

namespace digitbound {

// Balanced binary product of the given parts; empty span yields 1. Keeps
// operand sizes matched so subquadratic multiplication does the heavy work.
Natural balanced_product(std::span<const Natural> parts,
                         Deadline deadline = Deadline::none());

// Exact n! by binary splitting: runs of 64 consecutive integers are folded
// sequentially into leaves, then combined through the balanced tree.
Natural factorial(std::uint64_t n, Deadline deadline = Deadline::none());

// Left-to-right accumulation baseline. Quadratic in output size; kept as the
// comparison point for the tree and as an independent route in tests.
Natural factorial_sequential(std::uint64_t n, Deadline deadline = Deadline::none());

// Exact lcm(1..n) as the product over primes p <= n of the largest power of
// p not exceeding n. Exponents come from exact integer comparisons. n >= 1.
Natural lcm_upto(std::uint64_t n, Deadline deadline = Deadline::none());

// Definitional route: fold lcm(a, k) = a * k / gcd(a, k) over k = 1..n.
// Quadratic; intended for n up to ~10^4.
Natural lcm_upto_oracle(std::uint64_t n, Deadline deadline = Deadline::none());

inline constexpr std::uint64_t kFactorialLeafRun = 64;

}  // namespace digitbound
