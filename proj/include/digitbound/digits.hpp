#pragma once

#include <cstdint>
#include <vector>

#include "digitbound/deadline.hpp"
#include "digitbound/natural.hpp"

namespace digitbound {

// Little-endian base-b expansion: digits[i] is the coefficient of base^i.
// Zero is the empty sequence; the top digit is never zero otherwise.
struct DigitVector {
  std::uint64_t base = 10;
  std::vector<std::uint64_t> digits;

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
};

// Base-b digits of m. Power-of-two bases read bit windows directly; other
// bases use digit-at-a-time division below the size threshold and recursive
// divide-and-conquer splitting at precomputed base^(2^i) towers above it.
DigitVector to_digits(const Natural& m, std::uint64_t base,
                      Deadline deadline = Deadline::none());

// Reference conversion: one division by `base` per digit, whatever the size.
DigitVector to_digits_schoolbook(const Natural& m, std::uint64_t base,
                                 Deadline deadline = Deadline::none());

// Exact reconstruction sum(digits[i] * base^i); validates every digit < base.
Natural from_digits(const DigitVector& dv);

// Digit sum s_b(m). For bases 2^w the sum is accumulated from bit windows
// without materializing the digit vector.
Natural digit_sum(const Natural& m, std::uint64_t base);

// Operands at or above this many 64-bit limbs take the divide-and-conquer
// conversion path.
inline constexpr std::size_t kRadixSplitThresholdLimbs = 512;

}  // namespace digitbound
