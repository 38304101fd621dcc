#pragma once

#include <cstdint>
#include <vector>

#include "digitbound/natural.hpp"

namespace digitbound {

// Dense polynomial with exact signed coefficients, ascending degree. The
// coefficients of cyclotomic polynomials outgrow machine words for large
// composite indices, so nothing here is a word type.
struct CyclotomicPoly {
  std::uint64_t index = 0;
  std::vector<Integer> coefficients;

  std::size_t degree() const { return coefficients.size() - 1; }
};

// Exact coefficients of the index-n cyclotomic polynomial, by remainder-free
// division of x^n - 1 by the polynomials at the proper divisors of n
// (memoized recursion). Throws logic_error if any division leaves a
// remainder, since that would mean the table itself is corrupt.
const CyclotomicPoly& cyclotomic_poly(std::uint64_t n);

// Exact value of the index-n polynomial at a. Picks between the two routes
// below; both stay public so tests can demand agreement. Rejects n = 1 with
// a <= 1, where the value would not be a positive integer.
Natural cyclotomic_value(std::uint64_t n, const Natural& a);

// Horner evaluation of cyclotomic_poly(n).
Natural cyclotomic_value_by_poly(std::uint64_t n, const Natural& a);

// Product over divisors d of n of (a^d - 1)^mobius(n/d), with exact
// division. Requires a >= 2 so every factor is a positive integer.
Natural cyclotomic_value_by_mobius(std::uint64_t n, const Natural& a);

// Below this index the polynomial is small enough that Horner evaluation
// beats assembling the Moebius product's large powers.
inline constexpr std::uint64_t kValueRouteCrossover = 64;

struct CoprimalityCheck {
  Natural gcd;
  bool ratio_is_prime_power = false;
};

// gcd of the two cyclotomic values at a, together with whether m/n reduces
// to a prime power p^k (k possibly negative, by symmetry). The interesting
// direction: when the ratio is not a prime power, the gcd must be 1.
CoprimalityCheck coprimality_check(std::uint64_t m, std::uint64_t n, const Natural& a);

}  // namespace digitbound
