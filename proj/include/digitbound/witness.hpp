#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digitbound/natural.hpp"

namespace digitbound {

enum class WitnessMode { pow2, smooth };

// A totient-preimage witness: m with phi(m) <= x, built large on purpose.
// odd_part_primes lists the distinct odd primes dividing m, always the
// consecutive odd primes 3, 5, ..., p_s. In pow2 mode the decomposition is
// exact: m = 2^t * (product of odd_part_primes), odd part squarefree. In
// smooth mode the multiplier may fold in an extra power of 3, so t and the
// odd primes describe m's support rather than a full factorization.
struct Witness {
  Rational x;
  std::uint64_t prime_count = 0;                // s: primes 2 = p_1 < ... < p_s used
  std::uint64_t two_exponent = 0;               // t: exact power of 2 in m
  std::vector<std::uint64_t> odd_part_primes;   // p_2 < ... < p_s
  Natural m;
  Natural phi_m;
  Natural multiplier;                           // the a_t the construction chose
  std::vector<std::string> trace;
};

// Canonical constructions. Both pick the greatest s with
// ((p_1-1)...(p_s-1))^2 <= x, then the greatest admissible multiplier:
// a power of 2 in pow2 mode, a 3-smooth number in smooth mode, with
// a_t * (p_1-1)...(p_s-1) <= x. Every comparison is exact; phi(m) <= x is
// re-verified on the finished witness. Rejects x < 1.
Witness construct_witness_pow2(const Rational& x);
Witness construct_witness_smooth(const Rational& x);
Witness construct_witness(const Rational& x, WitnessMode mode);

// Ground-truth alternative for comparison tables: the exact maximum m with
// phi(m) <= floor(x), from the exhaustive oracle. Refuses x > 200; the scan
// is quadratic and the certified constructions cover everything larger.
Witness construct_witness_exhaustive(const Rational& x);

// Diagnostic only: m / (e^gamma * x * log log x) for the chosen mode.
// Rejects x < 16, where log log x is not positive.
double witness_ratio(const Rational& x, WitnessMode mode);

inline constexpr double kExpGamma = 1.781072417990198;  // e^gamma, 15 digits

}  // namespace digitbound
