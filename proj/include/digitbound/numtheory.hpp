#pragma once

#include <cstdint>
#include <vector>

#include "digitbound/natural.hpp"

namespace digitbound {

// Canonical prime factorization with strictly increasing primes. Factored
// values stay within the trial-division operating range (<= 10^12), so word
// sized primes suffice; value() reassembles the full product exactly.
struct Factorization {
  struct Term {
    std::uint64_t prime;
    std::uint32_t exponent;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;

  Natural value() const;
  bool operator==(const Factorization&) const = default;
};

// All primes <= n in increasing order. Backed by a grow-on-demand cached
// sieve; each call returns an independent copy of the prefix.
std::vector<std::uint64_t> primes_upto(std::uint64_t n);

bool is_prime(std::uint64_t n);

// Trial division by sieved primes. Rejects 0; refuses values beyond 10^12,
// the documented operating range (nothing in the artifact factors blind
// beyond it).
Factorization factorize(std::uint64_t m);
Factorization factorize(const Natural& m);

Natural totient(const Factorization& f);
Natural totient(const Natural& m);
std::uint64_t totient(std::uint64_t m);

// 0 when d has a square factor, else (-1)^(number of prime factors).
int mobius(std::uint64_t d);
int mobius(const Natural& d);

// All divisors of m in increasing order. Same operating range as factorize.
std::vector<std::uint64_t> divisors(std::uint64_t m);

// All numbers of the form 2^a 3^b that are <= limit, increasing. Rejects 0.
std::vector<Natural> smooth_3_upto(const Natural& limit);

// Exact maximum m with totient(m) <= x, by exhaustive scan of m <= max(x^2, 6).
// The bound is sound because phi(n) >= sqrt(n) once n >= 7. Quadratic scan,
// so intended for x up to ~10^4; refuses x > 10^5 outright.
Natural max_totient_preimage_oracle(std::uint64_t x);

}  // namespace digitbound
