#include "digitbound/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace digitbound {

namespace {

constexpr std::uint64_t kFactorizeLimit = 1'000'000'000'000ULL;  // 10^12
constexpr std::uint64_t kOracleLimit = 100'000;

// Shared immutable snapshots keep callers safe across cache regrowth.
struct PrimeCache {
  std::mutex mu;
  std::uint64_t sieved_upto = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> primes =
      std::make_shared<const std::vector<std::uint64_t>>();
};

PrimeCache& prime_cache() {
  static PrimeCache cache;
  return cache;
}

std::vector<std::uint64_t> sieve(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

// Snapshot covering all primes <= n; grows the cache by doubling.
std::shared_ptr<const std::vector<std::uint64_t>> primes_snapshot(std::uint64_t n) {
  PrimeCache& cache = prime_cache();
  std::scoped_lock lock(cache.mu);
  if (cache.sieved_upto < n) {
    const std::uint64_t target = std::max<std::uint64_t>(n, std::max<std::uint64_t>(2 * cache.sieved_upto, 1024));
    cache.primes = std::make_shared<const std::vector<std::uint64_t>>(sieve(target));
    cache.sieved_upto = target;
  }
  return cache.primes;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

}  // namespace

Natural Factorization::value() const {
  Natural acc(1);
  for (const Term& t : terms) acc *= pow(Natural(t.prime), t.exponent);
  return acc;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  if (n < 2) return {};
  auto snap = primes_snapshot(n);
  auto end = std::upper_bound(snap->begin(), snap->end(), n);
  return std::vector<std::uint64_t>(snap->begin(), end);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const std::uint64_t root = isqrt_u64(n);
  auto snap = primes_snapshot(root);
  for (std::uint64_t p : *snap) {
    if (p > root) break;
    if (n % p == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("factorize: m must be >= 1");
  if (m > kFactorizeLimit)
    throw std::domain_error("factorize: beyond the 10^12 trial-division range");
  Factorization f;
  const std::uint64_t root = isqrt_u64(m);
  auto snap = primes_snapshot(root);
  for (std::uint64_t p : *snap) {
    if (p > m / p) break;
    if (m % p != 0) continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.terms.push_back({p, e});
  }
  if (m > 1) f.terms.push_back({m, 1});
  return f;
}

Factorization factorize(const Natural& m) {
  if (!m.fits_u64() || m.to_u64() > kFactorizeLimit)
    throw std::domain_error("factorize: beyond the 10^12 trial-division range");
  return factorize(m.to_u64());
}

Natural totient(const Factorization& f) {
  Natural acc(1);
  for (const Factorization::Term& t : f.terms)
    acc *= pow(Natural(t.prime), t.exponent - 1) * Natural(t.prime - 1);
  return acc;
}

Natural totient(const Natural& m) { return totient(factorize(m)); }

std::uint64_t totient(std::uint64_t m) {
  const Natural t = totient(factorize(m));
  return t.to_u64();  // phi(m) <= m, so it fits whenever m does
}

int mobius(std::uint64_t d) {
  const Factorization f = factorize(d);
  for (const Factorization::Term& t : f.terms)
    if (t.exponent > 1) return 0;
  return f.terms.size() % 2 == 0 ? 1 : -1;
}

int mobius(const Natural& d) {
  if (!d.fits_u64())
    throw std::domain_error("mobius: beyond the 10^12 trial-division range");
  return mobius(d.to_u64());
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
  const Factorization f = factorize(m);
  std::vector<std::uint64_t> out{1};
  for (const Factorization::Term& t : f.terms) {
    const std::size_t count = out.size();
    std::uint64_t pe = 1;
    for (std::uint32_t e = 1; e <= t.exponent; ++e) {
      pe *= t.prime;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Natural> smooth_3_upto(const Natural& limit) {
  if (limit.is_zero()) throw std::invalid_argument("smooth_3_upto: limit must be >= 1");
  std::vector<Natural> out;
  for (Natural p3(1); p3 <= limit; p3 *= 3) {
    for (Natural v = p3; v <= limit; v *= 2) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Natural max_totient_preimage_oracle(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("max_totient_preimage_oracle: x must be >= 1");
  if (x > kOracleLimit)
    throw std::domain_error("max_totient_preimage_oracle: quadratic scan refuses x > 10^5");

  const std::uint64_t bound = std::max<std::uint64_t>(x * x, 6);
  auto snap = primes_snapshot(isqrt_u64(bound));

  constexpr std::uint64_t kSegment = 1 << 20;
  std::vector<std::uint64_t> phi(kSegment), rem(kSegment);
  std::uint64_t best = 0;

  for (std::uint64_t lo = 1; lo <= bound; lo += kSegment) {
    const std::uint64_t hi = std::min(bound + 1, lo + kSegment);  // [lo, hi)
    const std::uint64_t len = hi - lo;
    for (std::uint64_t i = 0; i < len; ++i) {
      phi[i] = 1;
      rem[i] = lo + i;
    }
    for (std::uint64_t p : *snap) {
      if (p * p >= hi) break;
      for (std::uint64_t v = ((lo + p - 1) / p) * p; v < hi; v += p) {
        std::uint64_t& r = rem[v - lo];
        std::uint64_t& f = phi[v - lo];
        f *= p - 1;
        r /= p;
        while (r % p == 0) {
          f *= p;
          r /= p;
        }
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t value = phi[i] * (rem[i] > 1 ? rem[i] - 1 : 1);
      if (value <= x) best = lo + i;
    }
  }
  return Natural(best);
}

}  // namespace digitbound
