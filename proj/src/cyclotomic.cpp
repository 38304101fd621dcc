#include "digitbound/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "digitbound/numtheory.hpp"

namespace digitbound {

namespace {

// In-place division by a monic divisor; num becomes the remainder (all
// zeros when the division is exact). Returns the quotient.
std::vector<Integer> divexact_monic(std::vector<Integer>& num,
                                    const std::vector<Integer>& div) {
  const std::size_t dn = num.size() - 1;
  const std::size_t dd = div.size() - 1;
  if (dn < dd) throw std::logic_error("cyclotomic division: degree underflow");
  std::vector<Integer> quot(dn - dd + 1);
  for (std::size_t i = dn - dd + 1; i-- > 0;) {
    Integer lead = num[i + dd];
    if (lead.is_zero()) continue;
    for (std::size_t j = 0; j < dd; ++j) num[i + j].submul(lead, div[j]);
    num[i + dd] = 0;
    quot[i] = std::move(lead);
  }
  for (const Integer& c : num)
    if (!c.is_zero())
      throw std::logic_error("cyclotomic division left a remainder");
  return quot;
}

struct PolyCache {
  std::mutex mu;
  std::map<std::uint64_t, std::unique_ptr<const CyclotomicPoly>> memo;
};

PolyCache& poly_cache() {
  static PolyCache cache;
  return cache;
}

// Caller holds the cache lock for the whole recursion.
const CyclotomicPoly& poly_locked(PolyCache& cache, std::uint64_t n) {
  if (auto it = cache.memo.find(n); it != cache.memo.end()) return *it->second;

  // x^n - 1, divided down by each proper-divisor polynomial in turn.
  std::vector<Integer> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  std::vector<Integer> result;
  if (n == 1) {
    result = std::move(num);
  } else {
    for (std::uint64_t d : divisors(n)) {
      if (d == n) continue;
      num = divexact_monic(num, poly_locked(cache, d).coefficients);
    }
    result = std::move(num);
  }

  auto poly = std::make_unique<CyclotomicPoly>();
  poly->index = n;
  poly->coefficients = std::move(result);
  return *cache.memo.emplace(n, std::move(poly)).first->second;
}

}  // namespace

const CyclotomicPoly& cyclotomic_poly(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic_poly: index must be >= 1");
  PolyCache& cache = poly_cache();
  std::scoped_lock lock(cache.mu);
  return poly_locked(cache, n);
}

Natural cyclotomic_value_by_poly(std::uint64_t n, const Natural& a) {
  if (n == 1 && a <= Natural(1))
    throw std::domain_error("cyclotomic_value: index 1 needs a >= 2 for a positive value");
  const CyclotomicPoly& poly = cyclotomic_poly(n);
  const Integer ia(a);
  Integer acc = poly.coefficients.back();
  for (std::size_t i = poly.coefficients.size() - 1; i-- > 0;) {
    acc *= ia;
    acc += poly.coefficients[i];
  }
  return acc.to_natural();
}

Natural cyclotomic_value_by_mobius(std::uint64_t n, const Natural& a) {
  if (n == 0) throw std::invalid_argument("cyclotomic_value: index must be >= 1");
  if (a <= Natural(1))
    throw std::domain_error("cyclotomic_value: Moebius route needs a >= 2");
  Natural pos(1), neg(1);
  for (std::uint64_t d : divisors(n)) {
    const int mu = mobius(n / d);
    if (mu == 0) continue;
    const Natural factor = pow(a, d) - 1;
    (mu > 0 ? pos : neg) *= factor;
  }
  return Natural::div_exact(pos, neg);
}

Natural cyclotomic_value(std::uint64_t n, const Natural& a) {
  if (n == 0) throw std::invalid_argument("cyclotomic_value: index must be >= 1");
  if (n == 1 && a <= Natural(1))
    throw std::domain_error("cyclotomic_value: index 1 needs a >= 2 for a positive value");
  if (n < kValueRouteCrossover || a <= Natural(1))
    return cyclotomic_value_by_poly(n, a);
  return cyclotomic_value_by_mobius(n, a);
}

CoprimalityCheck coprimality_check(std::uint64_t m, std::uint64_t n, const Natural& a) {
  if (m == 0 || n == 0 || a.is_zero())
    throw std::invalid_argument("coprimality_check: m, n, a must be >= 1");
  if (m == n) throw std::invalid_argument("coprimality_check: indices must differ");

  CoprimalityCheck out;
  out.gcd = gcd(cyclotomic_value(m, a), cyclotomic_value(n, a));

  const std::uint64_t g = std::gcd(m, n);
  const std::uint64_t rm = m / g, rn = n / g;
  const std::uint64_t other = rm == 1 ? rn : rn == 1 ? rm : 0;
  out.ratio_is_prime_power = other >= 2 && factorize(other).terms.size() == 1;
  return out;
}

}  // namespace digitbound
