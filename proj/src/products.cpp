#include "digitbound/products.hpp"

#include <stdexcept>
#include <vector>

#include "digitbound/errors.hpp"
#include "digitbound/numtheory.hpp"

namespace digitbound {

namespace {

Natural product_range(std::span<const Natural> parts, const Deadline& deadline) {
  if (deadline.expired()) throw Timeout("product tree deadline exceeded");
  if (parts.empty()) return Natural(1);
  if (parts.size() == 1) return parts[0];
  const std::size_t mid = parts.size() / 2;
  return product_range(parts.first(mid), deadline) *
         product_range(parts.subspan(mid), deadline);
}

}  // namespace

Natural balanced_product(std::span<const Natural> parts, Deadline deadline) {
  return product_range(parts, deadline);
}

Natural factorial(std::uint64_t n, Deadline deadline) {
  std::vector<Natural> leaves;
  leaves.reserve(n / kFactorialLeafRun + 1);
  for (std::uint64_t start = 2; start <= n; start += kFactorialLeafRun) {
    if (deadline.expired()) throw Timeout("factorial deadline exceeded");
    const std::uint64_t stop = std::min(n, start + kFactorialLeafRun - 1);
    Natural run(start);
    for (std::uint64_t i = start + 1; i <= stop; ++i) run *= i;
    leaves.push_back(std::move(run));
  }
  return balanced_product(leaves, deadline);
}

Natural factorial_sequential(std::uint64_t n, Deadline deadline) {
  Natural acc(1);
  for (std::uint64_t i = 2; i <= n; ++i) {
    acc *= i;
    if ((i & 0x3ff) == 0 && deadline.expired())
      throw Timeout("factorial deadline exceeded");
  }
  return acc;
}

Natural lcm_upto(std::uint64_t n, Deadline deadline) {
  if (n == 0) throw std::invalid_argument("lcm_upto: n must be >= 1");
  std::vector<Natural> powers;
  for (std::uint64_t p : primes_upto(n)) {
    std::uint64_t pe = p;
    while (pe <= n / p) pe *= p;  // largest power of p that is <= n
    powers.emplace_back(pe);
  }
  return balanced_product(powers, deadline);
}

Natural lcm_upto_oracle(std::uint64_t n, Deadline deadline) {
  if (n == 0) throw std::invalid_argument("lcm_upto_oracle: n must be >= 1");
  Natural acc(1);
  for (std::uint64_t k = 2; k <= n; ++k) {
    acc = Natural::div_exact(acc * k, gcd(acc, Natural(k)));
    if ((k & 0xff) == 0 && deadline.expired())
      throw Timeout("lcm fold deadline exceeded");
  }
  return acc;
}

}  // namespace digitbound
