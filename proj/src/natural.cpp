#include "digitbound/natural.hpp"

#include <bit>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <ostream>

namespace digitbound {

Natural::Natural(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("Natural: empty decimal string");
  for (char c : decimal)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("Natural: invalid decimal string");
  mpz_init(v_);
  if (mpz_set_str(v_, std::string(decimal).c_str(), 10) != 0) {
    mpz_clear(v_);
    throw std::invalid_argument("Natural: invalid decimal string");
  }
}

std::string Natural::to_decimal() const {
  const std::unique_ptr<char, decltype(&std::free)> buf(mpz_get_str(nullptr, 10, v_),
                                                        &std::free);
  return std::string(buf.get());
}

std::uint64_t Natural::bits_window(std::uint64_t pos, unsigned width) const {
  if (width == 0 || width > 63) throw std::invalid_argument("bits_window: width must be 1..63");
  const std::size_t li = pos / 64;
  const unsigned off = static_cast<unsigned>(pos % 64);
  const std::size_t n = limb_count();
  if (li >= n) return 0;
  std::uint64_t v = limb(li) >> off;
  if (off + width > 64 && li + 1 < n) v |= limb(li + 1) << (64 - off);
  return v & ((std::uint64_t{1} << width) - 1);
}

std::ostream& operator<<(std::ostream& os, const Natural& v) {
  return os << v.to_decimal();
}

std::string Integer::to_decimal() const {
  const std::unique_ptr<char, decltype(&std::free)> buf(mpz_get_str(nullptr, 10, v_),
                                                        &std::free);
  return std::string(buf.get());
}

std::ostream& operator<<(std::ostream& os, const Integer& v) {
  return os << v.to_decimal();
}

Natural integer_root(const Natural& n, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("integer_root: k must be >= 1");
  if (n.is_zero()) return 0;
  if (k == 1) return n;
  const std::uint64_t bits = n.bit_length();
  if (k >= bits) return 1;  // 2^k > n >= 1

  // Start above the true root: r0 = 2^ceil(bits/k) >= n^(1/k), then descend
  // with the integer Newton step r <- ((k-1)r + n/r^(k-1)) / k.
  Natural r = Natural(1).shifted_left((bits + k - 1) / k);
  while (true) {
    Natural next = (r * (k - 1) + n / pow(r, k - 1));
    next.divmod_word(k);
    if (next >= r) break;
    r = std::move(next);
  }
  // Exact two-sided correction; Newton lands within a step of the floor root.
  while (pow(r, k) > n) r -= 1;
  while (pow(r + 1, k) <= n) r += 1;
  return r;
}

std::uint64_t floor_log(std::uint64_t base, std::uint64_t n) {
  if (base < 2) throw std::invalid_argument("floor_log: base must be >= 2");
  if (n == 0) throw std::invalid_argument("floor_log: n must be >= 1");
  std::uint64_t e = 0;
  std::uint64_t p = 1;
  while (p <= n / base) {  // p * base <= n, without overflow
    p *= base;
    ++e;
  }
  return e;
}

std::uint64_t floor_log(std::uint64_t base, const Natural& n) {
  if (base < 2) throw std::invalid_argument("floor_log: base must be >= 2");
  if (n.is_zero()) throw std::invalid_argument("floor_log: n must be >= 1");
  if (n.fits_u64()) return floor_log(base, n.to_u64());
  // Bracket with bit lengths, then correct exactly. For base >= 2 the answer
  // lies in [ (bitlen(n)-1) / bitlen2(base+ ), bitlen(n) ); start from a safe
  // underestimate and walk up.
  const std::uint64_t base_bits = 64 - static_cast<std::uint64_t>(std::countl_zero(base));
  std::uint64_t e = (n.bit_length() - 1) / base_bits;  // base^e <= 2^(e*base_bits) <= n
  Natural p = pow(Natural(base), e);
  while (p * base <= n) {
    p *= base;
    ++e;
  }
  return e;
}

Rational::Rational(Natural num, Natural den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
  const Natural g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = Natural::div_exact(num_, g);
    den_ = Natural::div_exact(den_, g);
  }
}

Rational Rational::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return Rational(Natural(text.substr(0, slash)), Natural(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(Natural(text), 1);
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  if (frac.empty()) return Rational(Natural(whole), 1);
  Natural num = whole.empty() ? Natural(0) : Natural(whole);
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("Rational: invalid decimal string");
    num *= 10;
    num += static_cast<std::uint64_t>(c - '0');
  }
  return Rational(std::move(num), pow(Natural(10), frac.size()));
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_decimal();
  return num_.to_decimal() + "/" + den_.to_decimal();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) {
  return os << v.to_string();
}

}  // namespace digitbound
