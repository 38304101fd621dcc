#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace digitbound {

static_assert(sizeof(unsigned long) == 8, "requires 64-bit unsigned long");
static_assert(GMP_NAIL_BITS == 0 && GMP_LIMB_BITS == 64,
              "requires full 64-bit GMP limbs");

// Arbitrary-precision nonnegative integer, the universal scalar of this
// library. Value-semantic RAII wrapper over GMP's mpz_t, restricted to the
// nonnegative range: any operation that would leave the range throws.
class Natural {
 public:
  Natural() { mpz_init(v_); }
  Natural(std::uint64_t v) { mpz_init_set_ui(v_, v); }  // NOLINT: implicit by design
  explicit Natural(std::string_view decimal);

  Natural(const Natural& o) { mpz_init_set(v_, o.v_); }
  Natural(Natural&& o) noexcept {
    mpz_init(v_);
    mpz_swap(v_, o.v_);
  }
  Natural& operator=(const Natural& o) {
    if (this != &o) mpz_set(v_, o.v_);
    return *this;
  }
  Natural& operator=(Natural&& o) noexcept {
    mpz_swap(v_, o.v_);
    return *this;
  }
  ~Natural() { mpz_clear(v_); }

  void swap(Natural& o) noexcept { mpz_swap(v_, o.v_); }

  bool is_zero() const { return mpz_sgn(v_) == 0; }
  bool is_one() const { return mpz_cmp_ui(v_, 1) == 0; }
  bool is_even() const { return mpz_even_p(v_) != 0; }

  // Number of significant bits; 0 for the value 0.
  std::uint64_t bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_, 2);
  }
  std::size_t limb_count() const { return mpz_size(v_); }
  std::uint64_t limb(std::size_t i) const { return mpz_getlimbn(v_, i); }
  std::uint64_t popcount() const { return mpz_popcount(v_); }

  // Reads the bit window [pos, pos + width), width <= 63.
  std::uint64_t bits_window(std::uint64_t pos, unsigned width) const;

  bool fits_u64() const { return mpz_fits_ulong_p(v_) != 0; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Natural does not fit in 64 bits");
    return mpz_get_ui(v_);
  }
  // Closest double; loses precision beyond 53 bits. Diagnostics only.
  double to_double() const { return mpz_get_d(v_); }
  std::string to_decimal() const;

  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = mpz_cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
  friend bool operator==(const Natural& a, const Natural& b) {
    return mpz_cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Natural& a, std::uint64_t b) {
    const int c = mpz_cmp_ui(a.v_, b);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
  friend bool operator==(const Natural& a, std::uint64_t b) {
    return mpz_cmp_ui(a.v_, b) == 0;
  }

  Natural& operator+=(const Natural& o) {
    mpz_add(v_, v_, o.v_);
    return *this;
  }
  Natural& operator+=(std::uint64_t o) {
    mpz_add_ui(v_, v_, o);
    return *this;
  }
  Natural& operator-=(const Natural& o) {
    if (mpz_cmp(v_, o.v_) < 0) throw std::domain_error("Natural subtraction underflow");
    mpz_sub(v_, v_, o.v_);
    return *this;
  }
  Natural& operator-=(std::uint64_t o) {
    if (mpz_cmp_ui(v_, o) < 0) throw std::domain_error("Natural subtraction underflow");
    mpz_sub_ui(v_, v_, o);
    return *this;
  }
  Natural& operator*=(const Natural& o) {
    mpz_mul(v_, v_, o.v_);
    return *this;
  }
  Natural& operator*=(std::uint64_t o) {
    mpz_mul_ui(v_, v_, o);
    return *this;
  }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator+(Natural a, std::uint64_t b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator-(Natural a, std::uint64_t b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator*(Natural a, std::uint64_t b) { return a *= b; }

  // Floor division and remainder; divisor must be nonzero.
  friend Natural operator/(const Natural& a, const Natural& b) {
    Natural q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend Natural operator%(const Natural& a, const Natural& b) {
    Natural q, r;
    divmod(a, b, q, r);
    return r;
  }
  static void divmod(const Natural& num, const Natural& den, Natural& q, Natural& r) {
    if (den.is_zero()) throw std::domain_error("Natural division by zero");
    mpz_tdiv_qr(q.v_, r.v_, num.v_, den.v_);
  }

  // In-place division by a machine word; returns the remainder.
  std::uint64_t divmod_word(std::uint64_t d) {
    if (d == 0) throw std::domain_error("Natural division by zero");
    return mpz_tdiv_q_ui(v_, v_, d);
  }

  // Quotient a / b where b | a is already known; throws if it does not.
  static Natural div_exact(const Natural& a, const Natural& b) {
    if (b.is_zero() || mpz_divisible_p(a.v_, b.v_) == 0)
      throw std::logic_error("div_exact: divisor does not divide dividend");
    Natural q;
    mpz_divexact(q.v_, a.v_, b.v_);
    return q;
  }

  Natural shifted_left(std::uint64_t bits) const {
    Natural r;
    mpz_mul_2exp(r.v_, v_, bits);
    return r;
  }
  Natural shifted_right(std::uint64_t bits) const {
    Natural r;
    mpz_tdiv_q_2exp(r.v_, v_, bits);
    return r;
  }

  friend Natural gcd(const Natural& a, const Natural& b) {
    Natural g;
    mpz_gcd(g.v_, a.v_, b.v_);
    return g;
  }

  // Exact a^e with 0^0 = 1.
  friend Natural pow(const Natural& a, std::uint64_t e) {
    Natural r;
    mpz_pow_ui(r.v_, a.v_, e);
    return r;
  }

  // True iff a divides c; a must be nonzero.
  friend bool divides(const Natural& a, const Natural& c) {
    if (a.is_zero()) throw std::invalid_argument("divides: divisor must be >= 1");
    return mpz_divisible_p(c.v_, a.v_) != 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& v);

 private:
  friend class Integer;
  mpz_t v_;
};

// Exact floor of the k-th root: r with r^k <= n < (r+1)^k. No floating point
// touches the decision; Newton steps are verified by a final two-sided check.
Natural integer_root(const Natural& n, std::uint64_t k);

// Largest e >= 0 with pow(base, e) <= n, by exact integer comparisons.
std::uint64_t floor_log(std::uint64_t base, std::uint64_t n);
std::uint64_t floor_log(std::uint64_t base, const Natural& n);

// Signed arbitrary-precision integer. Only the operations the polynomial
// arithmetic needs; Natural stays the scalar everywhere else.
class Integer {
 public:
  Integer() { mpz_init(v_); }
  Integer(std::int64_t v) { mpz_init_set_si(v_, v); }  // NOLINT: implicit by design
  explicit Integer(const Natural& n) { mpz_init_set(v_, n.v_); }

  Integer(const Integer& o) { mpz_init_set(v_, o.v_); }
  Integer(Integer&& o) noexcept {
    mpz_init(v_);
    mpz_swap(v_, o.v_);
  }
  Integer& operator=(const Integer& o) {
    if (this != &o) mpz_set(v_, o.v_);
    return *this;
  }
  Integer& operator=(Integer&& o) noexcept {
    mpz_swap(v_, o.v_);
    return *this;
  }
  ~Integer() { mpz_clear(v_); }

  bool is_zero() const { return mpz_sgn(v_) == 0; }
  int sign() const { return mpz_sgn(v_); }
  std::string to_decimal() const;

  // Value as a Natural; throws if negative.
  Natural to_natural() const {
    if (sign() < 0) throw std::domain_error("Integer is negative");
    Natural n;
    mpz_set(n.v_, v_);
    return n;
  }

  Integer& operator+=(const Integer& o) {
    mpz_add(v_, v_, o.v_);
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    mpz_sub(v_, v_, o.v_);
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    mpz_mul(v_, v_, o.v_);
    return *this;
  }
  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  Integer operator-() const {
    Integer r(*this);
    mpz_neg(r.v_, r.v_);
    return r;
  }
  // In-place a -= b * c, the inner step of polynomial long division.
  void submul(const Integer& b, const Integer& c) { mpz_submul(v_, b.v_, c.v_); }

  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    const int c = mpz_cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
  friend bool operator==(const Integer& a, const Integer& b) {
    return mpz_cmp(a.v_, b.v_) == 0;
  }
  friend bool operator==(const Integer& a, std::int64_t b) {
    return mpz_cmp_si(a.v_, b) == 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  mpz_t v_;
};

// Exact nonnegative rational, kept reduced with denominator >= 1. Carries the
// witness budget x; all budget comparisons cross-multiply exactly.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::uint64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(Natural num, Natural den);

  // Accepts "123", "1.047", "7/8". No signs, no exponents.
  static Rational from_decimal(std::string_view text);

  const Natural& num() const { return num_; }
  const Natural& den() const { return den_; }

  bool is_integer() const { return den_.is_one(); }
  double to_double() const { return num_.to_double() / den_.to_double(); }
  // "p/q", or just "p" when the value is integral.
  std::string to_string() const;

  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // this >= v for a Natural v, exactly.
  bool at_least(const Natural& v) const { return num_ >= v * den_; }
  // v <= this, exactly; the budget test used throughout the witness search.
  bool admits(const Natural& v) const { return v * den_ <= num_; }
  // Largest integer <= this.
  Natural floor() const { return num_ / den_; }

 private:
  Natural num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace digitbound
