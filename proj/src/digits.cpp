#include "digitbound/digits.hpp"

#include <bit>
#include <stdexcept>

#include "digitbound/errors.hpp"

namespace digitbound {

namespace {

void require_base(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("digit base must be >= 2");
}

// Digits of a power-of-two base are fixed-width bit windows.
DigitVector pow2_digits(const Natural& m, std::uint64_t base) {
  const unsigned w = static_cast<unsigned>(std::countr_zero(base));
  const std::uint64_t bits = m.bit_length();
  DigitVector dv{base, {}};
  dv.digits.resize((bits + w - 1) / w);
  for (std::size_t i = 0; i < dv.digits.size(); ++i)
    dv.digits[i] = m.bits_window(static_cast<std::uint64_t>(i) * w, w);
  while (!dv.digits.empty() && dv.digits.back() == 0) dv.digits.pop_back();
  return dv;
}

void schoolbook_into(Natural v, std::uint64_t base, std::vector<std::uint64_t>& out,
                     std::size_t offset, const Deadline& deadline) {
  std::size_t i = offset;
  while (!v.is_zero()) {
    out[i++] = v.divmod_word(base);
    if ((i & 0xfff) == 0 && deadline.expired())
      throw Timeout("radix conversion deadline exceeded");
  }
}

struct SplitTowers {
  std::size_t leaf_digits;       // digit capacity of a level-0 leaf
  std::vector<Natural> powers;   // powers[i] = base^(leaf_digits * 2^i)
};

// Towers of base^(leaf * 2^i), grown by squaring until the top exceeds m.
SplitTowers build_towers(const Natural& m, std::uint64_t base) {
  SplitTowers t;
  const unsigned base_bits = 64 - static_cast<unsigned>(std::countl_zero(base));
  t.leaf_digits = std::max<std::size_t>(
      1, kRadixSplitThresholdLimbs * 64 / base_bits);
  t.powers.push_back(pow(Natural(base), t.leaf_digits));
  while (t.powers.back() <= m) {
    const Natural& top = t.powers.back();
    t.powers.push_back(top * top);
  }
  return t;
}

// Writes the digits of v into out[offset ..], where v < base^(leaf * 2^level).
// The buffer is pre-zeroed, so short halves need no padding writes.
void convert_rec(const Natural& v, std::uint64_t base, const SplitTowers& t,
                 std::size_t level, std::vector<std::uint64_t>& out,
                 std::size_t offset, const Deadline& deadline) {
  if (deadline.expired()) throw Timeout("radix conversion deadline exceeded");
  if (v.is_zero()) return;
  if (level == 0) {
    schoolbook_into(v, base, out, offset, deadline);
    return;
  }
  Natural hi, lo;
  Natural::divmod(v, t.powers[level - 1], hi, lo);
  const std::size_t half = t.leaf_digits << (level - 1);
  convert_rec(lo, base, t, level - 1, out, offset, deadline);
  convert_rec(hi, base, t, level - 1, out, offset + half, deadline);
}

}  // namespace

DigitVector to_digits(const Natural& m, std::uint64_t base, Deadline deadline) {
  require_base(base);
  if (std::has_single_bit(base)) return pow2_digits(m, base);
  if (m.limb_count() < kRadixSplitThresholdLimbs)
    return to_digits_schoolbook(m, base, deadline);

  const SplitTowers towers = build_towers(m, base);
  const std::size_t level = towers.powers.size() - 1;
  DigitVector dv{base, {}};
  dv.digits.assign(towers.leaf_digits << level, 0);
  convert_rec(m, base, towers, level, dv.digits, 0, deadline);
  while (!dv.digits.empty() && dv.digits.back() == 0) dv.digits.pop_back();
  return dv;
}

DigitVector to_digits_schoolbook(const Natural& m, std::uint64_t base,
                                 Deadline deadline) {
  require_base(base);
  DigitVector dv{base, {}};
  Natural v = m;
  std::size_t guard = 0;
  while (!v.is_zero()) {
    dv.digits.push_back(v.divmod_word(base));
    if ((++guard & 0xfff) == 0 && deadline.expired())
      throw Timeout("radix conversion deadline exceeded");
  }
  return dv;
}

Natural from_digits(const DigitVector& dv) {
  require_base(dv.base);
  Natural acc;
  for (std::size_t i = dv.digits.size(); i-- > 0;) {
    if (dv.digits[i] >= dv.base)
      throw std::invalid_argument("from_digits: digit out of range");
    acc *= dv.base;
    acc += dv.digits[i];
  }
  return acc;
}

Natural digit_sum(const Natural& m, std::uint64_t base) {
  require_base(base);
  if (base == 2) return Natural(m.popcount());
  if (std::has_single_bit(base)) {
    const unsigned w = static_cast<unsigned>(std::countr_zero(base));
    const std::uint64_t bits = m.bit_length();
    unsigned __int128 sum = 0;
    for (std::uint64_t pos = 0; pos < bits; pos += w)
      sum += m.bits_window(pos, w);
    return Natural(static_cast<std::uint64_t>(sum >> 64)).shifted_left(64) +
           Natural(static_cast<std::uint64_t>(sum));
  }
  const DigitVector dv = to_digits(m, base);
  unsigned __int128 sum = 0;
  for (std::uint64_t d : dv.digits) sum += d;
  return Natural(static_cast<std::uint64_t>(sum >> 64)).shifted_left(64) +
         Natural(static_cast<std::uint64_t>(sum));
}

}  // namespace digitbound
