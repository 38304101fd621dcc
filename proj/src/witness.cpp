#include "digitbound/witness.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "digitbound/numtheory.hpp"

namespace digitbound {

namespace {

using ExponentMap = std::map<std::uint64_t, std::uint64_t>;

Natural assemble(const ExponentMap& exps) {
  Natural m(1);
  for (const auto& [p, e] : exps) m *= pow(Natural(p), e);
  return m;
}

Natural totient_from(const ExponentMap& exps) {
  Natural phi(1);
  for (const auto& [p, e] : exps) phi *= pow(Natural(p), e - 1) * Natural(p - 1);
  return phi;
}

struct PrimeBudget {
  std::vector<std::uint64_t> primes;  // 2 = p_1 < ... < p_s
  Natural euler_product;              // (p_1 - 1) ... (p_s - 1)
};

// Greatest s with the squared euler product still inside the budget.
PrimeBudget pick_primes(const Rational& x) {
  PrimeBudget pb;
  pb.euler_product = Natural(1);
  std::uint64_t bound = 64;
  std::vector<std::uint64_t> primes = primes_upto(bound);
  for (std::size_t i = 0;; ++i) {
    while (i == primes.size()) {
      bound *= 2;
      primes = primes_upto(bound);
    }
    const Natural next = pb.euler_product * (primes[i] - 1);
    if (!x.admits(next * next)) break;
    pb.primes.push_back(primes[i]);
    pb.euler_product = next;
  }
  return pb;
}

std::string join_primes(const std::vector<std::uint64_t>& primes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? ", " : "") << primes[i];
  return os.str();
}

void require_budget(const Rational& x) {
  if (!x.at_least(Natural(1)))
    throw std::invalid_argument("witness: budget x must be >= 1");
}

Witness degenerate_witness(const Rational& x);

// Shared tail: fill the derived fields, verify the budget, and stitch the
// trace. The exponent map is the authoritative factorization of m. When the
// budget check fails on a degenerate (s < 2) construction, falls back to a
// directly verified candidate; for s >= 2 the bound holds by construction,
// so failure means the construction itself is broken.
Witness finish(const Rational& x, const PrimeBudget& pb, const Natural& multiplier,
               std::string multiplier_note, ExponentMap exps) {
  Witness w;
  w.x = x;
  w.prime_count = pb.primes.size();
  w.multiplier = multiplier;
  w.two_exponent = exps.count(2) ? exps.at(2) : 0;
  for (std::uint64_t p : pb.primes)
    if (p != 2) w.odd_part_primes.push_back(p);
  w.m = assemble(exps);
  w.phi_m = totient_from(exps);

  std::ostringstream line;
  line << "s = " << pb.primes.size() << ": primes " << join_primes(pb.primes)
       << "; euler product " << pb.euler_product << ", squared "
       << pb.euler_product * pb.euler_product << " <= x = " << x.to_string();
  w.trace.push_back(line.str());
  w.trace.push_back(std::move(multiplier_note));

  std::ostringstream mline;
  mline << "m = " << w.m << " =";
  for (auto it = exps.begin(); it != exps.end(); ++it) {
    mline << (it == exps.begin() ? " " : " * ") << it->first;
    if (it->second > 1) mline << "^" << it->second;
  }
  w.trace.push_back(mline.str());

  std::ostringstream pline;
  pline << "phi(m) = " << w.phi_m << " <= x = " << x.to_string();
  w.trace.push_back(pline.str());

  if (!x.admits(w.phi_m)) {
    if (pb.primes.size() >= 2)
      throw std::logic_error("witness construction exceeded its budget");
    return degenerate_witness(x);
  }
  return w;
}

// Direct-verification fallback for degenerate budgets (s < 2): the largest
// candidate from {1, 2, 4, 6} and doubled 3-smooth numbers whose totient
// fits the budget.
Witness degenerate_witness(const Rational& x) {
  std::vector<Natural> candidates{Natural(1), Natural(2), Natural(4), Natural(6)};
  for (const Natural& v : smooth_3_upto(x.floor() + 1)) candidates.push_back(v * 2);

  Natural best(1);
  for (const Natural& c : candidates)
    if (c > best && x.admits(totient(c))) best = c;

  const Factorization f = factorize(best);
  Witness w;
  w.x = x;
  w.m = best;
  w.phi_m = totient(f);
  w.multiplier = Natural(1);
  for (const Factorization::Term& term : f.terms) {
    ++w.prime_count;
    if (term.prime == 2) {
      w.two_exponent = term.exponent;
    } else {
      w.odd_part_primes.push_back(term.prime);
    }
  }
  std::ostringstream line;
  line << "degenerate budget: direct verification picked m = " << w.m
       << ", phi(m) = " << w.phi_m << " <= x = " << x.to_string();
  w.trace.push_back(line.str());
  return w;
}

}  // namespace

Witness construct_witness_pow2(const Rational& x) {
  require_budget(x);
  const PrimeBudget pb = pick_primes(x);

  // Greatest power of 2 with a * euler_product <= x: a = 2^(t-1).
  const Natural cap = x.floor() / pb.euler_product;
  const std::uint64_t t = cap.bit_length();  // cap >= 1 since s >= 1
  const Natural a = Natural(1).shifted_left(t - 1);

  ExponentMap exps;
  exps[2] = t;
  for (std::uint64_t p : pb.primes)
    if (p != 2) exps[p] = 1;

  std::ostringstream note;
  note << "a_t = " << a << " = 2^" << (t - 1) << ": a_t * euler product = "
       << a * pb.euler_product << " <= x = " << x.to_string();

  return finish(x, pb, a, note.str(), std::move(exps));
}

Witness construct_witness_smooth(const Rational& x) {
  require_budget(x);
  const PrimeBudget pb = pick_primes(x);

  // Greatest 3-smooth a with a * euler_product <= x, tracked as (alpha, beta)
  // so the exponent map needs no factoring afterwards.
  Natural best_a(1);
  std::uint64_t best_alpha = 0, best_beta = 0;
  Natural p3(1);
  for (std::uint64_t beta = 0; x.admits(p3 * pb.euler_product); ++beta, p3 *= 3) {
    const Natural cap = x.floor() / (pb.euler_product * p3);
    const std::uint64_t alpha = cap.bit_length() - 1;  // 2^alpha <= cap
    const Natural a = p3.shifted_left(alpha);
    if (a > best_a) {
      best_a = a;
      best_alpha = alpha;
      best_beta = beta;
    }
  }

  ExponentMap exps;
  exps[2] = best_alpha + 1;  // a_t's 2-power times the prime 2 itself
  if (best_beta > 0) exps[3] += best_beta;
  for (std::uint64_t p : pb.primes)
    if (p != 2) exps[p] += 1;

  std::ostringstream note;
  note << "a_t = " << best_a << " = 2^" << best_alpha << " * 3^" << best_beta
       << ": a_t * euler product = " << best_a * pb.euler_product
       << " <= x = " << x.to_string();

  return finish(x, pb, best_a, note.str(), std::move(exps));
}

Witness construct_witness(const Rational& x, WitnessMode mode) {
  return mode == WitnessMode::pow2 ? construct_witness_pow2(x)
                                   : construct_witness_smooth(x);
}

Witness construct_witness_exhaustive(const Rational& x) {
  require_budget(x);
  const Natural floor_x = x.floor();
  if (floor_x > Natural(200))
    throw std::domain_error("exhaustive witness: refuses budgets above 200");

  const Natural m = max_totient_preimage_oracle(floor_x.to_u64());
  const Factorization f = factorize(m);

  Witness w;
  w.x = x;
  w.m = m;
  w.phi_m = totient(f);
  Natural radical(1);
  for (const Factorization::Term& term : f.terms) {
    ++w.prime_count;
    radical *= term.prime;
    if (term.prime == 2) {
      w.two_exponent = term.exponent;
    } else {
      w.odd_part_primes.push_back(term.prime);
    }
  }
  w.multiplier = Natural::div_exact(m, radical);
  std::ostringstream line;
  line << "exhaustive oracle: m = " << w.m << ", phi(m) = " << w.phi_m
       << " <= x = " << x.to_string();
  w.trace.push_back(line.str());
  return w;
}

double witness_ratio(const Rational& x, WitnessMode mode) {
  if (!x.at_least(Natural(16)))
    throw std::invalid_argument("witness_ratio: needs x >= 16");
  const Witness w = construct_witness(x, mode);
  const double xd = x.to_double();
  return w.m.to_double() / (kExpGamma * xd * std::log(std::log(xd)));
}

}  // namespace digitbound
