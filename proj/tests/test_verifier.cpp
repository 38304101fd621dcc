#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "digitbound/digits.hpp"
#include "digitbound/errors.hpp"
#include "digitbound/natural.hpp"
#include "digitbound/products.hpp"
#include "digitbound/serialize.hpp"
#include "digitbound/verifier.hpp"
#include "digitbound/witness.hpp"
#include "test_util.hpp"

using digitbound::ChainOptions;
using digitbound::CheckResult;
using digitbound::Natural;
using digitbound::Rational;
using digitbound::RefusalError;
using digitbound::ScanResult;
using digitbound::VerificationReport;
using digitbound::VerifyOptions;
using digitbound::Witness;
using digitbound::budget_x;
using digitbound::construct_witness_pow2;
using digitbound::digit_sum;
using digitbound::lcm_upto;
using digitbound::scan_constants;
using digitbound::verify_divisibility_chain;
using digitbound::verify_theorem;

namespace {

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const CheckResult* find_check(const VerificationReport& rep, const std::string& name) {
  for (const CheckResult& c : rep.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// Serialized report with the timing fields zeroed, for determinism diffs.
std::string stable_form(VerificationReport rep) {
  for (CheckResult& c : rep.checks) c.elapsed_ms = 0.0;
  return digitbound::to_json(rep, 2);
}

}  // namespace

TEST_CASE("budget_x is exact at perfect powers of b+1") {
  CHECK(budget_x(Natural(6561), 2) == Rational(1));
  CHECK(budget_x(pow(Natural(3), 16), 2) == Rational(2));
  CHECK(budget_x(Natural(214358881), 10) == Rational(1));
  CHECK(budget_x(pow(Natural(11), 12), 10) == Rational(Natural(3), Natural(2)));
}

TEST_CASE("budget_x approximates from below at general n") {
  Natural n1(10000);
  Rational x1 = budget_x(n1, 2);
  double f1 = x1.to_double();
  CHECK(std::abs(f1 - 1.047) < 2e-3);
  // Never above the float estimate of the true budget.
  CHECK(f1 <= std::log(10000.0) / (8.0 * std::log(3.0)));

  Rational x2 = budget_x(Natural(100000), 2);
  double f2 = x2.to_double();
  CHECK(std::abs(f2 - 1.309) < 2e-3);
  CHECK(f2 <= std::log(100000.0) / (8.0 * std::log(3.0)));
}

TEST_CASE("budget_x stays at least 1 and under the true budget across a sweep") {
  std::mt19937_64 rng(0xb0d6e70);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t b = 2 + rng() % 9;
    Natural min_n = pow(Natural(b + 1), 8);
    Natural n = min_n + testutil::random_natural(rng, 1 + rng() % 40);
    Rational x = budget_x(n, b);
    CHECK(x.at_least(Natural(1)));
    double fx = x.to_double();
    double truth = std::log(n.to_double()) / (8.0 * std::log(static_cast<double>(b + 1)));
    CHECK(fx <= truth + 1e-12);
    CHECK(fx > truth * 0.999);
  }
}

TEST_CASE("budget_x refuses n below the minimal admissible value") {
  CHECK_THROWS_WITH_AS(budget_x(Natural(6560), 2),
                       "budget below 1: n = 6560 is below 6561 = (b+1)^8, the minimal n for "
                       "base 2",
                       RefusalError);
  CHECK_THROWS_AS(budget_x(Natural(100), 2), RefusalError);
  try {
    budget_x(Natural(10000), 10);
    FAIL("expected refusal");
  } catch (const RefusalError& e) {
    CHECK(std::string(e.what()).find("214358881") != std::string::npos);
  }
}

TEST_CASE("divisibility chain passes on the worked instances") {
  Witness w = construct_witness_pow2(budget_x(Natural(10000), 2));
  CHECK(w.m == 2);
  std::vector<CheckResult> checks = verify_divisibility_chain(Natural(10000), 2, w);
  CHECK(all_pass(checks));
  CHECK(checks.front().name == "budget");
  CHECK(checks.back().name == "product_reconstruction");

  Witness w2 = construct_witness_pow2(budget_x(Natural(6561), 2));
  CHECK(all_pass(verify_divisibility_chain(Natural(6561), 2, w2)));
}

TEST_CASE("oversized witnesses fail the exact gate and short-circuit") {
  Witness big = construct_witness_pow2(Rational(100));  // m = 240, phi = 64
  std::vector<CheckResult> checks = verify_divisibility_chain(Natural(10000), 2, big);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].name == "budget");
  CHECK_FALSE(checks[0].pass);
  CHECK(checks[0].statement.find("witness too large for n") != std::string::npos);
}

TEST_CASE("chain validates witness structure") {
  Witness w = construct_witness_pow2(Rational(10));
  w.odd_part_primes = {5, 3};  // not increasing
  CHECK_THROWS_AS(verify_divisibility_chain(Natural(10000), 2, w), std::invalid_argument);
  Witness w2 = construct_witness_pow2(Rational(10));
  w2.m = 25;  // inconsistent with 2^t * odd part
  CHECK_THROWS_AS(verify_divisibility_chain(Natural(10000), 2, w2), std::invalid_argument);
}

TEST_CASE("chain verifies the lambda link numerically when lambda is supplied") {
  Natural n(10000);
  Witness w = construct_witness_pow2(budget_x(n, 2));
  Natural lambda = lcm_upto(10000);
  ChainOptions opts;
  opts.lambda_n = &lambda;
  std::vector<CheckResult> checks = verify_divisibility_chain(n, 2, w, opts);
  CHECK(all_pass(checks));
  bool found = false;
  for (const CheckResult& c : checks) {
    if (c.name == "lambda_chain") {
      CHECK(c.statement.find("checked numerically") != std::string::npos);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("verify_theorem end to end at n = 10^4") {
  VerificationReport rep = verify_theorem(Natural(10000), 2);
  CHECK(rep.overall);
  CHECK(rep.witness.m == 2);
  CHECK(rep.m_lower_bound == 2);
  REQUIRE(rep.s_b_factorial.has_value());
  REQUIRE(rep.s_b_lcm.has_value());
  CHECK(*rep.s_b_factorial == 54134);
  CHECK(*rep.s_b_lcm == 7241);
  CHECK(*rep.s_b_factorial >= rep.witness.m);
  CHECK(*rep.s_b_lcm >= rep.witness.m);

  // Independent confirmation of the certified conclusion.
  Natural claim = pow(Natural(2), 2) - 1;
  CHECK(divides(claim, lcm_upto(10000)));
  CHECK(divides(claim, digitbound::factorial(10000)));
}

TEST_CASE("verify_theorem refuses sub-minimal n") {
  CHECK_THROWS_AS(verify_theorem(Natural(6560), 2), RefusalError);
  CHECK_THROWS_AS(verify_theorem(Natural(10000), 10), RefusalError);
}

TEST_CASE("verify_theorem honors the resource guards") {
  VerifyOptions opts;
  CHECK_THROWS_AS(verify_theorem(Natural(2000000), 2, opts), RefusalError);
  opts.compute_factorial = false;
  opts.max_lcm_n = 1000;
  CHECK_THROWS_AS(verify_theorem(Natural(10000), 2, opts), RefusalError);
}

TEST_CASE("skipping a computation drops its fields and certifies by chain") {
  VerifyOptions opts;
  opts.compute_factorial = false;
  opts.compute_lcm = false;
  VerificationReport rep = verify_theorem(Natural(10000), 2, opts);
  CHECK(rep.overall);
  CHECK_FALSE(rep.s_b_factorial.has_value());
  CHECK_FALSE(rep.s_b_lcm.has_value());
  const CheckResult* lam = find_check(rep, "lambda_divisibility");
  REQUIRE(lam != nullptr);
  CHECK(lam->pass);
  CHECK(lam->statement.find("certified by chain") != std::string::npos);
  CHECK(find_check(rep, "digit_sum_factorial") == nullptr);
  CHECK(find_check(rep, "digit_sum_lcm") == nullptr);

  VerificationReport numeric = verify_theorem(Natural(10000), 2);
  const CheckResult* lam2 = find_check(numeric, "lambda_divisibility");
  REQUIRE(lam2 != nullptr);
  CHECK(lam2->statement.find("checked numerically") != std::string::npos);
}

TEST_CASE("an oversized override budget yields a failing report, not a throw") {
  VerifyOptions opts;
  opts.override_x = Rational(100);
  VerificationReport rep = verify_theorem(Natural(10000), 2, opts);
  CHECK_FALSE(rep.overall);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "budget");
  CHECK(rep.checks[0].statement.find("witness too large for n") != std::string::npos);
}

TEST_CASE("a modest override budget still passes the exact gate") {
  VerifyOptions opts;
  opts.override_x = Rational(1);  // forces m = 2 regardless of n
  VerificationReport rep = verify_theorem(Natural(100000), 2, opts);
  CHECK(rep.overall);
  CHECK(rep.witness.m == 2);
}

TEST_CASE("reports are deterministic apart from timing") {
  VerificationReport a = verify_theorem(Natural(10000), 2);
  VerificationReport b = verify_theorem(Natural(10000), 2);
  CHECK(stable_form(a) == stable_form(b));
}

TEST_CASE("digit sums of multiples of pow(b, m) - 1 are at least m") {
  std::mt19937_64 rng(0x5bb31);
  for (std::uint64_t b : {2ULL, 3ULL, 10ULL}) {
    for (std::uint64_t m = 1; m <= 12; ++m) {
      Natural base_mask = pow(Natural(b), m) - 1;
      for (std::uint64_t q = 1; q <= 1000; ++q)
        CHECK(digit_sum(base_mask * q, b) >= m);
      for (int i = 0; i < 100; ++i) {
        Natural q = testutil::random_natural_exact(rng, 256);
        CHECK(digit_sum(base_mask * q, b) >= m);
      }
    }
  }
}

TEST_CASE("scan worked examples") {
  ScanResult one = scan_constants({10}, 10);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].s_b_factorial == 27);
  CHECK(std::abs(one.rows[0].ratio_luca - 11.726) < 1e-3);
  CHECK_FALSE(one.rows[0].ratio_thm1.has_value());
  CHECK(one.min_ratio_luca == one.rows[0].ratio_luca);
  CHECK_FALSE(one.min_ratio_thm1.has_value());

  ScanResult two = scan_constants({2}, 2);
  CHECK(two.rows[0].s_b_factorial == 1);
  CHECK(std::abs(two.rows[0].ratio_luca - 1.4427) < 1e-4);

  ScanResult sixteen = scan_constants({16}, 2);
  REQUIRE(sixteen.rows[0].ratio_thm1.has_value());
  CHECK(*sixteen.rows[0].ratio_thm1 > 0.0);
  CHECK(sixteen.rows[0].s_b_factorial == digit_sum(digitbound::factorial(16), 2));
}

TEST_CASE("scan rows are exact and ratios positive over a contiguous range") {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 2; n <= 300; ++n) ns.push_back(n);
  ScanResult res = scan_constants(ns, 2);
  REQUIRE(res.rows.size() == ns.size());
  double min_seen = res.rows[0].ratio_luca;
  for (const auto& row : res.rows) {
    CHECK(row.ratio_luca > 0.0);
    if (row.ratio_thm1) CHECK(*row.ratio_thm1 > 0.0);
    min_seen = std::min(min_seen, row.ratio_luca);
  }
  CHECK(res.min_ratio_luca == min_seen);
  // Spot-check exactness against direct recomputation at a few n.
  for (std::uint64_t n : {2ULL, 37ULL, 150ULL, 300ULL}) {
    CHECK(res.rows[n - 2].s_b_factorial == digit_sum(digitbound::factorial(n), 2));
  }
}

TEST_CASE("scan reuses the running factorial across gaps correctly") {
  // Stepped requests exercise the incremental product path; compare a
  // scattered scan against independent direct computation.
  std::vector<std::uint64_t> ns{100, 104, 200, 1000, 1003};
  ScanResult res = scan_constants(ns, 10);
  REQUIRE(res.rows.size() == ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    CHECK(res.rows[i].s_b_factorial == digit_sum(digitbound::factorial(ns[i]), 10));
    CHECK(res.rows[i].n == ns[i]);
    CHECK(res.rows[i].b == 10);
  }
}

TEST_CASE("scan input validation and guard") {
  CHECK_THROWS_AS(scan_constants({1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(scan_constants({0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(scan_constants({2000000}, 2), RefusalError);
}

TEST_CASE("serialization carries every field and omits absent optionals") {
  VerifyOptions opts;
  opts.compute_factorial = false;
  opts.compute_lcm = false;
  VerificationReport rep = verify_theorem(Natural(6561), 2, opts);
  std::string json = digitbound::to_json(rep, 2);
  CHECK(json.find("\"n\": \"6561\"") != std::string::npos);
  CHECK(json.find("\"overall\": true") != std::string::npos);
  CHECK(json.find("s_b_factorial") == std::string::npos);
  CHECK(json.find("s_b_lcm") == std::string::npos);
  CHECK(json.find("\"witness\"") != std::string::npos);

  VerificationReport full = verify_theorem(Natural(6561), 2);
  std::string fjson = digitbound::to_json(full, 2);
  CHECK(fjson.find("\"s_b_factorial\": \"33617\"") != std::string::npos);
  CHECK(fjson.find("\"s_b_lcm\": \"4720\"") != std::string::npos);
}

TEST_CASE("scan CSV is stable across identical runs") {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 2; n <= 64; ++n) ns.push_back(n);
  std::string first = digitbound::to_csv(scan_constants(ns, 2).rows);
  std::string second = digitbound::to_csv(scan_constants(ns, 2).rows);
  CHECK(first == second);
  CHECK(first.substr(0, first.find('\n')) == "n,b,s_b_factorial,ratio_luca,ratio_thm1");
  CHECK(first.find('\r') == std::string::npos);
}
