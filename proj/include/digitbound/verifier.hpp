#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "digitbound/natural.hpp"
#include "digitbound/witness.hpp"

namespace digitbound {

struct CheckResult {
  std::string name;
  std::string statement;
  bool pass = false;
  double elapsed_ms = 0.0;
};

// The full run of the digit-sum argument for one (n, b): witness, every
// divisibility link, and the digit-sum conclusions. overall holds iff every
// executed check passed.
struct VerificationReport {
  Natural n;
  std::uint64_t b = 2;
  Rational x;
  Witness witness;
  std::vector<CheckResult> checks;
  Natural m_lower_bound;
  std::optional<Natural> s_b_factorial;
  std::optional<Natural> s_b_lcm;
  bool overall = false;
};

struct VerifyOptions {
  bool compute_factorial = true;
  bool compute_lcm = true;
  // Replaces the derived budget. Must still pass the exact chain
  // precondition; an oversized override yields a failing report.
  std::optional<Rational> override_x;
  std::uint64_t max_factorial_n = 1'000'000;
  std::uint64_t max_lcm_n = 10'000'000;
};

// Rational lower approximation of (1/8) log_(b+1) n, exact when n is a
// perfect power of b+1. Only steers the witness search: soundness rests on
// the exact integer gate pow(b+1, 8*phi(m)) <= n checked downstream.
// Throws RefusalError ("budget below 1") when n < (b+1)^8, naming the
// minimal admissible n.
Rational budget_x(const Natural& n, std::uint64_t b);

struct ChainOptions {
  // Guard for materializing lcm_upto(root_j); root_0 = floor(n^(1/4)) must
  // stay within it.
  std::uint64_t max_lcm_n = 10'000'000;
  // When the caller has computed lcm_upto(n), the squared-lambda link is
  // verified numerically against it; otherwise it is certified structurally.
  const Natural* lambda_n = nullptr;
};

// Every link of the divisibility argument for a 2^t * squarefree witness:
// the exact budget gate, per-class value bounds, pairwise coprimality,
// class products into root-bounded lcms, the squared-root-product bound,
// the lambda chaining, and the reconstruction of pow(b, m) - 1. A failed
// gate reports "witness too large for n" and short-circuits.
std::vector<CheckResult> verify_divisibility_chain(const Natural& n, std::uint64_t b,
                                                   const Witness& w,
                                                   const ChainOptions& opts = {});

// budget_x -> construct_witness_pow2 -> verify_divisibility_chain, then the
// direct conclusions: pow(b, m) - 1 divides lcm(1..n) and n!, and the digit
// sums s_b of both are at least m. Skipping a computation drops its checks
// and leaves the corresponding field empty; requesting one beyond its
// resource guard raises RefusalError.
VerificationReport verify_theorem(const Natural& n, std::uint64_t b,
                                  const VerifyOptions& opts = {});

struct ScanRow {
  std::uint64_t n = 0;
  std::uint64_t b = 0;
  Natural s_b_factorial;
  double ratio_luca = 0.0;                 // s_b(n!) / log n
  std::optional<double> ratio_thm1;        // s_b(n!) / (log n * log log log n), n >= 16
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double min_ratio_luca = 0.0;
  std::optional<double> min_ratio_thm1;    // running minima over the scan
};

// Exact s_b(n!) per requested n with the two ratio diagnostics. Each n must
// be >= 2. Consecutive or near-consecutive requests reuse the running
// factorial instead of recomputing from scratch.
ScanResult scan_constants(const std::vector<std::uint64_t>& n_values, std::uint64_t b);

}  // namespace digitbound
