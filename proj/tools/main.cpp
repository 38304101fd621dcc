#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "digitbound/deadline.hpp"
#include "digitbound/digits.hpp"
#include "digitbound/errors.hpp"
#include "digitbound/natural.hpp"
#include "digitbound/products.hpp"
#include "digitbound/serialize.hpp"
#include "digitbound/verifier.hpp"
#include "digitbound/witness.hpp"

namespace db = digitbound;

namespace {

using steady = std::chrono::steady_clock;

double ms_since(steady::time_point start) {
  return std::chrono::duration<double, std::milli>(steady::now() - start).count();
}

std::string format_ms(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

std::string format_ratio(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

// Color only on a terminal, and never when NO_COLOR is set.
bool use_color() {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return ::isatty(1) != 0;
}

std::string paint(const std::string& text, const char* code) {
  if (!use_color()) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

std::string pass_tag(bool pass) {
  return pass ? paint("PASS", "32") : paint("FAIL", "31");
}

struct DigitsumArgs {
  std::uint64_t factorial_n = 0;
  std::uint64_t lcm_n = 0;
  std::string literal;
  bool have_factorial = false;
  bool have_lcm = false;
  bool have_literal = false;
  std::uint64_t base = 10;
  bool json = false;
  std::uint64_t max_factorial_n = 1'000'000;
  std::uint64_t max_lcm_n = 10'000'000;
};

int run_digitsum(const DigitsumArgs& a) {
  auto start = steady::now();
  db::Natural value;
  std::string descriptor;
  if (a.have_factorial) {
    if (a.factorial_n > a.max_factorial_n)
      throw db::RefusalError("factorial refused: n = " + std::to_string(a.factorial_n) +
                             " exceeds the factorial guard " + std::to_string(a.max_factorial_n));
    value = db::factorial(a.factorial_n);
    descriptor = std::to_string(a.factorial_n) + "!";
  } else if (a.have_lcm) {
    if (a.lcm_n > a.max_lcm_n)
      throw db::RefusalError("lcm refused: n = " + std::to_string(a.lcm_n) +
                             " exceeds the lcm guard " + std::to_string(a.max_lcm_n));
    value = db::lcm_upto(a.lcm_n);
    descriptor = "lcm(1.." + std::to_string(a.lcm_n) + ")";
  } else if (a.have_literal) {
    value = db::Natural(a.literal);
    descriptor = a.literal;
  } else {
    throw std::invalid_argument("digitsum: pass one of --factorial, --lcm, --literal");
  }
  db::Natural sum = db::digit_sum(value, a.base);
  double elapsed = ms_since(start);
  if (a.json) {
    nlohmann::ordered_json out;
    out["input"] = descriptor;
    out["base"] = a.base;
    if (sum.fits_u64())
      out["digit_sum"] = sum.to_u64();
    else
      out["digit_sum"] = sum.to_decimal();
    out["elapsed_ms"] = elapsed;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << sum.to_decimal() << "\n";
  }
  return 0;
}

struct WitnessArgs {
  std::string x_text;
  std::string mode = "pow2";
};

int run_witness(const WitnessArgs& a) {
  db::Rational x = db::Rational::from_decimal(a.x_text);
  db::WitnessMode mode = a.mode == "smooth" ? db::WitnessMode::smooth : db::WitnessMode::pow2;
  db::Witness w = db::construct_witness(x, mode);
  std::cout << db::to_json(w, 2) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string n_text;
  std::uint64_t base = 10;
  bool json = false;
  std::string override_x_text;
  db::VerifyOptions opts;
};

void print_report(const db::VerificationReport& rep) {
  std::cout << "n = " << rep.n.to_decimal() << ", base " << rep.b
            << ", x = " << rep.x.to_string() << "\n";
  std::cout << "witness m = " << rep.witness.m.to_decimal()
            << ", phi(m) = " << rep.witness.phi_m.to_decimal()
            << ", multiplier " << rep.witness.multiplier.to_decimal() << "\n";
  for (const db::CheckResult& check : rep.checks) {
    std::cout << "  [" << pass_tag(check.pass) << "] " << check.name << ": "
              << check.statement << " (" << format_ms(check.elapsed_ms) << " ms)\n";
  }
  std::cout << "digit-sum lower bound m = " << rep.m_lower_bound.to_decimal() << "\n";
  if (rep.s_b_factorial)
    std::cout << "s_" << rep.b << "(n!) = " << rep.s_b_factorial->to_decimal() << "\n";
  if (rep.s_b_lcm)
    std::cout << "s_" << rep.b << "(lcm(1..n)) = " << rep.s_b_lcm->to_decimal() << "\n";
  std::cout << "overall: " << pass_tag(rep.overall) << "\n";
}

int run_verify(const VerifyArgs& a) {
  db::Natural n(a.n_text);
  db::VerifyOptions opts = a.opts;
  if (!a.override_x_text.empty()) opts.override_x = db::Rational::from_decimal(a.override_x_text);
  db::VerificationReport rep = db::verify_theorem(n, a.base, opts);
  if (a.json)
    std::cout << db::to_json(rep, 2) << "\n";
  else
    print_report(rep);
  if (!rep.overall) {
    for (const db::CheckResult& check : rep.checks) {
      if (!check.pass) {
        std::cerr << "digitbound: first failing link: " << check.name << "\n";
        break;
      }
    }
  }
  return rep.overall ? 0 : 1;
}

struct ScanArgs {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t step = 1;
  double factor = 0.0;
  bool have_factor = false;
  std::uint64_t base = 10;
  std::string csv_path;
  bool json = false;
};

int run_scan(const ScanArgs& a) {
  if (a.min > a.max) throw std::invalid_argument("scan: empty range, --min exceeds --max");
  constexpr std::size_t kMaxRows = 2'000'000;
  std::vector<std::uint64_t> values;
  auto push = [&values](std::uint64_t n) {
    if (values.size() >= kMaxRows)
      throw db::RefusalError("scan refused: range yields more than " +
                             std::to_string(kMaxRows) + " rows");
    values.push_back(n);
  };
  if (a.have_factor) {
    if (!(a.factor > 1.0)) throw std::invalid_argument("scan: --factor must exceed 1");
    for (std::uint64_t cur = a.min; cur <= a.max;) {
      push(cur);
      double next = std::floor(static_cast<double>(cur) * a.factor);
      std::uint64_t jumped =
          next >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() - 1
                         : static_cast<std::uint64_t>(next);
      cur = std::max(cur + 1, jumped);
    }
  } else {
    if (a.step == 0) throw std::invalid_argument("scan: --step must be >= 1");
    for (std::uint64_t cur = a.min;; cur += a.step) {
      push(cur);
      if (a.max - cur < a.step) break;
    }
  }
  db::ScanResult result = db::scan_constants(values, a.base);
  if (!a.csv_path.empty()) {
    std::ofstream file(a.csv_path, std::ios::binary);
    if (!file) throw std::runtime_error("scan: cannot open " + a.csv_path);
    file << db::to_csv(result.rows);
  } else if (a.json) {
    std::cout << db::to_json(result.rows, 2) << "\n";
  } else {
    std::cout << db::to_csv(result.rows);
  }
  std::cerr << "min ratio_luca = " << format_ratio(result.min_ratio_luca) << "\n";
  if (result.min_ratio_thm1)
    std::cerr << "min ratio_thm1 = " << format_ratio(*result.min_ratio_thm1) << "\n";
  else
    std::cerr << "min ratio_thm1 = n/a (no scanned n reaches 16)\n";
  return 0;
}

struct BenchArgs {
  std::string kernel;
  std::vector<std::uint64_t> sizes;
  double timeout_s = 30.0;
  std::string csv_path;
  std::uint64_t max_factorial_n = 1'000'000;
  std::uint64_t max_lcm_n = 10'000'000;
};

int run_bench(const BenchArgs& a) {
  for (std::uint64_t size : a.sizes)
    if (size == 0) throw std::invalid_argument("bench: sizes must be >= 1");
  std::uint64_t guard = a.kernel == "lcm" ? a.max_lcm_n : a.max_factorial_n;
  for (std::uint64_t size : a.sizes)
    if (size > guard)
      throw db::RefusalError("bench refused: size " + std::to_string(size) +
                             " exceeds the " + a.kernel + " guard " + std::to_string(guard));
  auto budget = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::duration<double>(a.timeout_s));
  std::string csv = "kernel,size,optimized_ms,baseline_ms\n";
  std::cout << "kernel      size        optimized_ms  baseline_ms\n";
  for (std::uint64_t size : a.sizes) {
    double optimized_ms = 0.0;
    std::string baseline_cell;
    if (a.kernel == "factorial") {
      auto start = steady::now();
      db::Natural fast = db::factorial(size, db::Deadline::after(budget));
      optimized_ms = ms_since(start);
      try {
        start = steady::now();
        db::Natural slow = db::factorial_sequential(size, db::Deadline::after(budget));
        baseline_cell = format_ms(ms_since(start));
        if (slow != fast) throw std::logic_error("bench: factorial kernels disagree");
      } catch (const db::Timeout&) {
        baseline_cell = "timeout";
      }
    } else if (a.kernel == "radix") {
      db::Natural input = db::factorial(size);
      auto start = steady::now();
      db::DigitVector fast = db::to_digits(input, 10, db::Deadline::after(budget));
      optimized_ms = ms_since(start);
      try {
        start = steady::now();
        db::DigitVector slow = db::to_digits_schoolbook(input, 10, db::Deadline::after(budget));
        baseline_cell = format_ms(ms_since(start));
        if (slow.digits != fast.digits) throw std::logic_error("bench: radix kernels disagree");
      } catch (const db::Timeout&) {
        baseline_cell = "timeout";
      }
    } else {
      auto start = steady::now();
      db::Natural fast = db::lcm_upto(size, db::Deadline::after(budget));
      optimized_ms = ms_since(start);
      try {
        start = steady::now();
        db::Natural slow = db::lcm_upto_oracle(size, db::Deadline::after(budget));
        baseline_cell = format_ms(ms_since(start));
        if (slow != fast) throw std::logic_error("bench: lcm kernels disagree");
      } catch (const db::Timeout&) {
        baseline_cell = "timeout";
      }
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-11s %-11llu %-13s %s\n", a.kernel.c_str(),
                  static_cast<unsigned long long>(size), format_ms(optimized_ms).c_str(),
                  baseline_cell.c_str());
    std::cout << line;
    csv += a.kernel + "," + std::to_string(size) + "," + format_ms(optimized_ms) + "," +
           baseline_cell + "\n";
  }
  if (!a.csv_path.empty()) {
    std::ofstream file(a.csv_path, std::ios::binary);
    if (!file) throw std::runtime_error("bench: cannot open " + a.csv_path);
    file << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit-sum lower bounds for n! and lcm(1..n) via totient-preimage witnesses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "digitbound 0.1.0");

  DigitsumArgs ds;
  CLI::App* ds_cmd = app.add_subcommand("digitsum", "digit sum of n!, lcm(1..n), or a literal");
  CLI::Option* ds_f = ds_cmd->add_option("--factorial", ds.factorial_n, "use n! for this n");
  CLI::Option* ds_l = ds_cmd->add_option("--lcm", ds.lcm_n, "use lcm(1..n) for this n");
  CLI::Option* ds_v = ds_cmd->add_option("--literal", ds.literal, "use this decimal value");
  ds_f->excludes(ds_l)->excludes(ds_v);
  ds_l->excludes(ds_v);
  ds_cmd->add_option("--base", ds.base, "digit base, >= 2")->capture_default_str();
  ds_cmd->add_flag("--json", ds.json, "emit {input, base, digit_sum, elapsed_ms}");
  ds_cmd->add_option("--max-factorial-n", ds.max_factorial_n, "factorial resource guard")
      ->capture_default_str();
  ds_cmd->add_option("--max-lcm-n", ds.max_lcm_n, "lcm resource guard")->capture_default_str();

  WitnessArgs wa;
  CLI::App* w_cmd = app.add_subcommand("witness", "construct a totient-preimage witness");
  w_cmd->add_option("--x", wa.x_text, "budget: a decimal like 10, 1.5, or a fraction 7/8")
      ->required();
  w_cmd->add_option("--mode", wa.mode, "multiplier family")
      ->check(CLI::IsMember({"pow2", "smooth"}))
      ->capture_default_str();

  VerifyArgs va;
  CLI::App* v_cmd = app.add_subcommand("verify", "run the full certification for one (n, base)");
  v_cmd->add_option("--n", va.n_text, "upper end of the range, decimal")->required();
  v_cmd->add_option("--base", va.base, "digit base, >= 2")->capture_default_str();
  v_cmd->add_flag("--factorial,!--no-factorial", va.opts.compute_factorial,
                  "also check n! divisibility and digit sum (default on)");
  v_cmd->add_flag("--lcm,!--no-lcm", va.opts.compute_lcm,
                  "also check lcm(1..n) divisibility and digit sum (default on)");
  v_cmd->add_flag("--json", va.json, "emit the report as JSON");
  v_cmd->add_option("--override-x", va.override_x_text,
                    "replace the derived budget; the exact gate still applies");
  v_cmd->add_option("--max-factorial-n", va.opts.max_factorial_n, "factorial resource guard")
      ->capture_default_str();
  v_cmd->add_option("--max-lcm-n", va.opts.max_lcm_n, "lcm resource guard")
      ->capture_default_str();

  ScanArgs sa;
  CLI::App* s_cmd = app.add_subcommand("scan", "tabulate s_b(n!) and ratio diagnostics");
  s_cmd->add_option("--min", sa.min, "first n, >= 2")->required();
  s_cmd->add_option("--max", sa.max, "last n")->required();
  CLI::Option* s_step = s_cmd->add_option("--step", sa.step, "arithmetic stride (default 1)");
  CLI::Option* s_factor =
      s_cmd->add_option("--factor", sa.factor, "geometric stride: next = max(n+1, floor(n*factor))");
  s_step->excludes(s_factor);
  s_factor->excludes(s_step);
  s_cmd->add_option("--base", sa.base, "digit base, >= 2")->capture_default_str();
  CLI::Option* s_csv = s_cmd->add_option("--csv", sa.csv_path, "write rows to this file");
  CLI::Option* s_json = s_cmd->add_flag("--json", sa.json, "rows as a JSON array on stdout");
  s_csv->excludes(s_json);
  s_json->excludes(s_csv);

  BenchArgs ba;
  CLI::App* b_cmd = app.add_subcommand("bench", "time an optimized kernel against its baseline");
  b_cmd->add_option("--kernel", ba.kernel, "factorial, radix, or lcm")
      ->required()
      ->check(CLI::IsMember({"factorial", "radix", "lcm"}));
  b_cmd->add_option("--sizes", ba.sizes, "comma-separated sizes")->required()->delimiter(',');
  b_cmd->add_option("--timeout", ba.timeout_s, "per-run cap in seconds")->capture_default_str();
  b_cmd->add_option("--csv", ba.csv_path, "also write the table to this file");
  b_cmd->add_option("--max-factorial-n", ba.max_factorial_n, "factorial/radix resource guard")
      ->capture_default_str();
  b_cmd->add_option("--max-lcm-n", ba.max_lcm_n, "lcm resource guard")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ds.have_factorial = ds_f->count() > 0;
  ds.have_lcm = ds_l->count() > 0;
  ds.have_literal = ds_v->count() > 0;
  sa.have_factor = s_factor->count() > 0;

  try {
    if (ds_cmd->parsed()) return run_digitsum(ds);
    if (w_cmd->parsed()) return run_witness(wa);
    if (v_cmd->parsed()) return run_verify(va);
    if (s_cmd->parsed()) return run_scan(sa);
    if (b_cmd->parsed()) return run_bench(ba);
  } catch (const db::RefusalError& e) {
    std::cerr << "digitbound: " << e.what() << "\n";
    return 1;
  } catch (const db::Timeout& e) {
    std::cerr << "digitbound: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "digitbound: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "digitbound: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
