#include "digitbound/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace digitbound {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json witness_node(const Witness& w) {
  ordered_json node;
  node["x"] = w.x.to_string();
  node["prime_count"] = w.prime_count;
  node["two_exponent"] = w.two_exponent;
  node["odd_part_primes"] = w.odd_part_primes;
  node["m"] = w.m.to_decimal();
  node["phi_m"] = w.phi_m.to_decimal();
  node["multiplier"] = w.multiplier.to_decimal();
  node["trace"] = w.trace;
  return node;
}

ordered_json row_node(const ScanRow& row) {
  ordered_json node;
  node["n"] = row.n;
  node["b"] = row.b;
  node["s_b_factorial"] = row.s_b_factorial.to_decimal();
  node["ratio_luca"] = row.ratio_luca;
  if (row.ratio_thm1)
    node["ratio_thm1"] = *row.ratio_thm1;
  else
    node["ratio_thm1"] = nullptr;
  return node;
}

std::string format_ratio(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

std::string to_json(const Witness& w, int indent) {
  return witness_node(w).dump(indent);
}

std::string to_json(const VerificationReport& report, int indent) {
  ordered_json node;
  node["n"] = report.n.to_decimal();
  node["b"] = report.b;
  node["x"] = report.x.to_string();
  node["witness"] = witness_node(report.witness);
  ordered_json checks = ordered_json::array();
  for (const CheckResult& check : report.checks) {
    ordered_json entry;
    entry["name"] = check.name;
    entry["statement"] = check.statement;
    entry["pass"] = check.pass;
    entry["elapsed_ms"] = check.elapsed_ms;
    checks.push_back(std::move(entry));
  }
  node["checks"] = std::move(checks);
  node["m_lower_bound"] = report.m_lower_bound.to_decimal();
  if (report.s_b_factorial) node["s_b_factorial"] = report.s_b_factorial->to_decimal();
  if (report.s_b_lcm) node["s_b_lcm"] = report.s_b_lcm->to_decimal();
  node["overall"] = report.overall;
  return node.dump(indent);
}

std::string to_json(const std::vector<ScanRow>& rows, int indent) {
  ordered_json arr = ordered_json::array();
  for (const ScanRow& row : rows) arr.push_back(row_node(row));
  return arr.dump(indent);
}

std::string to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "n,b,s_b_factorial,ratio_luca,ratio_thm1\n";
  for (const ScanRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.b);
    out += ',';
    out += row.s_b_factorial.to_decimal();
    out += ',';
    out += format_ratio(row.ratio_luca);
    out += ',';
    if (row.ratio_thm1) out += format_ratio(*row.ratio_thm1);
    out += '\n';
  }
  return out;
}

}  // namespace digitbound
