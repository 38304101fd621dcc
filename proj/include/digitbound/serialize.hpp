#pragma once

#include <string>
#include <vector>

#include "digitbound/verifier.hpp"
#include "digitbound/witness.hpp"

namespace digitbound {

// JSON renderings of the report types. Key order is fixed, numbers that can
// exceed 64 bits travel as decimal strings, and absent optional fields are
// omitted entirely. indent < 0 yields the compact single-line form.
std::string to_json(const Witness& w, int indent = 2);
std::string to_json(const VerificationReport& report, int indent = 2);
std::string to_json(const std::vector<ScanRow>& rows, int indent = 2);

// Scan rows as CSV: header n,b,s_b_factorial,ratio_luca,ratio_thm1 with LF
// line endings. Ratios use %.12g so identical scans serialize identically;
// ratio_thm1 is empty for rows where it is undefined.
std::string to_csv(const std::vector<ScanRow>& rows);

}  // namespace digitbound
