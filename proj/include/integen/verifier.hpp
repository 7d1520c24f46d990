#pragma once

#include <string>
#include <utility>
#include <vector>

#include "integen/liouville.hpp"
#include "integen/records.hpp"
#include "integen/tower.hpp"

namespace integen {

struct VerifyReport {
  bool pass = false;
  FieldElem residual;  // D(integral) - integrand, canonical; zero iff pass
};

/// Exact symbolic check: D(integral) - integrand must canonicalize to zero.
/// Additive constants in the integral never affect the outcome.
inline VerifyReport verify_pair(const FieldElem& integrand, const LiouvilleForm& integral,
                                const Tower& t) {
  for (const auto& [c, v] : integral.logs)
    if (v.is_zero_val()) throw std::domain_error("verify_pair: log of zero argument");
  VerifyReport r;
  r.residual = canonicalize(derive(integral, t) - integrand);
  r.pass = r.residual.is_zero_val();
  return r;
}

struct DatasetSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::pair<std::size_t, std::string>> failures;  // (line, reason)

  bool all_passed() const { return failed == 0; }
};

/// Re-verifies every record of a loaded dataset; unreadable records count as
/// failures with their parse reason. Deterministic, ordered by line.
inline DatasetSummary verify_dataset(const std::vector<RecordLoad>& records) {
  DatasetSummary summary;
  for (const auto& load : records) {
    if (!load.record) {
      ++summary.failed;
      summary.failures.emplace_back(load.line, "unreadable record: " + load.error);
      continue;
    }
    try {
      const DatasetRecord& rec = *load.record;
      Tower t = parse_tower_description(rec.tower);
      ExprPtr integrand_expr = from_prefix(rec.integrand_prefix);
      ExprPtr integral_expr = from_prefix(rec.integral_prefix);
      FieldElem integrand = expr_to_elem(integrand_expr, t);
      LiouvilleForm integral = expr_to_liouville(integral_expr, t);
      VerifyReport rep = verify_pair(integrand, integral, t);
      if (rep.pass) {
        ++summary.passed;
      } else {
        ++summary.failed;
        summary.failures.emplace_back(load.line, "derivative residual is nonzero");
      }
    } catch (const std::exception& e) {
      ++summary.failed;
      summary.failures.emplace_back(load.line, e.what());
    }
  }
  return summary;
}

}  // namespace integen
