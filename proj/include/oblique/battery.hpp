#pragma once

// The seeded invariant battery behind `check-suite`.

#include <cstdint>
#include <string>
#include <vector>

namespace oblique::battery {

// value is the measured defect already divided by its scale, so it compares
// directly against tolerance. Boolean checks record 0 (holds) or 1.
struct CheckRecord {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

struct CaseReport {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  // Compatibility outcomes on the constructed instances, for the batch rates.
  bool compat_feasible = false;
  bool fiber_feasible = false;
};

// One case: every invariant family at dimension n (n >= 2). Never throws;
// a domain error inside a family becomes a failing "<family>_error" record.
CaseReport run_case(std::size_t n, std::uint64_t seed, std::size_t index);

// All cases, OpenMP-parallel over cases; reports come back in index order.
std::vector<CaseReport> run(std::size_t n, std::uint64_t seed, std::size_t cases);

// Reference: the same loop, one case after another.
std::vector<CaseReport> run_serial(std::size_t n, std::uint64_t seed, std::size_t cases);

struct Summary {
  std::vector<CheckRecord> checks;  // worst value per name, first-seen order
  std::size_t failures = 0;
  double compat_feasible_rate = 0;
  double fiber_feasible_rate = 0;
  bool pass = false;
};

// Minimum fraction of constructed instances that must come back feasible.
inline constexpr double kFeasibleRate = 0.98;

Summary summarize(const std::vector<CaseReport>& reports);

}  // namespace oblique::battery
