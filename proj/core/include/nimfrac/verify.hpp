#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "nimfrac/fractal.hpp"

namespace nimfrac {

/// First index at which the two sorted sequences differ. A side is empty
/// when that sequence ended first.
struct Discrepancy {
  std::size_t index = 0;
  std::optional<Position> recursive;
  std::optional<Position> filtered;
};

/// Outcome of comparing D^n against P_n for one (d, n).
struct VerificationReport {
  unsigned dimension = 0;
  unsigned exponent = 0;
  bool equal = false;
  std::uint64_t cardinality_recursive = 0;
  std::uint64_t cardinality_filtered = 0;
  std::uint64_t expected_cardinality = 0;
  std::chrono::nanoseconds elapsed{0};
  std::optional<Discrepancy> first_discrepancy;
};

/// 2^(n(d-1)), or nullopt if that overflows 64 bits.
std::optional<std::uint64_t> expected_cardinality(IterationSpec spec);

/// Element-wise comparison of two canonical point sets.
VerificationReport compare_point_sets(const PointSet& recursive,
                                      const PointSet& filtered);

/// Builds D^n by recursion and P_n by filtering, then compares them.
VerificationReport verify_theorem(IterationSpec spec, Budget budget = {});

/// Returns the first x in [0, 2^{n+1})^d for which "x in P_{n+1}" differs from
/// "high part of x has even weight and low part of x is in P_n".
std::optional<Position> find_inductive_counterexample(IterationSpec spec,
                                                      Budget budget = {});

/// True iff find_inductive_counterexample finds nothing. Needs (n+1)d within
/// budget.
bool verify_inductive_step(IterationSpec spec, Budget budget = {});

struct SweepConfig {
  unsigned max_dimension = 5;
  unsigned max_exponent = 4;
  // Cells with n(d-1) above this are skipped.
  unsigned budget_exponent = 16;
  bool parallel = true;
};

/// verify_theorem over every admitted (d, n), ordered by d then n.
std::vector<VerificationReport> verify_sweep(const SweepConfig& config);

}  // namespace nimfrac
