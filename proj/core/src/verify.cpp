#include "nimfrac/verify.hpp"

#include <algorithm>
#include <future>

#include "nimfrac/errors.hpp"
#include "nimfrac/nim.hpp"

namespace nimfrac {

std::optional<std::uint64_t> expected_cardinality(IterationSpec spec) {
  spec.validate();
  const std::uint64_t e = std::uint64_t{spec.exponent} * (spec.dimension - 1);
  if (e >= 64) return std::nullopt;
  return std::uint64_t{1} << e;
}

VerificationReport compare_point_sets(const PointSet& recursive,
                                      const PointSet& filtered) {
  VerificationReport report;
  report.dimension = recursive.dimension();
  report.exponent = recursive.exponent();
  report.cardinality_recursive = recursive.size();
  report.cardinality_filtered = filtered.size();
  if (report.exponent >= 1) {
    report.expected_cardinality =
        expected_cardinality({report.dimension, report.exponent}).value_or(0);
  }

  const std::size_t common = std::min(recursive.size(), filtered.size());
  const bool same_shape = recursive.dimension() == filtered.dimension();
  for (std::size_t i = 0; i < common && same_shape; ++i) {
    if (!std::ranges::equal(recursive[i], filtered[i])) {
      report.first_discrepancy =
          Discrepancy{i, recursive.position(i), filtered.position(i)};
      break;
    }
  }
  if (!report.first_discrepancy && !same_shape) {
    report.first_discrepancy = Discrepancy{
        0, recursive.empty() ? std::nullopt : std::optional(recursive.position(0)),
        filtered.empty() ? std::nullopt : std::optional(filtered.position(0))};
  }
  if (!report.first_discrepancy && recursive.size() != filtered.size()) {
    Discrepancy gap{common, std::nullopt, std::nullopt};
    if (common < recursive.size()) gap.recursive = recursive.position(common);
    if (common < filtered.size()) gap.filtered = filtered.position(common);
    report.first_discrepancy = gap;
  }
  report.equal = !report.first_discrepancy.has_value();
  return report;
}

VerificationReport verify_theorem(IterationSpec spec, Budget budget) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const PointSet recursive = iterate_recursive(spec, budget);
  const PointSet filtered = generate_filtered(spec, budget);
  VerificationReport report = compare_point_sets(recursive, filtered);
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

std::optional<Position> find_inductive_counterexample(IterationSpec spec,
                                                      Budget budget) {
  spec.validate();
  if (spec.exponent + 1 > kMaxExponent) {
    throw Error(ErrorCode::bad_request, "n + 1 exceeds the maximum exponent");
  }
  const unsigned d = spec.dimension;
  const unsigned n = spec.exponent;
  require_budget(std::uint64_t{n + 1} * d, budget);

  const Coord limit = Coord{1} << (n + 1);
  std::vector<Coord> x(d, 0);
  for (;;) {
    const Position point(x);
    const auto [high, low] = split_high_low(point, n);
    const auto high_weight = std::ranges::count_if(
        high.coords(), [](Coord c) { return c != 0; });
    const bool decomposed = high_weight % 2 == 0 &&
                            classify(low) == Classification::P;
    const bool in_next = classify(point) == Classification::P;
    if (decomposed != in_next) return point;

    std::size_t i = d;
    for (;;) {
      if (i == 0) return std::nullopt;
      --i;
      if (++x[i] < limit) break;
      x[i] = 0;
    }
  }
}

bool verify_inductive_step(IterationSpec spec, Budget budget) {
  return !find_inductive_counterexample(spec, budget).has_value();
}

std::vector<VerificationReport> verify_sweep(const SweepConfig& config) {
  std::vector<IterationSpec> cells;
  for (unsigned d = 1; d <= config.max_dimension; ++d) {
    for (unsigned n = 1; n <= config.max_exponent; ++n) {
      if (std::uint64_t{n} * (d - 1) <= config.budget_exponent) {
        cells.push_back({d, n});
      }
    }
  }
  // A cell admitted by the sweep gets room for the nd candidates of the
  // filtered generator.
  auto run = [&](IterationSpec spec) {
    return verify_theorem(spec, Budget{config.budget_exponent + spec.exponent});
  };

  std::vector<VerificationReport> reports;
  reports.reserve(cells.size());
  if (config.parallel) {
    std::vector<std::future<VerificationReport>> pending;
    pending.reserve(cells.size());
    for (const auto& spec : cells) {
      pending.push_back(std::async(std::launch::async, run, spec));
    }
    for (auto& f : pending) reports.push_back(f.get());
  } else {
    for (const auto& spec : cells) reports.push_back(run(spec));
  }
  return reports;
}

}  // namespace nimfrac
