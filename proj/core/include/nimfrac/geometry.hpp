#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nimfrac/fractal.hpp"

namespace nimfrac {

/// Subset of `ps` with every coordinate < 2^m, tagged with exponent m.
/// Throws Error(bad_request) if m > ps.exponent().
PointSet restrict(const PointSet& ps, unsigned m);

/// Hit counts of a d-dimensional point set projected along one axis onto the
/// full (d-1)-dimensional grid [0, 2^n)^{d-1}. Cells are indexed row-major
/// with the first kept coordinate most significant.
class ShadowGrid {
 public:
  /// Empty grid. Throws BudgetExceeded if (d-1)n exceeds the budget.
  ShadowGrid(unsigned source_dimension, unsigned exponent,
             unsigned dropped_axis, Budget budget = {});

  unsigned source_dimension() const noexcept { return source_dimension_; }
  unsigned reduced_dimension() const noexcept { return source_dimension_ - 1; }
  unsigned exponent() const noexcept { return exponent_; }
  unsigned dropped_axis() const noexcept { return dropped_axis_; }

  std::size_t cell_count() const noexcept { return counts_.size(); }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t count(std::size_t cell_index) const { return counts_.at(cell_index); }
  std::uint64_t count_at(std::span<const Coord> cell) const;

  std::size_t cell_index(std::span<const Coord> cell) const;
  std::vector<Coord> cell(std::size_t index) const;

  /// Projects a full d-dimensional point and counts it.
  void add_point(std::span<const Coord> point);
  /// Counts a (d-1)-dimensional cell directly.
  void add_cell(std::span<const Coord> cell);

  std::uint64_t total() const noexcept;
  bool all_ones() const noexcept;

  friend bool operator==(const ShadowGrid&, const ShadowGrid&) = default;

 private:
  unsigned source_dimension_;
  unsigned exponent_;
  unsigned dropped_axis_;
  std::vector<std::uint64_t> counts_;
};

/// Projects D^n along `axis`. Dropping the last axis reads each streamed
/// prefix as its cell directly; any other axis projects each streamed point.
ShadowGrid shadow(IterationSpec spec, unsigned axis, Budget budget = {});

/// True iff restrict(D^n, n-1) == D^{n-1}. Requires n >= 2.
bool verify_self_similarity(IterationSpec spec, Budget budget = {});

}  // namespace nimfrac
