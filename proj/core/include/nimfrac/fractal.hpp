#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nimfrac/nim.hpp"
#include "nimfrac/position.hpp"

namespace nimfrac {

// Largest supported bounding exponent: coordinates < 2^63 fit in a Coord with
// room for the 2^n limit itself.
inline constexpr unsigned kMaxExponent = 63;

/// Which iteration D^n of the d-dimensional demihypercube to build.
struct IterationSpec {
  unsigned dimension = 1;
  unsigned exponent = 1;

  /// Throws Error(bad_request) unless d >= 1 and 1 <= n <= kMaxExponent.
  void validate() const;

  friend bool operator==(const IterationSpec&, const IterationSpec&) = default;
};

/// Materializing operations refuse to produce more than 2^exponent items.
struct Budget {
  unsigned exponent = 24;
};

/// Throws BudgetExceeded if 2^required_exponent items exceed the budget.
void require_budget(std::uint64_t required_exponent, Budget budget);

/// A dimension-tagged set of lattice points with every coordinate < 2^n,
/// stored row-major in strict lexicographic order.
class PointSet {
 public:
  PointSet(unsigned dimension, unsigned exponent);

  /// Validates shape, bounds and strict ordering of `flat` (rows of length d).
  static PointSet from_flat(unsigned dimension, unsigned exponent,
                            std::vector<Coord> flat);

  unsigned dimension() const noexcept { return dimension_; }
  unsigned exponent() const noexcept { return exponent_; }
  std::size_t size() const noexcept { return flat_.size() / dimension_; }
  bool empty() const noexcept { return flat_.empty(); }

  std::span<const Coord> operator[](std::size_t i) const noexcept {
    return {flat_.data() + i * dimension_, dimension_};
  }
  Position position(std::size_t i) const { return Position((*this)[i]); }
  std::vector<Position> positions() const;

  std::span<const Coord> flat() const noexcept { return flat_; }

  /// Binary search; false for rows of the wrong dimension.
  bool contains(std::span<const Coord> row) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  unsigned dimension_;
  unsigned exponent_;
  std::vector<Coord> flat_;
};

/// Collects rows in any order, then sorts them into a canonical PointSet.
class PointSetBuilder {
 public:
  PointSetBuilder(unsigned dimension, unsigned exponent);

  void reserve(std::size_t rows);
  void add(std::span<const Coord> row);
  std::size_t size() const noexcept { return flat_.size() / dimension_; }

  struct Result {
    PointSet points;
    std::size_t duplicates_removed = 0;
  };
  Result build() &&;

 private:
  unsigned dimension_;
  unsigned exponent_;
  Coord limit_;
  std::vector<Coord> flat_;
};

/// D^1: all 0/1 vectors of length d with an even number of ones.
PointSet base_demihypercube(unsigned dimension, Budget budget = {});

/// D^n built by the recursion D^{k+1} = union over a in 2^k D^1 of a + D^k.
/// Needs n(d-1) within budget.
PointSet iterate_recursive(IterationSpec spec, Budget budget = {});

/// P_n: exhaustive filter of [0, 2^n)^d on nim-sum zero. Needs nd within
/// budget since every candidate is visited.
PointSet generate_filtered(IterationSpec spec, Budget budget = {});

/// Calls visit(std::span<const Coord>) once per point of D^n: each prefix
/// (a_1..a_{d-1}) in [0, 2^n)^{d-1} in lexicographic order, completed by
/// a_d = a_1 xor ... xor a_{d-1}. Uses O(d) memory and has no budget.
template <class Visitor>
void stream_points(IterationSpec spec, Visitor&& visit) {
  spec.validate();
  const std::size_t prefix = spec.dimension - 1;
  const Coord limit = Coord{1} << spec.exponent;
  std::vector<Coord> point(spec.dimension, 0);
  for (;;) {
    point[prefix] = nim_sum(std::span<const Coord>(point.data(), prefix));
    visit(std::span<const Coord>(point));
    std::size_t i = prefix;
    for (;;) {
      if (i == 0) return;
      --i;
      if (++point[i] < limit) break;
      point[i] = 0;
    }
  }
}

/// stream_points collected into a PointSet. Needs n(d-1) within budget.
PointSet generate_streamed(IterationSpec spec, Budget budget = {});

/// Membership in D via the nim-sum: true iff the coordinates xor to zero.
bool membership_nimsum(const Position& p) noexcept;

/// Membership in D via the high/low decomposition, with no xor involved.
/// Starting at the top bit of the largest coordinate, strip the 2^k bit from
/// every coordinate that has it; reject if an odd number did. What is left
/// after bit 1 must lie in D^1.
bool membership_recursive(const Position& p);

struct HighLowSplit {
  Position high;
  Position low;
};

/// Splits x = h + y at bit `bit`: h_j = 2^bit if x_j >= 2^bit, else 0.
/// Requires every coordinate < 2^(bit+1).
HighLowSplit split_high_low(const Position& p, unsigned bit);

}  // namespace nimfrac
