#include "nimfrac/geometry.hpp"

#include <algorithm>
#include <string>

#include "nimfrac/errors.hpp"

namespace nimfrac {

PointSet restrict(const PointSet& ps, unsigned m) {
  if (m > ps.exponent()) {
    throw Error(ErrorCode::bad_request,
                "cannot restrict exponent " + std::to_string(ps.exponent()) +
                    " set to " + std::to_string(m));
  }
  const Coord limit = Coord{1} << m;
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto row = ps[i];
    if (std::ranges::all_of(row, [&](Coord c) { return c < limit; })) {
      flat.insert(flat.end(), row.begin(), row.end());
    }
  }
  return PointSet::from_flat(ps.dimension(), m, std::move(flat));
}

ShadowGrid::ShadowGrid(unsigned source_dimension, unsigned exponent,
                       unsigned dropped_axis, Budget budget)
    : source_dimension_(source_dimension),
      exponent_(exponent),
      dropped_axis_(dropped_axis) {
  if (source_dimension == 0) {
    throw Error(ErrorCode::bad_request, "dimension must be at least 1");
  }
  if (dropped_axis >= source_dimension) {
    throw Error(ErrorCode::bad_request,
                "axis " + std::to_string(dropped_axis) +
                    " out of range for dimension " +
                    std::to_string(source_dimension));
  }
  if (exponent > kMaxExponent) {
    throw Error(ErrorCode::bad_request, "bounding exponent too large");
  }
  const std::uint64_t cells_exponent =
      std::uint64_t{exponent} * (source_dimension - 1);
  require_budget(cells_exponent, budget);
  counts_.assign(std::size_t{1} << cells_exponent, 0);
}

std::size_t ShadowGrid::cell_index(std::span<const Coord> cell) const {
  if (cell.size() != reduced_dimension()) {
    throw Error(ErrorCode::bad_request, "cell has the wrong dimension");
  }
  const Coord limit = Coord{1} << exponent_;
  std::size_t index = 0;
  for (Coord c : cell) {
    if (c >= limit) {
      throw Error(ErrorCode::bad_request, "cell coordinate out of range");
    }
    index = (index << exponent_) | c;
  }
  return index;
}

std::vector<Coord> ShadowGrid::cell(std::size_t index) const {
  std::vector<Coord> out(reduced_dimension());
  const Coord mask = (Coord{1} << exponent_) - 1;
  for (std::size_t j = out.size(); j-- > 0;) {
    out[j] = index & mask;
    index >>= exponent_;
  }
  return out;
}

std::uint64_t ShadowGrid::count_at(std::span<const Coord> cell) const {
  return counts_[cell_index(cell)];
}

void ShadowGrid::add_cell(std::span<const Coord> cell) {
  ++counts_[cell_index(cell)];
}

void ShadowGrid::add_point(std::span<const Coord> point) {
  if (point.size() != source_dimension_) {
    throw Error(ErrorCode::bad_request, "point has the wrong dimension");
  }
  const Coord limit = Coord{1} << exponent_;
  std::size_t index = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] >= limit) {
      throw Error(ErrorCode::bad_request, "point coordinate out of range");
    }
    if (j == dropped_axis_) continue;
    index = (index << exponent_) | point[j];
  }
  ++counts_[index];
}

std::uint64_t ShadowGrid::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

bool ShadowGrid::all_ones() const noexcept {
  return std::ranges::all_of(counts_, [](std::uint64_t c) { return c == 1; });
}

ShadowGrid shadow(IterationSpec spec, unsigned axis, Budget budget) {
  spec.validate();
  ShadowGrid grid(spec.dimension, spec.exponent, axis, budget);
  if (axis + 1 == spec.dimension) {
    const std::size_t prefix = spec.dimension - 1;
    stream_points(spec, [&](std::span<const Coord> p) {
      grid.add_cell(p.first(prefix));
    });
  } else {
    stream_points(spec, [&](std::span<const Coord> p) { grid.add_point(p); });
  }
  return grid;
}

bool verify_self_similarity(IterationSpec spec, Budget budget) {
  spec.validate();
  if (spec.exponent < 2) {
    throw Error(ErrorCode::bad_request,
                "self-similarity needs n >= 2 to compare against D^{n-1}");
  }
  const PointSet outer = iterate_recursive(spec, budget);
  const PointSet inner =
      iterate_recursive({spec.dimension, spec.exponent - 1}, budget);
  return restrict(outer, spec.exponent - 1) == inner;
}

}  // namespace nimfrac
