#include "nimfrac/fractal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nimfrac/errors.hpp"

namespace nimfrac {

namespace {

bool row_less(std::span<const Coord> a, std::span<const Coord> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool in_base_demihypercube(std::span<const Coord> coords) {
  std::size_t ones = 0;
  for (Coord c : coords) {
    if (c > 1) return false;
    ones += c;
  }
  return ones % 2 == 0;
}

}  // namespace

void IterationSpec::validate() const {
  if (dimension == 0) {
    throw Error(ErrorCode::bad_request, "dimension must be at least 1");
  }
  if (exponent == 0) {
    throw Error(ErrorCode::bad_request,
                "iteration index n must be at least 1 (D^0 is undefined)");
  }
  if (exponent > kMaxExponent) {
    throw Error(ErrorCode::bad_request,
                "iteration index n must be at most " +
                    std::to_string(kMaxExponent));
  }
}

void require_budget(std::uint64_t required_exponent, Budget budget) {
  if (required_exponent > budget.exponent) {
    throw BudgetExceeded(required_exponent, budget.exponent);
  }
}

PointSet::PointSet(unsigned dimension, unsigned exponent)
    : dimension_(dimension), exponent_(exponent) {
  if (dimension == 0) {
    throw Error(ErrorCode::bad_request, "dimension must be at least 1");
  }
  if (exponent > kMaxExponent) {
    throw Error(ErrorCode::bad_request, "bounding exponent too large");
  }
}

PointSet PointSet::from_flat(unsigned dimension, unsigned exponent,
                             std::vector<Coord> flat) {
  PointSet ps(dimension, exponent);
  if (flat.size() % dimension != 0) {
    throw Error(ErrorCode::bad_request,
                "flat coordinate count is not a multiple of the dimension");
  }
  const Coord limit = Coord{1} << exponent;
  for (Coord c : flat) {
    if (c >= limit) {
      throw Error(ErrorCode::bad_request,
                  "coordinate " + std::to_string(c) + " is not below 2^" +
                      std::to_string(exponent));
    }
  }
  ps.flat_ = std::move(flat);
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (!row_less(ps[i - 1], ps[i])) {
      throw Error(ErrorCode::bad_request,
                  "points are not in strict lexicographic order at row " +
                      std::to_string(i));
    }
  }
  return ps;
}

std::vector<Position> PointSet::positions() const {
  std::vector<Position> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(position(i));
  return out;
}

bool PointSet::contains(std::span<const Coord> row) const {
  if (row.size() != dimension_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (row_less((*this)[mid], row)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::ranges::equal((*this)[lo], row);
}

PointSetBuilder::PointSetBuilder(unsigned dimension, unsigned exponent)
    : dimension_(dimension), exponent_(exponent), limit_(0) {
  PointSet(dimension, exponent);  // validates
  limit_ = Coord{1} << exponent;
}

void PointSetBuilder::reserve(std::size_t rows) {
  flat_.reserve(rows * dimension_);
}

void PointSetBuilder::add(std::span<const Coord> row) {
  if (row.size() != dimension_) {
    throw Error(ErrorCode::bad_request, "row has the wrong dimension");
  }
  for (Coord c : row) {
    if (c >= limit_) {
      throw Error(ErrorCode::bad_request,
                  "coordinate " + std::to_string(c) + " is not below 2^" +
                      std::to_string(exponent_));
    }
  }
  flat_.insert(flat_.end(), row.begin(), row.end());
}

PointSetBuilder::Result PointSetBuilder::build() && {
  const std::size_t d = dimension_;
  const std::size_t rows = flat_.size() / d;
  std::size_t removed = 0;

  if (static_cast<std::uint64_t>(d) * exponent_ <= 64) {
    // Rows pack into one word with coordinate 0 in the high bits, so integer
    // order is lexicographic order.
    std::vector<std::uint64_t> keys(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < d; ++j) {
        key = (key << exponent_) | flat_[r * d + j];
      }
      keys[r] = key;
    }
    std::sort(keys.begin(), keys.end());
    const auto last = std::unique(keys.begin(), keys.end());
    removed = static_cast<std::size_t>(keys.end() - last);
    keys.erase(last, keys.end());

    const Coord mask = limit_ - 1;
    flat_.assign(keys.size() * d, 0);
    for (std::size_t r = 0; r < keys.size(); ++r) {
      std::uint64_t key = keys[r];
      for (std::size_t j = d; j-- > 0;) {
        flat_[r * d + j] = key & mask;
        key >>= exponent_;
      }
    }
  } else {
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row = [&](std::size_t r) {
      return std::span<const Coord>(flat_.data() + r * d, d);
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row_less(row(a), row(b)); });
    std::vector<Coord> sorted;
    sorted.reserve(flat_.size());
    for (std::size_t k = 0; k < rows; ++k) {
      auto r = row(order[k]);
      if (k > 0 && std::ranges::equal(row(order[k - 1]), r)) {
        ++removed;
        continue;
      }
      sorted.insert(sorted.end(), r.begin(), r.end());
    }
    flat_ = std::move(sorted);
  }

  PointSet ps = PointSet::from_flat(dimension_, exponent_, std::move(flat_));
  flat_.clear();
  return {std::move(ps), removed};
}

PointSet base_demihypercube(unsigned dimension, Budget budget) {
  if (dimension == 0) {
    throw Error(ErrorCode::bad_request, "dimension must be at least 1");
  }
  require_budget(dimension - 1, budget);
  if (dimension > 62) {
    throw BudgetExceeded(dimension - 1, budget.exponent);
  }
  // Every 0/1 vector, read with coordinate 0 as the high bit, so masks come
  // out in lexicographic order.
  std::vector<Coord> flat;
  flat.reserve((std::size_t{1} << (dimension - 1)) * dimension);
  const std::uint64_t masks = std::uint64_t{1} << dimension;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    for (unsigned j = 0; j < dimension; ++j) {
      flat.push_back((mask >> (dimension - 1 - j)) & 1u);
    }
  }
  return PointSet::from_flat(dimension, 1, std::move(flat));
}

PointSet iterate_recursive(IterationSpec spec, Budget budget) {
  spec.validate();
  const unsigned d = spec.dimension;
  require_budget(std::uint64_t{spec.exponent} * (d - 1), budget);

  const PointSet corners = base_demihypercube(d, budget);
  PointSet current = corners;
  std::vector<Coord> row(d);
  for (unsigned k = 1; k < spec.exponent; ++k) {
    // D^{k+1}: one copy of D^k at each point of 2^k D^1.
    PointSetBuilder next(d, k + 1);
    next.reserve(corners.size() * current.size());
    for (std::size_t c = 0; c < corners.size(); ++c) {
      const auto corner = corners[c];
      for (std::size_t i = 0; i < current.size(); ++i) {
        const auto p = current[i];
        for (unsigned j = 0; j < d; ++j) row[j] = (corner[j] << k) + p[j];
        next.add(row);
      }
    }
    auto [points, duplicates] = std::move(next).build();
    if (duplicates != 0) {
      throw std::logic_error("shifted copies of D^" + std::to_string(k) +
                             " overlap in " + std::to_string(duplicates) +
                             " points");
    }
    current = std::move(points);
  }
  return current;
}

PointSet generate_filtered(IterationSpec spec, Budget budget) {
  spec.validate();
  const unsigned d = spec.dimension;
  require_budget(std::uint64_t{spec.exponent} * d, budget);

  const Coord limit = Coord{1} << spec.exponent;
  std::vector<Coord> candidate(d, 0);
  std::vector<Coord> flat;
  for (;;) {
    if (nim_sum(candidate) == 0) {
      flat.insert(flat.end(), candidate.begin(), candidate.end());
    }
    std::size_t i = d;
    for (;;) {
      if (i == 0) return PointSet::from_flat(d, spec.exponent, std::move(flat));
      --i;
      if (++candidate[i] < limit) break;
      candidate[i] = 0;
    }
  }
}

PointSet generate_streamed(IterationSpec spec, Budget budget) {
  spec.validate();
  require_budget(std::uint64_t{spec.exponent} * (spec.dimension - 1), budget);
  std::vector<Coord> flat;
  flat.reserve((std::size_t{1} << (spec.exponent * (spec.dimension - 1))) *
               spec.dimension);
  stream_points(spec, [&](std::span<const Coord> p) {
    flat.insert(flat.end(), p.begin(), p.end());
  });
  return PointSet::from_flat(spec.dimension, spec.exponent, std::move(flat));
}

bool membership_nimsum(const Position& p) noexcept {
  return nim_sum(p.coords()) == 0;
}

bool membership_recursive(const Position& p) {
  std::vector<Coord> rest(p.coords().begin(), p.coords().end());
  const Coord largest = *std::max_element(rest.begin(), rest.end());
  if (largest > 1) {
    // Smallest n with every coordinate < 2^(n+1).
    const unsigned top = static_cast<unsigned>(std::bit_width(largest)) - 1;
    for (unsigned bit = top; bit > 0; --bit) {
      const Coord half = Coord{1} << bit;
      std::size_t high = 0;
      for (Coord& x : rest) {
        if (x >= half) {
          x -= half;
          ++high;
        }
      }
      if (high % 2 != 0) return false;
    }
  }
  return in_base_demihypercube(rest);
}

HighLowSplit split_high_low(const Position& p, unsigned bit) {
  if (bit >= kMaxExponent) {
    throw Error(ErrorCode::bad_request, "split bit out of range");
  }
  const Coord half = Coord{1} << bit;
  std::vector<Coord> high(p.dimension());
  std::vector<Coord> low(p.dimension());
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    if (p[j] >= 2 * half) {
      throw Error(ErrorCode::bad_request,
                  "coordinate " + std::to_string(p[j]) + " is not below 2^" +
                      std::to_string(bit + 1));
    }
    high[j] = p[j] >= half ? half : 0;
    low[j] = p[j] - high[j];
  }
  return {Position(std::move(high)), Position(std::move(low))};
}

}  // namespace nimfrac
