#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nimfrac {

using Coord = std::uint64_t;

/// A d-tuple of nonnegative integers: Nim pile sizes, or equivalently a
/// lattice point in d-space. Always has at least one coordinate.
class Position {
 public:
  explicit Position(std::vector<Coord> coords);
  explicit Position(std::span<const Coord> coords);
  Position(std::initializer_list<Coord> coords);

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const Coord> coords() const noexcept { return coords_; }
  Coord operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const noexcept;

  /// Copy with coordinate `index` replaced by `value`.
  Position with(std::size_t index, Coord value) const;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<Coord> coords_;
};

/// Remove stones from pile `pile_index`, leaving `new_size`.
struct Move {
  std::size_t pile_index = 0;
  Coord new_size = 0;

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

/// P: the player who just moved can force a win. N: the player to move can.
enum class Classification { P, N };

std::string to_string(const Position& p);
std::string to_string(const Move& m);
std::string_view to_string(Classification c) noexcept;

std::ostream& operator<<(std::ostream& os, const Position& p);
std::ostream& operator<<(std::ostream& os, const Move& m);
std::ostream& operator<<(std::ostream& os, Classification c);

}  // namespace nimfrac
