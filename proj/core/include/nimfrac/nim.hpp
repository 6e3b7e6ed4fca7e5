#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "nimfrac/position.hpp"

namespace nimfrac {

/// Binary addition without carries (bitwise xor) over all values.
/// The empty sum is 0.
constexpr Coord nim_sum(std::span<const Coord> values) noexcept {
  Coord acc = 0;
  for (Coord v : values) acc ^= v;
  return acc;
}

constexpr Coord nim_sum(std::initializer_list<Coord> values) noexcept {
  return nim_sum(std::span<const Coord>(values.begin(), values.size()));
}

Classification classify(const Position& p) noexcept;

bool is_legal(const Position& p, const Move& m) noexcept;

/// Applies a legal move. Throws Error(illegal_move) otherwise.
Position apply(const Position& p, const Move& m);

/// The winning reply from an N-position: the lowest pile index j with
/// (x_j xor s) < x_j, reduced to x_j xor s. Empty at a P-position.
std::optional<Move> optimal_move(const Position& p);

/// Every move that lands on a P-position, ordered by pile index. There is at
/// most one per pile.
std::vector<Move> all_winning_moves(const Position& p);

/// All legal moves ordered by pile index then new size. The list has
/// sum(x_j) entries, so only use this on small positions.
std::vector<Move> legal_moves(const Position& p);

/// Number of legal moves, sum(x_j), saturating at UINT64_MAX.
Coord legal_move_count(const Position& p) noexcept;

}  // namespace nimfrac
