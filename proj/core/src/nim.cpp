#include "nimfrac/nim.hpp"

#include <limits>

#include "nimfrac/errors.hpp"

namespace nimfrac {

Classification classify(const Position& p) noexcept {
  return nim_sum(p.coords()) == 0 ? Classification::P : Classification::N;
}

bool is_legal(const Position& p, const Move& m) noexcept {
  return m.pile_index < p.dimension() && m.new_size < p[m.pile_index];
}

Position apply(const Position& p, const Move& m) {
  if (m.pile_index >= p.dimension()) {
    throw Error(ErrorCode::illegal_move,
                "pile index " + std::to_string(m.pile_index) +
                    " out of range for " + std::to_string(p.dimension()) +
                    " piles");
  }
  if (m.new_size >= p[m.pile_index]) {
    throw Error(ErrorCode::illegal_move,
                "new size " + std::to_string(m.new_size) +
                    " must be smaller than pile " +
                    std::to_string(m.pile_index) + " (" +
                    std::to_string(p[m.pile_index]) + ")");
  }
  return p.with(m.pile_index, m.new_size);
}

std::optional<Move> optimal_move(const Position& p) {
  const Coord s = nim_sum(p.coords());
  if (s == 0) return std::nullopt;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    const Coord target = p[j] ^ s;
    if (target < p[j]) return Move{j, target};
  }
  // Unreachable: the pile holding the top bit of s always qualifies.
  return std::nullopt;
}

std::vector<Move> all_winning_moves(const Position& p) {
  std::vector<Move> moves;
  const Coord s = nim_sum(p.coords());
  if (s == 0) return moves;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    const Coord target = p[j] ^ s;
    if (target < p[j]) moves.push_back({j, target});
  }
  return moves;
}

std::vector<Move> legal_moves(const Position& p) {
  std::vector<Move> moves;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    for (Coord k = 0; k < p[j]; ++k) moves.push_back({j, k});
  }
  return moves;
}

Coord legal_move_count(const Position& p) noexcept {
  Coord total = 0;
  for (Coord c : p.coords()) {
    if (c > std::numeric_limits<Coord>::max() - total) {
      return std::numeric_limits<Coord>::max();
    }
    total += c;
  }
  return total;
}

}  // namespace nimfrac
