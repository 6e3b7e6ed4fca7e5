#include "nimfrac/position.hpp"

#include <algorithm>
#include <ostream>

#include "nimfrac/errors.hpp"

namespace nimfrac {

Position::Position(std::vector<Coord> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::bad_request, "a position needs at least one pile");
  }
}

Position::Position(std::span<const Coord> coords)
    : Position(std::vector<Coord>(coords.begin(), coords.end())) {}

Position::Position(std::initializer_list<Coord> coords)
    : Position(std::vector<Coord>(coords)) {}

bool Position::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](Coord c) { return c == 0; });
}

Position Position::with(std::size_t index, Coord value) const {
  Position copy = *this;
  copy.coords_.at(index) = value;
  return copy;
}

std::string to_string(const Position& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(p[i]);
  }
  out += ")";
  return out;
}

std::string to_string(const Move& m) {
  return "pile " + std::to_string(m.pile_index) + " -> " +
         std::to_string(m.new_size);
}

std::string_view to_string(Classification c) noexcept {
  return c == Classification::P ? "P" : "N";
}

std::ostream& operator<<(std::ostream& os, const Position& p) {
  return os << to_string(p);
}

std::ostream& operator<<(std::ostream& os, const Move& m) {
  return os << to_string(m);
}

std::ostream& operator<<(std::ostream& os, Classification c) {
  return os << to_string(c);
}

}  // namespace nimfrac
