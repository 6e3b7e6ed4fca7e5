#include "nimfrac/errors.hpp"

namespace nimfrac {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::illegal_move: return "illegal_move";
    case ErrorCode::wrong_turn: return "wrong_turn";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::bad_request: return "bad_request";
    case ErrorCode::terminal_game: return "terminal_game";
  }
  return "bad_request";
}

BudgetExceeded::BudgetExceeded(std::uint64_t required_exponent,
                               unsigned limit_exponent)
    : Error(ErrorCode::budget_exceeded,
            "enumeration needs 2^" + std::to_string(required_exponent) +
                " items, budget is 2^" + std::to_string(limit_exponent)),
      required_(required_exponent),
      limit_(limit_exponent) {}

}  // namespace nimfrac
