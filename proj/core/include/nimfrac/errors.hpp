#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nimfrac {

// Stable error identifiers. The string forms are part of the HTTP contract.
enum class ErrorCode {
  illegal_move,
  wrong_turn,
  not_found,
  budget_exceeded,
  bad_request,
  terminal_game,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an operation would materialize more than 2^limit items.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required_exponent, unsigned limit_exponent);

  std::uint64_t required_exponent() const noexcept { return required_; }
  unsigned limit_exponent() const noexcept { return limit_; }

 private:
  std::uint64_t required_;
  unsigned limit_;
};

}  // namespace nimfrac
