#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nimfrac/nim.hpp"
#include "nimfrac/position.hpp"

namespace nimfrac {

enum class Player { human, engine };
enum class GameStatus { in_progress, human_won, engine_won };

std::string_view to_string(Player p) noexcept;
std::string_view to_string(GameStatus s) noexcept;

struct HistoryEntry {
  Player mover;
  Move move;
  Position result;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// One human-vs-engine game under normal play: whoever takes the last stone
/// wins. Mutating operations return a new session and leave the input as is.
struct GameSession {
  std::string id;
  Position initial;
  Position position;
  Player to_move = Player::human;
  std::vector<HistoryEntry> history;
  GameStatus status = GameStatus::in_progress;

  bool finished() const noexcept { return status != GameStatus::in_progress; }

  friend bool operator==(const GameSession&, const GameSession&) = default;
};

/// Throws Error(bad_request) for an all-zero start.
GameSession new_game(Position piles, bool human_moves_first, std::string id);

/// Errors: terminal_game, wrong_turn, illegal_move.
GameSession apply_human_move(const GameSession& session, const Move& move);

/// Plays engine_choice for the engine. Errors: terminal_game, wrong_turn.
std::pair<GameSession, Move> engine_move(const GameSession& session);

/// Remove one stone from the largest pile, lowest index on ties. Used when
/// no winning move exists. Throws Error(terminal_game) on an all-zero
/// position.
Move fallback_move(const Position& p);

/// optimal_move at an N-position, fallback_move at a P-position.
Move engine_choice(const Position& p);

struct Hint {
  Classification classification;
  std::vector<Move> winning_moves;
};

/// Throws Error(terminal_game) once the game is over.
Hint hint(const GameSession& session);

/// Re-applies the history to the initial position.
Position replay(const GameSession& session);

enum class Opponent { random, perfect };

struct SimulationTally {
  std::uint64_t engine_wins = 0;
  std::uint64_t engine_losses = 0;

  friend bool operator==(const SimulationTally&, const SimulationTally&) = default;
};

/// Uniform choice over all sum(x_j) legal moves.
Move random_move(const Position& p, std::mt19937_64& rng);

/// Plays `trials` games of engine vs opponent from `start`. Trial t draws its
/// random moves from a generator seeded with (seed, t), so results do not
/// depend on trial order.
SimulationTally simulate(const Position& start, Opponent opponent,
                         std::uint64_t trials, std::uint64_t seed,
                         bool engine_first = true);

/// Opaque 16-hex-digit session tokens from a seeded generator.
class SessionIdGenerator {
 public:
  SessionIdGenerator();
  explicit SessionIdGenerator(std::uint64_t seed);

  std::string next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace nimfrac
