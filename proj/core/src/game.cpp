#include "nimfrac/game.hpp"

#include <array>
#include <cstdio>

#include "nimfrac/errors.hpp"

namespace nimfrac {

namespace {

void require_in_progress(const GameSession& s) {
  if (s.finished()) {
    throw Error(ErrorCode::terminal_game, "the game is already over");
  }
}

void require_turn(const GameSession& s, Player who) {
  if (s.to_move != who) {
    throw Error(ErrorCode::wrong_turn,
                std::string("it is the ") + std::string(to_string(s.to_move)) +
                    "'s turn");
  }
}

GameSession record(const GameSession& s, Player mover, const Move& m) {
  GameSession next = s;
  next.position = apply(s.position, m);
  next.history.push_back({mover, m, next.position});
  if (next.position.is_zero()) {
    next.status =
        mover == Player::human ? GameStatus::human_won : GameStatus::engine_won;
  } else {
    next.to_move = mover == Player::human ? Player::engine : Player::human;
  }
  return next;
}

}  // namespace

std::string_view to_string(Player p) noexcept {
  return p == Player::human ? "human" : "engine";
}

std::string_view to_string(GameStatus s) noexcept {
  switch (s) {
    case GameStatus::in_progress: return "in_progress";
    case GameStatus::human_won: return "human_won";
    case GameStatus::engine_won: return "engine_won";
  }
  return "in_progress";
}

GameSession new_game(Position piles, bool human_moves_first, std::string id) {
  if (piles.is_zero()) {
    throw Error(ErrorCode::bad_request,
                "all piles are empty; there is no legal first move");
  }
  return GameSession{std::move(id),
                     piles,
                     piles,
                     human_moves_first ? Player::human : Player::engine,
                     {},
                     GameStatus::in_progress};
}

GameSession apply_human_move(const GameSession& session, const Move& move) {
  require_in_progress(session);
  require_turn(session, Player::human);
  return record(session, Player::human, move);
}

std::pair<GameSession, Move> engine_move(const GameSession& session) {
  require_in_progress(session);
  require_turn(session, Player::engine);
  const Move m = engine_choice(session.position);
  return {record(session, Player::engine, m), m};
}

Move fallback_move(const Position& p) {
  std::size_t largest = 0;
  for (std::size_t j = 1; j < p.dimension(); ++j) {
    if (p[j] > p[largest]) largest = j;
  }
  if (p[largest] == 0) {
    throw Error(ErrorCode::terminal_game, "no stones left to take");
  }
  return {largest, p[largest] - 1};
}

Move engine_choice(const Position& p) {
  if (auto m = optimal_move(p)) return *m;
  return fallback_move(p);
}

Hint hint(const GameSession& session) {
  require_in_progress(session);
  return {classify(session.position), all_winning_moves(session.position)};
}

Position replay(const GameSession& session) {
  Position p = session.initial;
  for (const auto& entry : session.history) p = apply(p, entry.move);
  return p;
}

Move random_move(const Position& p, std::mt19937_64& rng) {
  const Coord total = legal_move_count(p);
  if (total == 0) {
    throw Error(ErrorCode::terminal_game, "no legal moves");
  }
  Coord pick = std::uniform_int_distribution<Coord>(0, total - 1)(rng);
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    if (pick < p[j]) return {j, pick};
    pick -= p[j];
  }
  // Saturated count: fall back to the last nonempty pile.
  for (std::size_t j = p.dimension(); j-- > 0;) {
    if (p[j] > 0) return {j, p[j] - 1};
  }
  throw Error(ErrorCode::terminal_game, "no legal moves");
}

SimulationTally simulate(const Position& start, Opponent opponent,
                         std::uint64_t trials, std::uint64_t seed,
                         bool engine_first) {
  SimulationTally tally;
  if (start.is_zero()) {
    throw Error(ErrorCode::bad_request, "simulation needs a nonempty start");
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t),
                      static_cast<std::uint32_t>(t >> 32)};
    std::mt19937_64 rng(seq);

    Position p = start;
    bool engine_to_move = engine_first;
    for (;;) {
      Move m;
      if (engine_to_move) {
        m = engine_choice(p);
      } else if (opponent == Opponent::perfect) {
        m = engine_choice(p);
      } else {
        m = random_move(p, rng);
      }
      p = apply(p, m);
      if (p.is_zero()) {
        if (engine_to_move) {
          ++tally.engine_wins;
        } else {
          ++tally.engine_losses;
        }
        break;
      }
      engine_to_move = !engine_to_move;
    }
  }
  return tally;
}

SessionIdGenerator::SessionIdGenerator() : rng_(std::random_device{}()) {}

SessionIdGenerator::SessionIdGenerator(std::uint64_t seed) : rng_(seed) {}

std::string SessionIdGenerator::next() {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(rng_()));
  return std::string(buf.data(), 16);
}

}  // namespace nimfrac
