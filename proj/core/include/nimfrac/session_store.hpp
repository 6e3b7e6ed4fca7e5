#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "nimfrac/errors.hpp"
#include "nimfrac/game.hpp"

namespace nimfrac {

/// In-memory sessions keyed by id. Each session has its own lock, so updates
/// to one session are serialized while different sessions proceed in
/// parallel. Sessions idle longer than the expiry are dropped.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;
  using NowFn = std::function<Clock::time_point()>;

  explicit SessionStore(std::chrono::seconds idle_expiry = std::chrono::hours(1),
                        std::optional<std::uint64_t> id_seed = std::nullopt,
                        NowFn now = &Clock::now);

  /// Registers a new game and returns a copy of it.
  GameSession create(Position piles, bool human_moves_first);

  /// Runs fn(GameSession&) under the session's lock. If fn throws, the
  /// session keeps whatever fn had not assigned; callers that need
  /// all-or-nothing updates should build the new state on a copy and assign
  /// it at the end. Throws Error(not_found) for unknown or expired ids.
  template <class Fn>
  decltype(auto) with_session(const std::string& id, Fn&& fn) {
    std::shared_ptr<Entry> entry = find(id);
    std::lock_guard lock(entry->mutex);
    entry->last_used = now_();
    return std::forward<Fn>(fn)(entry->session);
  }

  std::optional<GameSession> snapshot(const std::string& id);

  bool erase(const std::string& id);

  /// Drops sessions idle for longer than the expiry; returns how many.
  std::size_t purge_expired();

  std::size_t size() const;

 private:
  struct Entry {
    Entry(GameSession s, Clock::time_point t)
        : session(std::move(s)), last_used(t) {}

    std::mutex mutex;
    GameSession session;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id);

  std::chrono::seconds idle_expiry_;
  NowFn now_;
  mutable std::mutex mutex_;
  SessionIdGenerator ids_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace nimfrac
