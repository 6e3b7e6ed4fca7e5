#include "nimfrac/session_store.hpp"

namespace nimfrac {

SessionStore::SessionStore(std::chrono::seconds idle_expiry,
                           std::optional<std::uint64_t> id_seed, NowFn now)
    : idle_expiry_(idle_expiry),
      now_(std::move(now)),
      ids_(id_seed ? SessionIdGenerator(*id_seed) : SessionIdGenerator()) {}

GameSession SessionStore::create(Position piles, bool human_moves_first) {
  purge_expired();
  std::lock_guard lock(mutex_);
  std::string id = ids_.next();
  while (sessions_.contains(id)) id = ids_.next();

  auto entry = std::make_shared<Entry>(
      new_game(std::move(piles), human_moves_first, id), now_());
  sessions_.emplace(id, entry);
  return entry->session;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::not_found, "no game with id '" + id + "'");
  }
  {
    std::lock_guard entry_lock(it->second->mutex);
    if (now_() - it->second->last_used > idle_expiry_) {
      sessions_.erase(it);
      throw Error(ErrorCode::not_found, "game '" + id + "' has expired");
    }
  }
  return it->second;
}

std::optional<GameSession> SessionStore::snapshot(const std::string& id) {
  try {
    return with_session(id, [](GameSession& s) { return s; });
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_found) return std::nullopt;
    throw;
  }
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

std::size_t SessionStore::purge_expired() {
  std::lock_guard lock(mutex_);
  const auto now = now_();
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool stale;
    {
      std::lock_guard entry_lock(it->second->mutex);
      stale = now - it->second->last_used > idle_expiry_;
    }
    if (stale) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace nimfrac
