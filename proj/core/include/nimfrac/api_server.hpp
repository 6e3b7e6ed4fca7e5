#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "nimfrac/errors.hpp"
#include "nimfrac/fractal.hpp"
#include "nimfrac/session_store.hpp"

namespace nimfrac {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8715;  // 0 picks a free port
  // Static files (the built browser UI), served at "/" when non-empty.
  std::string ui_dir;
  // /fractal refuses more than 2^exponent points.
  Budget fractal_budget{16};
  std::chrono::seconds idle_expiry = std::chrono::hours(1);
  std::string cors_origin = "*";
  std::optional<std::uint64_t> id_seed;
};

/// HTTP status used for each error code on the wire.
int http_status(ErrorCode code) noexcept;

/// JSON-over-HTTP front end for game sessions, hints and fractal data.
///
///   POST /games                  {piles, human_first} -> session view
///   GET  /games/{id}             session view
///   POST /games/{id}/moves       {pile_index, new_size} -> human move plus
///                                the engine's reply, applied atomically
///   GET  /games/{id}/hint        {classification, winning_moves}
///   GET  /fractal?d=&n=          {d, n, count, points}
///   GET  /fractal/shadow?d=&n=&axis=[&counts=true]
///
/// Errors are {"code", "message", "http_status"} with code from ErrorCode.
class ApiServer {
 public:
  explicit ApiServer(ServerConfig config);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds the listening socket and returns the port. Throws
  /// std::runtime_error if the address is unavailable.
  int bind();
  /// Serves until stop(); binds first if bind() was not called.
  void run();
  void stop();
  void wait_until_ready() const;

  int port() const noexcept;
  SessionStore& sessions() noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nimfrac
