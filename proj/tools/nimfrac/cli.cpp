#include "nimfrac/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "nimfrac/api_server.hpp"
#include "nimfrac/errors.hpp"
#include "nimfrac/export.hpp"
#include "nimfrac/fractal.hpp"
#include "nimfrac/game.hpp"
#include "nimfrac/geometry.hpp"
#include "nimfrac/nim.hpp"
#include "nimfrac/verify.hpp"

namespace nimfrac::cli {

std::vector<std::uint64_t> parse_values(const std::vector<std::string>& tokens) {
  std::vector<std::uint64_t> values;
  for (const auto& token : tokens) {
    std::string_view rest = token;
    while (!rest.empty()) {
      const auto cut = rest.find_first_of(", \t");
      const std::string_view piece = rest.substr(0, cut);
      rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
      if (piece.empty()) continue;
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
      if (ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::bad_request,
                    "'" + std::string(piece) + "' does not fit in 64 bits");
      }
      if (ec != std::errc() || ptr != piece.data() + piece.size()) {
        throw Error(ErrorCode::bad_request,
                    "'" + std::string(piece) + "' is not a nonnegative integer");
      }
      values.push_back(v);
    }
  }
  return values;
}

namespace {

Position parse_position(const std::vector<std::string>& tokens) {
  auto values = parse_values(tokens);
  if (values.empty()) {
    throw Error(ErrorCode::bad_request, "give at least one pile size");
  }
  return Position(std::move(values));
}

/// --out FILE or the standard output stream.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void print_piles(const Position& p, std::ostream& out) {
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    out << "  pile " << j << ": " << p[j] << "\n";
  }
}

int play(const Position& start, bool engine_first, std::istream& in,
         std::ostream& out) {
  GameSession s = new_game(start, !engine_first, "terminal");
  out << "Take at least one stone from a single pile each turn; whoever takes "
         "the last stone wins.\n";
  while (!s.finished()) {
    if (s.to_move == Player::engine) {
      auto [next, m] = engine_move(s);
      s = std::move(next);
      out << "Engine: " << m << "\n";
      continue;
    }
    out << "Piles:\n";
    print_piles(s.position, out);
    out << "Your move as 'pile new_size' (or 'hint', 'quit'): " << std::flush;

    std::string line;
    if (!std::getline(in, line)) {
      out << "\nInput closed; game abandoned.\n";
      return kFailure;
    }
    const auto first = line.find_first_not_of(" \t\r");
    const auto last = line.find_last_not_of(" \t\r");
    line = first == std::string::npos ? "" : line.substr(first, last - first + 1);

    if (line == "quit" || line == "q") {
      out << "You resigned. The engine wins.\n";
      return kOk;
    }
    if (line == "hint") {
      const Hint h = hint(s);
      if (h.winning_moves.empty()) {
        out << "P-position: no winning move exists.\n";
      } else {
        out << "N-position. Winning moves:";
        for (const auto& m : h.winning_moves) out << " [" << m << "]";
        out << "\n";
      }
      continue;
    }

    std::vector<std::uint64_t> values;
    try {
      values = parse_values({line});
    } catch (const Error&) {
    }
    if (values.size() != 2) {
      out << "Enter a pile index and the new pile size, for example '2 2'.\n";
      continue;
    }
    try {
      s = apply_human_move(s, {static_cast<std::size_t>(values[0]), values[1]});
    } catch (const Error& e) {
      out << "Illegal move: " << e.what() << "\n";
    }
  }
  out << (s.status == GameStatus::human_won ? "You took the last stone. You win!\n"
                                            : "The engine took the last stone. The engine wins.\n");
  return kOk;
}

int serve(const ServerConfig& config, std::ostream& out) {
  // Route SIGINT/SIGTERM to a waiter thread; server threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  int status = kOk;
  {
    ApiServer server(config);
    const int port = server.bind();
    out << "serving on http://" << config.host << ":" << port << std::endl;

    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      server.stop();
    });
    server.run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Nim strategy and the discrete Sierpinski demihypercube"};
  app.name("nimfrac");
  app.require_subcommand(1);

  std::vector<std::string> values;

  auto* nimsum_cmd = app.add_subcommand("nimsum", "Print the nim-sum of the values");
  nimsum_cmd->add_option("values", values, "Nonnegative integers");

  auto* classify_cmd = app.add_subcommand("classify", "Print P or N for a position");
  classify_cmd->add_option("piles", values, "Pile sizes")->required();

  auto* move_cmd = app.add_subcommand("move", "Print the optimal move");
  move_cmd->add_option("piles", values, "Pile sizes")->required();

  unsigned dimension = 0;
  unsigned exponent = 0;
  unsigned axis = 0;
  unsigned budget = 24;
  std::string method = "recursive";
  std::string format = "csv";
  std::string out_path;

  auto* generate_cmd = app.add_subcommand("generate", "Write the point set D^n");
  generate_cmd->add_option("--d", dimension, "Dimension")->required();
  generate_cmd->add_option("--n", exponent, "Iteration index (>= 1)")->required();
  generate_cmd->add_option("--method", method, "Generator")
      ->check(CLI::IsMember({"recursive", "filtered", "stream"}));
  generate_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl", "obj", "svg"}));
  generate_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  generate_cmd->add_option("--budget", budget, "Enumeration budget exponent");

  unsigned max_d = 5;
  unsigned max_n = 4;
  unsigned sweep_budget = 16;
  std::string report_format = "text";
  bool sequential = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check D^n == P_n over a sweep");
  verify_cmd->add_option("--max-d", max_d, "Largest dimension");
  verify_cmd->add_option("--max-n", max_n, "Largest iteration index");
  verify_cmd->add_option("--budget", sweep_budget, "Skip cells with n(d-1) above this");
  verify_cmd->add_option("--format", report_format, "Report format")
      ->check(CLI::IsMember({"text", "jsonl"}));
  verify_cmd->add_flag("--sequential", sequential, "Verify one cell at a time");

  auto* shadow_cmd = app.add_subcommand("shadow", "Write the shadow along an axis");
  shadow_cmd->add_option("--d", dimension, "Dimension")->required();
  shadow_cmd->add_option("--n", exponent, "Iteration index (>= 1)")->required();
  shadow_cmd->add_option("--axis", axis, "Axis to project along (0-based)")->required();
  shadow_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "svg"}));
  shadow_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  shadow_cmd->add_option("--budget", budget, "Enumeration budget exponent");

  std::string piles_text;
  bool engine_first = false;
  auto* play_cmd = app.add_subcommand("play", "Play Nim against the engine");
  play_cmd->add_option("--piles", piles_text, "Pile sizes, e.g. 3,4,5")->required();
  play_cmd->add_flag("--engine-first", engine_first, "Let the engine move first");

  std::string opponent_name = "random";
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  bool opponent_first = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "Engine vs opponent tally");
  simulate_cmd->add_option("--piles", piles_text, "Starting pile sizes")->required();
  simulate_cmd->add_option("--opponent", opponent_name, "random or perfect")
      ->check(CLI::IsMember({"random", "perfect"}));
  simulate_cmd->add_option("--trials", trials, "Number of games");
  simulate_cmd->add_option("--seed", seed, "Random seed");
  simulate_cmd->add_flag("--opponent-first", opponent_first, "Opponent moves first");

  ServerConfig server_config;
  unsigned serve_budget = server_config.fractal_budget.exponent;
  long expiry_seconds = server_config.idle_expiry.count();
  auto* serve_cmd = app.add_subcommand("serve", "Run the JSON API server");
  serve_cmd->add_option("--port", server_config.port, "TCP port")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", server_config.host, "Bind address");
  serve_cmd->add_option("--ui-dir", server_config.ui_dir, "Serve this directory at /")
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--budget", serve_budget, "Largest /fractal payload exponent");
  serve_cmd->add_option("--expiry", expiry_seconds, "Idle session expiry in seconds")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (nimsum_cmd->parsed()) {
      const auto v = parse_values(values);
      out << nim_sum(v) << "\n";
    } else if (classify_cmd->parsed()) {
      out << classify(parse_position(values)) << "\n";
    } else if (move_cmd->parsed()) {
      const auto m = optimal_move(parse_position(values));
      if (m) {
        out << *m << "\n";
      } else {
        out << "none (P-position)\n";
      }
    } else if (generate_cmd->parsed()) {
      const IterationSpec spec{dimension, exponent};
      spec.validate();
      const ExportFormat fmt = parse_export_format(format);
      require_point_format(fmt, dimension);
      const Budget b{budget};
      if (method == "stream") {
        OutputTarget target(out_path, out);
        PointWriter writer(target.stream(), fmt, dimension, exponent);
        stream_points(spec, [&](std::span<const Coord> p) { writer.write(p); });
        writer.finish();
      } else {
        const PointSet ps = method == "recursive" ? iterate_recursive(spec, b)
                                                  : generate_filtered(spec, b);
        OutputTarget target(out_path, out);
        write_pointset(ps, fmt, target.stream());
      }
    } else if (verify_cmd->parsed()) {
      const auto reports = verify_sweep({max_d, max_n, sweep_budget, !sequential});
      if (report_format == "jsonl") {
        write_report_jsonl(reports, out);
      } else {
        write_report_text(reports, out);
      }
      const auto bad = std::ranges::count_if(reports, [](const auto& r) {
        return !r.equal || r.cardinality_recursive != r.expected_cardinality;
      });
      if (report_format == "text") {
        if (bad == 0) {
          out << "all " << reports.size() << " cells equal\n";
        } else {
          out << bad << " of " << reports.size() << " cells differ\n";
        }
      }
      return bad == 0 ? kOk : kFailure;
    } else if (shadow_cmd->parsed()) {
      const ExportFormat fmt = parse_export_format(format);
      if (fmt == ExportFormat::svg && dimension != 3) {
        throw Error(ErrorCode::bad_request, "svg shadows need --d 3");
      }
      const ShadowGrid grid = shadow({dimension, exponent}, axis, Budget{budget});
      OutputTarget target(out_path, out);
      write_shadow(grid, fmt, target.stream());
    } else if (play_cmd->parsed()) {
      return play(parse_position({piles_text}), engine_first, in, out);
    } else if (simulate_cmd->parsed()) {
      const Opponent opp =
          opponent_name == "perfect" ? Opponent::perfect : Opponent::random;
      const auto tally =
          simulate(parse_position({piles_text}), opp, trials, seed, !opponent_first);
      out << "engine wins: " << tally.engine_wins << "\n"
          << "engine losses: " << tally.engine_losses << "\n";
    } else if (serve_cmd->parsed()) {
      server_config.fractal_budget = Budget{serve_budget};
      server_config.idle_expiry = std::chrono::seconds(expiry_seconds);
      return serve(server_config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::bad_request ? kUsage : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace nimfrac::cli
