// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every bound and tolerance is pinned below.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "nimfrac/api_server.hpp"
#include "nimfrac/export.hpp"
#include "nimfrac/fractal.hpp"
#include "nimfrac/game.hpp"
#include "nimfrac/geometry.hpp"
#include "nimfrac/nim.hpp"
#include "nimfrac/verify.hpp"
#include "oracles.hpp"

namespace {

using namespace nimfrac;
using Clock = std::chrono::steady_clock;

constexpr unsigned kSweepMaxDimension = 5;
constexpr unsigned kSweepMaxExponent = 4;
constexpr unsigned kSweepMaxPointsExponent = 16;
constexpr double kSweepSeconds = 30.0;

constexpr unsigned kBruteMaxDimension = 4;
constexpr unsigned kBruteMaxExponent = 3;

constexpr unsigned kShadowMinDimension = 2;
constexpr unsigned kShadowMaxDimension = 4;
constexpr unsigned kShadowMaxExponent = 4;

constexpr std::uint64_t kStrategyBound = 16;

constexpr std::uint64_t kMembershipBound = 32;
constexpr std::size_t kMembershipSamples = 10'000;
constexpr unsigned kMembershipSampleBits = 20;
constexpr std::uint64_t kMembershipSeed = 0x5eed'0001;

constexpr std::size_t kRandomGames = 1000;
constexpr std::size_t kPerfectGames = 100;
constexpr std::uint64_t kSimulationBound = 32;
constexpr std::uint64_t kSimulationSeed = 0x5eed'0002;
constexpr double kSimulationSeconds = 10.0;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(f), {}};
}

Outcome theorem_sweep() {
  const auto start = Clock::now();
  int cells = 0;
  for (unsigned d = 1; d <= kSweepMaxDimension; ++d) {
    for (unsigned n = 1; n <= kSweepMaxExponent; ++n) {
      if (n * (d - 1) > kSweepMaxPointsExponent) continue;
      const IterationSpec spec{d, n};
      const Budget budget{n * d};
      if (iterate_recursive(spec, budget) != generate_filtered(spec, budget)) {
        return {false, "d=" + std::to_string(d) + " n=" + std::to_string(n) + " differs"};
      }
      ++cells;
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed > kSweepSeconds) {
    return {false, "took " + std::to_string(elapsed) + " s"};
  }
  return {true, std::to_string(cells) + " cells equal in " + std::to_string(elapsed) + " s"};
}

Outcome cardinality() {
  int checked = 0;
  for (unsigned d = 1; d <= kSweepMaxDimension; ++d) {
    for (unsigned n = 1; n <= kSweepMaxExponent; ++n) {
      if (n * (d - 1) > kSweepMaxPointsExponent) continue;
      const IterationSpec spec{d, n};
      const Budget budget{n * d};
      const std::uint64_t expected = std::uint64_t{1} << (n * (d - 1));
      if (iterate_recursive(spec, budget).size() != expected ||
          generate_filtered(spec, budget).size() != expected) {
        return {false, "wrong size at d=" + std::to_string(d) + " n=" + std::to_string(n)};
      }
      if (d <= kBruteMaxDimension && n <= kBruteMaxExponent &&
          oracle::count_zero_nim_sum(d, n) != expected) {
        return {false, "brute-force count disagrees at d=" + std::to_string(d) +
                           " n=" + std::to_string(n)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " sizes equal 2^(n(d-1))"};
}

Outcome figure_reproduction() {
  const std::filesystem::path golden(NIMFRAC_GOLDEN_DIR);
  const std::uint64_t counts[] = {4, 16, 64, 256};
  for (unsigned n = 1; n <= 4; ++n) {
    const PointSet ps = iterate_recursive({3, n});
    if (ps.size() != counts[n - 1]) return {false, "count at n=" + std::to_string(n)};
    const std::string stem = "demihypercube_d3_n" + std::to_string(n);
    for (auto fmt : {ExportFormat::csv, ExportFormat::obj}) {
      std::ostringstream out;
      write_pointset(ps, fmt, out);
      const std::string ext = fmt == ExportFormat::csv ? ".csv" : ".obj";
      if (out.str() != slurp(golden / (stem + ext))) {
        return {false, stem + ext + " differs"};
      }
    }
  }
  const std::string n1 = slurp(golden / "demihypercube_d3_n1.csv");
  if (n1 != "x0,x1,x2\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n") {
    return {false, "n=1 golden content is not the four base vertices"};
  }
  return {true, "csv and obj byte-exact for n=1..4"};
}

Outcome shadow_bijectivity() {
  int grids = 0;
  for (unsigned d = kShadowMinDimension; d <= kShadowMaxDimension; ++d) {
    for (unsigned n = 1; n <= kShadowMaxExponent; ++n) {
      for (unsigned axis = 0; axis < d; ++axis) {
        const ShadowGrid grid = shadow({d, n}, axis, Budget{n * d});
        const std::uint64_t cells = std::uint64_t{1} << (n * (d - 1));
        if (grid.cell_count() != cells || !grid.all_ones()) {
          return {false, "d=" + std::to_string(d) + " n=" + std::to_string(n) +
                             " axis=" + std::to_string(axis)};
        }
        ++grids;
      }
    }
  }
  return {true, std::to_string(grids) + " shadows, every cell hit once"};
}

Outcome strategy_soundness() {
  const oracle::RetrogradeTable table(3, kStrategyBound);
  std::uint64_t n_positions = 0, p_positions = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const oracle::Coords c = table.decode(i);
    const Position p(c);
    const bool is_p = table.is_p(c);
    if ((classify(p) == Classification::P) != is_p) {
      return {false, "classification wrong at " + to_string(p)};
    }
    if (!is_p) {
      ++n_positions;
      const auto m = optimal_move(p);
      if (!m || !is_legal(p, *m)) return {false, "no legal optimal move at " + to_string(p)};
      const Position next = apply(p, *m);
      if (!table.is_p(oracle::Coords(next.coords().begin(), next.coords().end())) || classify(next) != Classification::P) {
        return {false, "optimal move from " + to_string(p) + " reaches an N-position"};
      }
    } else {
      ++p_positions;
      if (optimal_move(p)) return {false, "optimal move offered at " + to_string(p)};
      for (const Move& m : legal_moves(p)) {
        const Position next = apply(p, m);
        if (table.is_p(oracle::Coords(next.coords().begin(), next.coords().end())) || classify(next) != Classification::N) {
          return {false, "move from P-position " + to_string(p) + " reaches a P-position"};
        }
      }
    }
  }
  return {true, std::to_string(n_positions) + " N and " + std::to_string(p_positions) +
                    " P positions checked"};
}

Outcome worked_example() {
  if (nim_sum({4, 6, 2}) != 0) return {false, "nim_sum(4,6,2) != 0"};
  const auto m = optimal_move(Position{4, 6, 9});
  if (!m || m->pile_index != 2 || m->new_size != 2) {
    return {false, "optimal_move(4,6,9) is not pile 2 -> 2"};
  }
  return {true, "nim_sum(4,6,2)=0, optimal_move(4,6,9)=pile 2 -> 2"};
}

Outcome membership_agreement() {
  std::uint64_t checked = 0;
  bool ok = true;
  std::string where;
  oracle::for_each_point(3, kMembershipBound, [&](const oracle::Coords& c) {
    const Position p(c);
    if (ok && membership_nimsum(p) != membership_recursive(p)) {
      ok = false;
      where = to_string(p);
    }
    ++checked;
  });
  if (!ok) return {false, "disagreement at " + where};

  std::mt19937_64 rng(kMembershipSeed);
  std::uniform_int_distribution<Coord> coord(0, (Coord{1} << kMembershipSampleBits) - 1);
  std::uint64_t members = 0;
  for (std::size_t i = 0; i < kMembershipSamples; ++i) {
    Position p{coord(rng), coord(rng), coord(rng), coord(rng)};
    if (i % 2 == 1) {
      // Half the samples are forced into the set so both answers get exercised.
      p = p.with(3, p[0] ^ p[1] ^ p[2]);
    }
    const bool a = membership_nimsum(p);
    if (a != membership_recursive(p)) return {false, "disagreement at " + to_string(p)};
    members += a;
    ++checked;
  }
  return {true, std::to_string(checked) + " points agree (" + std::to_string(members) +
                    " random members)"};
}

Outcome simulation() {
  const auto start = Clock::now();
  std::mt19937_64 rng(kSimulationSeed);
  std::uniform_int_distribution<Coord> coord(1, kSimulationBound - 1);

  std::uint64_t wins = 0;
  for (std::size_t g = 0; g < kRandomGames;) {
    const Position p{coord(rng), coord(rng), coord(rng)};
    if (classify(p) != Classification::N) continue;
    wins += simulate(p, Opponent::random, 1, kSimulationSeed + g).engine_wins;
    ++g;
  }

  std::uint64_t losses = 0;
  for (std::size_t g = 0; g < kPerfectGames;) {
    const Coord a = coord(rng), b = coord(rng);
    const Position p{a, b, a ^ b};
    if (p[2] == 0) continue;
    losses += simulate(p, Opponent::perfect, 1, kSimulationSeed + g).engine_losses;
    ++g;
  }

  const double elapsed = seconds_since(start);
  std::string detail = "random opponent: " + std::to_string(wins) + "/" +
                       std::to_string(kRandomGames) + " engine wins; perfect opponent: " +
                       std::to_string(losses) + "/" + std::to_string(kPerfectGames) +
                       " engine losses; " + std::to_string(elapsed) + " s";
  const bool pass = wins == kRandomGames && losses == kPerfectGames &&
                    elapsed <= kSimulationSeconds;
  return {pass, detail};
}

Outcome inductive_step() {
  for (unsigned d = 2; d <= 4; ++d) {
    for (unsigned n = 1; n <= 2; ++n) {
      if (!verify_inductive_step({d, n})) {
        return {false, "counterexample at d=" + std::to_string(d) + " n=" + std::to_string(n)};
      }
    }
  }
  return {true, "no counterexample for d=2..4, n=1..2"};
}

Outcome http_api() {
  using json = nlohmann::json;
  ServerConfig cfg;
  cfg.port = 0;
  ApiServer server(cfg);
  const int port = server.bind();
  std::thread runner([&] { server.run(); });
  server.wait_until_ready();

  Outcome result{true, "game, hint and fractal endpoints respond as expected"};
  try {
    httplib::Client c("127.0.0.1", port);
    auto created = c.Post("/games", R"({"piles":[4,6,9],"human_first":true})",
                          "application/json");
    const json game = json::parse(created->body);
    const std::string id = game.at("id");
    const json hint = json::parse(c.Get("/games/" + id + "/hint")->body);
    const json moved = json::parse(
        c.Post("/games/" + id + "/moves", R"({"pile_index":0,"new_size":0})",
               "application/json")->body);
    const auto fractal = c.Get("/fractal?d=3&n=1");
    const json big = json::parse(c.Get("/fractal?d=3&n=6")->body);

    if (created->status != 201 || game.at("classification") != "N") {
      result = {false, "POST /games"};
    } else if (hint.at("winning_moves") != json::array({{{"pile_index", 2}, {"new_size", 2}}})) {
      result = {false, "hint"};
    } else if (moved.at("position") != json({0, 6, 6})) {
      result = {false, "move and engine reply"};
    } else if (fractal->body !=
               R"({"d":3,"n":1,"count":4,"points":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]})") {
      result = {false, "fractal d=3 n=1"};
    } else if (big.at("count") != 4096) {
      result = {false, "fractal d=3 n=6"};
    }
  } catch (const std::exception& e) {
    result = {false, e.what()};
  }
  server.stop();
  runner.join();
  return result;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"theorem-sweep", theorem_sweep},
      {"cardinality", cardinality},
      {"figure-reproduction", figure_reproduction},
      {"shadow-bijectivity", shadow_bijectivity},
      {"strategy-soundness", strategy_soundness},
      {"worked-example", worked_example},
      {"membership-agreement", membership_agreement},
      {"simulation", simulation},
      {"inductive-step", inductive_step},
      {"http-api", http_api},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << '\n';
    failures += !o.pass;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
