#include "nimfrac/nim.hpp"

#include <gtest/gtest.h>

#include <random>

#include "nimfrac/errors.hpp"
#include "oracles.hpp"

namespace nimfrac {
namespace {

TEST(NimSum, WorkedExampleIsZero) { EXPECT_EQ(nim_sum({4, 6, 2}), 0u); }

TEST(NimSum, EmptyAndSelfCancelling) {
  EXPECT_EQ(nim_sum(std::span<const Coord>{}), 0u);
  EXPECT_EQ(nim_sum({0xDEADBEEFull, 0xDEADBEEFull}), 0u);
}

TEST(NimSum, FourSixNine) {
  // Frozen from the digit-expansion oracle.
  ASSERT_EQ(oracle::nim_sum_digits({4, 6, 9}), 11u);
  EXPECT_EQ(nim_sum({4, 6, 9}), 11u);
  // Reducing 9 to the nim-sum of the other two piles gives the winning reply.
  EXPECT_EQ(nim_sum({4, 6}), 2u);
  EXPECT_EQ(nim_sum({4, 6, 9}) ^ 9u, 2u);
}

TEST(NimSum, AlgebraOnRandomTriples) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 10000; ++i) {
    const Coord a = rng(), b = rng(), c = rng();
    EXPECT_EQ(nim_sum({a, b}), nim_sum({b, a}));
    EXPECT_EQ(nim_sum({nim_sum({a, b}), c}), nim_sum({a, nim_sum({b, c})}));
    EXPECT_EQ(nim_sum({a, a}), 0u);
    EXPECT_EQ(nim_sum({a, 0}), a);
    EXPECT_EQ(nim_sum({a, b, c}), oracle::nim_sum_digits({a, b, c}));
  }
}

TEST(Position, RejectsEmpty) {
  try {
    Position p(std::vector<Coord>{});
    FAIL() << "empty position accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::bad_request);
  }
}

TEST(Position, OrderingIsLexicographic) {
  EXPECT_LT(Position({0, 1, 1}), Position({1, 0, 1}));
  EXPECT_LT(Position({1, 0}), Position({1, 0, 0}));
  EXPECT_EQ(to_string(Position{4, 6, 9}), "(4, 6, 9)");
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify({4, 6, 2}), Classification::P);
  EXPECT_EQ(classify({0, 0, 0, 0}), Classification::P);
  ASSERT_EQ(oracle::nim_sum_digits({7, 3, 5}), 1u);
  EXPECT_EQ(classify({7, 3, 5}), Classification::N);
}

TEST(OptimalMove, Examples) {
  EXPECT_EQ(optimal_move({4, 6, 9}), (Move{2, 2}));
  EXPECT_FALSE(optimal_move({5, 5}).has_value());
  EXPECT_EQ(optimal_move({1, 1, 1}), (Move{0, 0}));
}

TEST(OptimalMove, OneOneOneHasExactlyThreeWinners) {
  // Brute force over every legal move, judged by the game-tree oracle.
  const oracle::RetrogradeTable table(3, 2);
  std::vector<Move> winners;
  for (auto [pile, size] : oracle::legal_moves({1, 1, 1})) {
    oracle::Coords next{1, 1, 1};
    next[pile] = size;
    if (table.is_p(next)) winners.push_back({pile, size});
  }
  const std::vector<Move> expected{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(winners, expected);
  EXPECT_EQ(all_winning_moves({1, 1, 1}), expected);
}

TEST(AllWinningMoves, Examples) {
  EXPECT_TRUE(all_winning_moves({0, 0}).empty());
  ASSERT_EQ(oracle::legal_moves({4, 6, 9}).size(), 19u);
  EXPECT_EQ(all_winning_moves({4, 6, 9}), (std::vector<Move>{{2, 2}}));
}

TEST(AllWinningMoves, MatchesBruteForceFilterOnSmallCube) {
  oracle::for_each_point(3, 8, [](const oracle::Coords& c) {
    std::vector<Move> expected;
    for (auto [pile, size] : oracle::legal_moves(c)) {
      oracle::Coords next = c;
      next[pile] = size;
      if (oracle::nim_sum_digits(next) == 0) expected.push_back({pile, size});
    }
    EXPECT_EQ(all_winning_moves(Position(c)), expected) << Position(c);
  });
}

TEST(Strategy, SoundOverSixteenCube) {
  // The oracle labels positions from the game rules alone.
  const oracle::RetrogradeTable table(3, 16);
  std::size_t n_positions = 0;
  oracle::for_each_point(3, 16, [&](const oracle::Coords& c) {
    const Position p(c);
    const bool p_position = table.is_p(c);
    ASSERT_EQ(classify(p) == Classification::P, p_position) << p;
    if (!p_position) {
      ++n_positions;
      const auto m = optimal_move(p);
      ASSERT_TRUE(m.has_value()) << p;
      ASSERT_TRUE(is_legal(p, *m));
      EXPECT_EQ(classify(apply(p, *m)), Classification::P) << p;
    } else {
      EXPECT_FALSE(optimal_move(p).has_value());
      for (const auto& m : legal_moves(p)) {
        EXPECT_EQ(classify(apply(p, m)), Classification::N) << p << " " << m;
      }
    }
  });
  EXPECT_EQ(n_positions, 16u * 16 * 16 - 256);
}

TEST(Apply, RejectsIllegalMoves) {
  const Position p{2, 2};
  for (const Move& bad : {Move{0, 2}, Move{0, 3}, Move{2, 0}}) {
    try {
      apply(p, bad);
      FAIL() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::illegal_move);
    }
  }
  EXPECT_EQ(apply(p, {1, 0}), (Position{2, 0}));
}

TEST(LegalMoves, CountMatchesEnumeration) {
  EXPECT_EQ(legal_move_count({4, 6, 9}), 19u);
  EXPECT_EQ(legal_moves({4, 6, 9}).size(), 19u);
  EXPECT_EQ(legal_move_count({~Coord{0}, 5}), ~Coord{0});
}

}  // namespace
}  // namespace nimfrac
