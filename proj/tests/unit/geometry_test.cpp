#include "nimfrac/geometry.hpp"

#include <algorithm>
#include <gtest/gtest.h>

#include "nimfrac/errors.hpp"
#include "oracles.hpp"

namespace nimfrac {
namespace {

std::vector<oracle::Coords> rows(const PointSet& ps) {
  std::vector<oracle::Coords> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.emplace_back(ps[i].begin(), ps[i].end());
  return out;
}

TEST(Restrict, Examples) {
  const PointSet d3n2 = iterate_recursive({3, 2});
  EXPECT_EQ(restrict(d3n2, 1), base_demihypercube(3));
  EXPECT_EQ(restrict(d3n2, 2), d3n2);

  const PointSet origin = restrict(base_demihypercube(3), 0);
  EXPECT_EQ(rows(origin), (std::vector<oracle::Coords>{{0, 0, 0}}));
  EXPECT_EQ(origin.exponent(), 0u);
}

TEST(Restrict, RejectsLargerExponent) {
  EXPECT_THROW(restrict(base_demihypercube(3), 2), Error);
}

TEST(Restrict, MatchesBruteForceFilter) {
  const PointSet d4n3 = iterate_recursive({4, 3});
  for (unsigned m = 0; m <= 3; ++m) {
    std::vector<oracle::Coords> expected;
    for (auto& r : rows(d4n3)) {
      if (std::ranges::all_of(r, [&](auto c) { return c < (Coord{1} << m); })) {
        expected.push_back(r);
      }
    }
    EXPECT_EQ(rows(restrict(d4n3, m)), expected);
  }
}

TEST(Shadow, Examples) {
  const ShadowGrid g = shadow({3, 2}, 2);
  EXPECT_EQ(g.cell_count(), 16u);
  EXPECT_TRUE(g.all_ones());
  EXPECT_EQ(g.reduced_dimension(), 2u);

  const ShadowGrid g1 = shadow({1, 3}, 0);
  EXPECT_EQ(g1.cell_count(), 1u);
  EXPECT_EQ(g1.count_at({}), 1u);
  EXPECT_TRUE(g1.cell(0).empty());

  const ShadowGrid g2 = shadow({2, 2}, 0);
  ASSERT_EQ(g2.cell_count(), 4u);
  for (Coord k = 0; k < 4; ++k) EXPECT_EQ(g2.count_at(std::vector<Coord>{k}), 1u);
}

TEST(Shadow, RejectsBadAxisAndBudget) {
  EXPECT_THROW(shadow({3, 2}, 3), Error);
  EXPECT_THROW(shadow({3, 13}, 0), BudgetExceeded);
  EXPECT_THROW(shadow({3, 4}, 0, Budget{7}), BudgetExceeded);
}

TEST(Shadow, BothPathsMatchNaiveProjection) {
  for (unsigned d = 1; d <= 4; ++d) {
    for (unsigned n = 1; n <= 3; ++n) {
      const auto points = rows(iterate_recursive({d, n}));
      for (unsigned axis = 0; axis < d; ++axis) {
        const ShadowGrid g = shadow({d, n}, axis);
        const auto naive = oracle::project(points, axis);
        EXPECT_EQ(g.total(), points.size());
        for (std::size_t i = 0; i < g.cell_count(); ++i) {
          const auto cell = g.cell(i);
          const auto it = naive.find(oracle::Coords(cell.begin(), cell.end()));
          const std::uint64_t expected = it == naive.end() ? 0 : it->second;
          EXPECT_EQ(g.count(i), expected) << "d=" << d << " n=" << n << " axis=" << axis;
        }
      }
    }
  }
}

TEST(Shadow, EveryCellHitExactlyOnce) {
  for (unsigned d = 2; d <= 4; ++d) {
    for (unsigned n = 1; n <= 4; ++n) {
      for (unsigned axis = 0; axis < d; ++axis) {
        const ShadowGrid g = shadow({d, n}, axis);
        EXPECT_TRUE(g.all_ones()) << "d=" << d << " n=" << n << " axis=" << axis;
        EXPECT_EQ(g.total(), std::uint64_t{1} << (n * (d - 1)));
      }
    }
  }
}

TEST(Shadow, AxesAgree) {
  for (unsigned d = 2; d <= 4; ++d) {
    const ShadowGrid reference = shadow({d, 3}, 0);
    for (unsigned axis = 1; axis < d; ++axis) {
      const ShadowGrid g = shadow({d, 3}, axis);
      EXPECT_TRUE(std::ranges::equal(g.counts(), reference.counts()));
    }
  }
}

TEST(ShadowGrid, CellIndexRoundTrip) {
  ShadowGrid g(4, 3, 1);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    EXPECT_EQ(g.cell_index(g.cell(i)), i);
  }
  g.add_point(std::vector<Coord>{1, 7, 2, 3});
  EXPECT_EQ(g.count_at(std::vector<Coord>{1, 2, 3}), 1u);
  EXPECT_THROW(g.add_point(std::vector<Coord>{8, 0, 0, 0}), Error);
  EXPECT_FALSE(g.all_ones());
}

TEST(SelfSimilarity, Examples) {
  EXPECT_TRUE(verify_self_similarity({3, 2}));
  EXPECT_TRUE(verify_self_similarity({1, 5}));
  EXPECT_TRUE(verify_self_similarity({4, 3}));
  EXPECT_THROW(verify_self_similarity({3, 1}), Error);
}

TEST(SelfSimilarity, HoldsAcrossSweep) {
  for (unsigned d = 1; d <= 5; ++d) {
    for (unsigned n = 2; n <= 5; ++n) {
      if (n * (d - 1) > 16) continue;
      EXPECT_TRUE(verify_self_similarity({d, n})) << "d=" << d << " n=" << n;
    }
  }
}

}  // namespace
}  // namespace nimfrac
