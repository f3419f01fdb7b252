#include "triramsey/ramsey_search.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace triramsey {
namespace {

struct OracleBoard {
  std::vector<std::vector<std::size_t>> one, two;
  std::size_t cells = 0;

  OracleBoard(std::size_t m, std::size_t p, std::size_t q, std::size_t k)
      : one(oracle::winning_sets(m, p, k)), two(oracle::winning_sets(m, q, k)), cells(oracle::board_cells(m, k).size()) {}

  std::vector<bool> owned(std::uint64_t bits, bool first) const {
    std::vector<bool> out(cells);
    for (std::size_t i = 0; i < cells; ++i) out[i] = (((bits >> i) & 1U) != 0) == first;
    return out;
  }
  bool one_wins(std::uint64_t bits) const { return oracle::owns_some(one, owned(bits, true)); }
  bool two_wins(std::uint64_t bits) const { return oracle::owns_some(two, owned(bits, false)); }
  bool draw(std::uint64_t bits) const { return !one_wins(bits) && !two_wins(bits); }

  std::optional<std::uint64_t> first_draw() const {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
      if (draw(bits)) return bits;
    }
    return std::nullopt;
  }
};

struct Case {
  std::size_t m, p, q, k;
};

// Every board small enough for the oracle to sweep.
const std::vector<Case> kSmallCases = {
    {1, 1, 1, 1}, {2, 1, 2, 1}, {2, 2, 2, 1}, {3, 2, 2, 1}, {3, 2, 3, 1}, {3, 3, 3, 1}, {4, 2, 2, 1},
    {4, 2, 3, 1}, {4, 3, 3, 1}, {4, 2, 4, 1}, {3, 2, 2, 2}, {3, 2, 3, 2}, {3, 3, 3, 2}, {4, 3, 3, 3},
    {4, 4, 4, 2}, {4, 3, 4, 3}};

TEST(DrawSearch, StrategiesAgreeWithTheOracle) {
  for (const auto& c : kSmallCases) {
    const OracleBoard oracle_board(c.m, c.p, c.q, c.k);
    if (oracle_board.cells > 16) continue;
    const auto want = oracle_board.first_draw();
    DrawSearch search(search_config(c.m, c.p, c.q, c.k));
    const auto ex = search.find(SearchStrategy::Exhaustive, 1ULL << 40);
    const auto bt = search.find(SearchStrategy::Backtracking, 1ULL << 40);
    const auto tag = ::testing::Message() << c.m << "," << c.p << "," << c.q << "," << c.k;
    if (want) {
      ASSERT_EQ(ex.result, SearchOutcome::Result::DrawFound) << tag;
      EXPECT_EQ(ex.witness->player_one.word0(), *want) << tag << " least draw";
      ASSERT_EQ(bt.result, SearchOutcome::Result::DrawFound) << tag;
      EXPECT_TRUE(oracle_board.draw(bt.witness->player_one.word0())) << tag;
    } else {
      EXPECT_EQ(ex.result, SearchOutcome::Result::NoDrawExists) << tag;
      EXPECT_EQ(bt.result, SearchOutcome::Result::NoDrawExists) << tag;
    }
  }
}

TEST(DrawSearch, IsDrawMatchesTheOracleOnEveryColoring) {
  for (const auto& c : kSmallCases) {
    const OracleBoard oracle_board(c.m, c.p, c.q, c.k);
    if (oracle_board.cells > 12) continue;
    DrawSearch search(search_config(c.m, c.p, c.q, c.k));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << oracle_board.cells); ++bits) {
      ASSERT_EQ(search.is_draw(bits), oracle_board.draw(bits));
      ASSERT_EQ(search.is_draw(search.coloring_from_word(bits)), oracle_board.draw(bits));
    }
  }
}

TEST(DrawSearch, CensusMatchesTheOracle) {
  for (const auto& c : kSmallCases) {
    const OracleBoard oracle_board(c.m, c.p, c.q, c.k);
    if (oracle_board.cells > 12) continue;
    ColoringCensus want;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << oracle_board.cells); ++bits) {
      const bool a = oracle_board.one_wins(bits), b = oracle_board.two_wins(bits);
      (a && b ? want.both : a ? want.one_only : b ? want.two_only : want.neither)++;
    }
    const auto got = DrawSearch(search_config(c.m, c.p, c.q, c.k)).census();
    EXPECT_EQ(got.neither, want.neither);
    EXPECT_EQ(got.one_only, want.one_only);
    EXPECT_EQ(got.two_only, want.two_only);
    EXPECT_EQ(got.both, want.both);
    EXPECT_EQ(got.total(), std::uint64_t{1} << oracle_board.cells);
  }
}

TEST(DrawSearch, ThreeRowsTwoTwoHasNoDraw) {
  const auto census = DrawSearch(search_config(3, 2, 2, 1)).census();
  EXPECT_EQ(census.neither, 0u);
  EXPECT_EQ(census.both, 0u);
  EXPECT_EQ(census.one_only + census.two_only, 64u);
}

TEST(DrawSearch, ZeroBudgetIsRejected) {
  DrawSearch search(search_config(3, 2, 2, 1));
  for (auto s : {SearchStrategy::Exhaustive, SearchStrategy::Backtracking, SearchStrategy::Randomized}) {
    try {
      search.find(s, 0);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::BudgetInvalid);
    }
  }
}

TEST(DrawSearch, SmallBudgetsAreInconclusiveNotNegative) {
  // (3,3,1) on five rows has no draw, but a tiny search cannot show it.
  DrawSearch search(search_config(5, 3, 3, 1));
  EXPECT_EQ(search.find(SearchStrategy::Exhaustive, 3).result, SearchOutcome::Result::Inconclusive);
  const auto tiny = search.find(SearchStrategy::Backtracking, 2);
  EXPECT_EQ(tiny.result, SearchOutcome::Result::Inconclusive);
  EXPECT_LE(tiny.nodes_explored, 3u);
}

TEST(DrawSearch, RandomizedFindsOnlyRealDrawsAndIsSeeded) {
  DrawSearch search(search_config(4, 3, 3, 1));
  const auto a = search.find(SearchStrategy::Randomized, 100000, 42);
  const auto b = search.find(SearchStrategy::Randomized, 100000, 42);
  ASSERT_EQ(a.result, SearchOutcome::Result::DrawFound);
  EXPECT_TRUE(search.is_draw(*a.witness));
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

TEST(DrawSearch, LargeBoardsUseTheMultiWordPath) {
  // Eleven rows, 66 cells, with (7,7,1) still below the threshold.
  DrawSearch search(search_config(11, 7, 7, 1));
  ASSERT_GT(search.cell_count(), 64u);
  const auto bt = search.find(SearchStrategy::Backtracking, 1'000'000);
  ASSERT_EQ(bt.result, SearchOutcome::Result::DrawFound);
  EXPECT_TRUE(search.is_draw(*bt.witness));
  EXPECT_TRUE(search.is_draw(bt.witness->swapped()));
}

TEST(DrawSearch, RandomizedFindsATwoLevelDraw) {
  // Five rows with (3,3,2): 146 two-row cells; the counting bound says a
  // draw exists.
  const auto out = find_draw(search_config(5, 3, 3, 2), SearchStrategy::Randomized, 1'000'000, 7);
  ASSERT_EQ(out.result, SearchOutcome::Result::DrawFound);
  ASSERT_EQ(out.witness->size(), 146u);
  std::vector<bool> one(146), two(146);
  for (std::size_t i = 0; i < 146; ++i) two[i] = !(one[i] = out.witness->player_one.test(i));
  const auto sets = oracle::winning_sets(5, 3, 2);
  EXPECT_FALSE(oracle::owns_some(sets, one));
  EXPECT_FALSE(oracle::owns_some(sets, two));
}

TEST(RestrictColoring, DrawsRestrictToDraws) {
  DrawSearch big(search_config(4, 3, 3, 1));
  DrawSearch small(search_config(3, 3, 3, 1));
  for (std::uint64_t bits = 0; bits < (1U << 10); ++bits) {
    if (!big.is_draw(bits)) continue;
    const auto r = restrict_coloring(big.coloring_from_word(bits), big.board(), small.board());
    EXPECT_EQ(r.size(), 6u);
    EXPECT_EQ(r.player_one.word0(), bits & 63U);
    EXPECT_TRUE(small.is_draw(r));
  }
  DrawSearch big2(search_config(4, 3, 3, 2));
  DrawSearch small2(search_config(3, 3, 3, 2));
  std::size_t checked = 0;
  for (std::uint64_t bits = 0; bits < (1U << 16) && checked < 200; bits += 7) {
    const auto wide = big2.coloring_from_word(bits * 0x9E3779B97F4A7C15ULL);
    if (!big2.is_draw(wide)) continue;
    ++checked;
    EXPECT_TRUE(small2.is_draw(restrict_coloring(wide, big2.board(), small2.board())));
  }
  EXPECT_GT(checked, 0u);
}

TEST(ComputeR1, SingleCellLevels) {
  struct Want {
    std::size_t p, q, r1;
  };
  for (auto w : {Want{1, 1, 1}, Want{2, 2, 3}, Want{2, 3, 4}, Want{3, 2, 4}, Want{3, 3, 5}, Want{2, 4, 5},
                 Want{3, 4, 6}}) {
    const auto r = compute_r1(w.p, w.q, 1, 10, 50'000'000);
    EXPECT_EQ(r.status, R1Report::Status::Exact) << w.p << "," << w.q;
    EXPECT_EQ(r.value, w.r1) << w.p << "," << w.q;
    if (w.r1 > std::max(w.p, w.q)) {
      ASSERT_TRUE(r.witness);
      EXPECT_EQ(r.witness_m, w.r1 - 1);
      EXPECT_TRUE(is_draw_coloring(*r.witness, search_config(r.witness_m, w.p, w.q, 1)));
    }
  }
}

TEST(ComputeR1, ExhaustiveAndBacktrackingAgreeUpToFiveRows) {
  for (std::size_t p = 1; p <= 4; ++p) {
    for (std::size_t q = 1; q <= 4; ++q) {
      const auto a = compute_r1(p, q, 1, 5, 1ULL << 40, SearchStrategy::Exhaustive);
      const auto b = compute_r1(p, q, 1, 5, 1ULL << 40, SearchStrategy::Backtracking);
      EXPECT_EQ(a.status, b.status) << p << "," << q;
      EXPECT_EQ(a.value, b.value) << p << "," << q;
    }
  }
}

TEST(ComputeR1, OutOfBudgetGivesALowerBound) {
  const auto r = compute_r1(3, 3, 1, 10, 1, SearchStrategy::Exhaustive);
  EXPECT_EQ(r.status, R1Report::Status::LowerBound);
  EXPECT_GE(r.value, 3u);
  EXPECT_LE(r.value, 5u);
}

TEST(ComputeR1, TwoLevelCells) {
  // k = 2: with p = q = 2 every cell is itself a winning triangle.
  EXPECT_EQ(compute_r1(2, 2, 2, 4, 1'000'000).value, 2u);
  const auto r = compute_r1(2, 3, 2, 4, 1'000'000);
  EXPECT_EQ(r.status, R1Report::Status::Exact);
  EXPECT_EQ(r.value, 3u);
}

TEST(NoDoubleWin, SmallBoards) {
  EXPECT_TRUE(verify_no_double_win(3, 2, 2, 1));
  EXPECT_TRUE(verify_no_double_win(5, 3, 3, 1));
  EXPECT_TRUE(verify_no_double_win(4, 2, 3, 1));
  // p = q = 1: both players own a single cell whenever both own anything.
  EXPECT_FALSE(verify_no_double_win(2, 1, 1, 1));
  try {
    verify_no_double_win(9, 3, 3, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SpaceTooLarge);
  }
}

}  // namespace
}  // namespace triramsey
