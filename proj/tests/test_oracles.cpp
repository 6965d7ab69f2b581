#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

TEST(Oracle, RiverBfsIncludesGoal) {
  auto all = oracle::river_reachable({0, 0, 0, 0});
  EXPECT_TRUE(all.count({1, 1, 1, 1}));
}

TEST(Oracle, CriticalPairsSweep) {
  auto sw = oracle::sweep_critical_pairs();
  EXPECT_GT(sw.instances, 1000u);
  for (const auto& d : sw.discrepancies) ADD_FAILURE() << d;
}

TEST(Oracle, MatchAnywhereSweep) {
  auto sw = oracle::sweep_match_anywhere();
  EXPECT_GT(sw.instances, 1000u);
  for (const auto& d : sw.discrepancies) ADD_FAILURE() << d;
}
