#include <gtest/gtest.h>

#include "arp/algorithm.hpp"
#include "arp/errors.hpp"
#include "test_support.hpp"

using namespace arp;
using arp::testing::Scripted;
using arp::testing::uniform_draw_factory;

namespace {

std::vector<double> values(std::span<const ObjectiveValue> s) {
  std::vector<double> out;
  for (auto v : s) out.push_back(v.value);
  return out;
}

}  // namespace

TEST(ObjectiveValue, DefaultIsWorstAndOrderingIsExact) {
  ObjectiveValue inf;
  EXPECT_GT(inf, ObjectiveValue(1e300));
  EXPECT_LT(ObjectiveValue(-0.5), ObjectiveValue(-0.4999999999));
  EXPECT_EQ(ObjectiveValue(3), ObjectiveValue(3.0));
}

TEST(Trajectory, RunningMinimum) {
  Scripted algo({5, 3, 4, 2});
  Trajectory t;
  extend(t, algo, 3);
  EXPECT_EQ(values(t.best_series()), (std::vector<double>{5, 3, 3}));
  extend(t, algo, 4);
  EXPECT_EQ(values(t.best_series()), (std::vector<double>{5, 3, 3, 2}));
  EXPECT_EQ(values(t.raw_series()), (std::vector<double>{5, 3, 4, 2}));
  EXPECT_EQ(t.best(2), ObjectiveValue(3));
  EXPECT_EQ(t.raw(3), ObjectiveValue(4));
  EXPECT_EQ(t.final_best(), ObjectiveValue(2));
}

TEST(Trajectory, ExtendToSameLengthIsNoOp) {
  Scripted algo({5, 3});
  Trajectory t;
  extend(t, algo, 2);
  extend(t, algo, 2);
  EXPECT_EQ(t.length(), 2u);
  EXPECT_EQ(algo.steps(), 2u);
}

TEST(Trajectory, ExtendKeepsPrefix) {
  auto algo = uniform_draw_factory()(42);
  Trajectory t;
  extend(t, *algo, 100);
  const auto raw = values(t.raw_series());
  const auto best = values(t.best_series());
  extend(t, *algo, 110);
  ASSERT_EQ(t.length(), 110u);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(t.raw_series()[i].value, raw[i]);
    EXPECT_EQ(t.best_series()[i].value, best[i]);
  }
}

TEST(Trajectory, ShrinkingIsAContractViolation) {
  Scripted algo({1});
  Trajectory t;
  extend(t, algo, 5);
  EXPECT_THROW(extend(t, algo, 4), ContractViolation);
}

TEST(Trajectory, BestNeverAboveRawAndNonincreasing) {
  auto algo = uniform_draw_factory(50)(9);
  Trajectory t;
  extend(t, *algo, 500);
  for (std::size_t s = 1; s <= t.length(); ++s) {
    EXPECT_LE(t.best(s), t.raw(s));
    if (s > 1) EXPECT_LE(t.best(s), t.best(s - 1));
  }
}

TEST(Spawn, SameSeedAndIndexReplays) {
  const auto factory = uniform_draw_factory();
  auto a = spawn_replication(factory, 7, 1);
  auto b = spawn_replication(factory, 7, 1);
  extend(a.trajectory, *a.algorithm, 200);
  extend(b.trajectory, *b.algorithm, 200);
  EXPECT_EQ(values(a.trajectory.raw_series()), values(b.trajectory.raw_series()));
  EXPECT_EQ(a.trajectory.seed(), b.trajectory.seed());
}

TEST(Spawn, DifferentIndicesDiffer) {
  const auto factory = uniform_draw_factory(1000);
  int differing = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto a = spawn_replication(factory, seed, 1);
    auto b = spawn_replication(factory, seed, 2);
    differing += a.algorithm->step() != b.algorithm->step();
  }
  EXPECT_GE(differing, 99);
}

TEST(Spawn, IndexMustBePositive) {
  EXPECT_THROW(spawn_replication(uniform_draw_factory(), 1, 0), ContractViolation);
}

TEST(Spawn, GrowingPoolLeavesExistingReplicationsUntouched) {
  const auto factory = uniform_draw_factory();
  auto build = [&](std::size_t r) {
    ReplicationPool pool;
    for (std::size_t i = 1; i <= r; ++i) {
      auto rep = spawn_replication(factory, 3, i);
      extend(rep.trajectory, *rep.algorithm, 50);
      pool.push_back(std::move(rep));
    }
    return pool;
  };
  const auto small = build(20);
  const auto large = build(24);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(values(small[i].trajectory.raw_series()), values(large[i].trajectory.raw_series()));
  }
}

TEST(ReplicationPool, ShapeAndMinimum) {
  ReplicationPool pool;
  EXPECT_EQ(pool.common_length(), 0u);
  EXPECT_TRUE(pool.is_rectangular());
  for (auto seq : {std::vector<double>{4, 2, 9}, std::vector<double>{3, 8, 1}}) {
    Replication rep{Trajectory(0), std::make_unique<Scripted>(seq)};
    extend(rep.trajectory, *rep.algorithm, 3);
    pool.push_back(std::move(rep));
  }
  EXPECT_EQ(pool.common_length(), 3u);
  EXPECT_TRUE(pool.is_rectangular());
  EXPECT_EQ(pool.minimum(), ObjectiveValue(1));
  extend(pool[0].trajectory, *pool[0].algorithm, 4);
  EXPECT_FALSE(pool.is_rectangular());
  EXPECT_EQ(pool.common_length(), 3u);
}
