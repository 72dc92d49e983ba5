// Sanity checks for the oracles themselves, on cases small enough to work
// out by hand.

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dpllt::testing {
namespace {

TEST(TruthTable, SmallCases) {
  EXPECT_TRUE(truth_table_sat(cnf({{1, 2}}), 2));
  EXPECT_FALSE(truth_table_sat(cnf({{1}, {-1}}), 1));
  EXPECT_FALSE(truth_table_sat(cnf({{1, 2}, {-1, 2}, {-2}}), 2));
  EXPECT_TRUE(truth_table_sat(ClauseSet{}, 0));
  // Pigeonhole 3 into 2: p_ij is atom 2*(i)+j+1.
  ClauseSet php = cnf({{1, 2}, {3, 4}, {5, 6}, {-1, -3}, {-1, -5}, {-3, -5},
                       {-2, -4}, {-2, -6}, {-4, -6}});
  EXPECT_FALSE(truth_table_sat(php, 6));
}

TheoryAtomTable xyz() {
  TheoryAtomTable t(4);
  t.declare(1, "x", "y", true);
  t.declare(2, "y", "z", true);
  t.declare(3, "x", "z", true);
  return t;
}

TEST(PartitionOracle, Transitivity) {
  TheoryAtomTable t = xyz();
  EXPECT_FALSE(partition_sat(t, lits({1, 2, -3})));
  EXPECT_TRUE(partition_sat(t, lits({1, -2, -3})));
  EXPECT_TRUE(partition_sat(t, lits({-1, -2, -3})));
  EXPECT_TRUE(partition_sat(t, lits({1, 2, 3, 4})));
  EXPECT_FALSE(partition_sat(t, lits({4, -4})));
}

TEST(PartitionOracle, Disequality) {
  TheoryAtomTable t(2);
  t.declare(1, "x", "y", false);
  t.declare(2, "x", "y", true);
  EXPECT_FALSE(partition_sat(t, lits({1, 2})));
  EXPECT_TRUE(partition_sat(t, lits({-1, 2})));
}

TEST(PartitionOracle, FiveConstantsChain) {
  TheoryAtomTable t(5);
  t.declare(1, "a", "b", true);
  t.declare(2, "b", "c", true);
  t.declare(3, "c", "d", true);
  t.declare(4, "d", "e", true);
  t.declare(5, "a", "e", true);
  EXPECT_FALSE(partition_sat(t, lits({1, 2, 3, 4, -5})));
  EXPECT_TRUE(partition_sat(t, lits({1, 2, -3, 4, -5})));
}

TEST(BruteForce, ClausesModuloEquality) {
  TheoryAtomTable t = xyz();
  EXPECT_FALSE(brute_force_sat(t, cnf({{1}, {2}, {-3}})));
  EXPECT_TRUE(brute_force_sat(t, cnf({{1, 2}, {-3}})));
  EXPECT_FALSE(brute_force_sat(t, cnf({{1, 2}, {-3}}), lits({1, 2})));
}

TEST(RecursiveTrail, HandExamples) {
  Trail t{{lit(1), false}, {lit(2), true}, {lit(-3), false}};
  EXPECT_EQ(forget_rec(t), lits({1, 2, -3}));
  Trail ad{{lit(1), true}};
  EXPECT_TRUE(same_multiset(backstrict_rec(ad), {lits({-1})}));
  EXPECT_TRUE(same_multiset(backpoints_rec(ad), {lits({-1}), lits({1})}));
  Trail adb{{lit(1), true}, {lit(2), false}};
  EXPECT_TRUE(same_multiset(backpoints_rec(adb), {lits({-1}), lits({1, 2})}));
  EXPECT_TRUE(same_multiset(backpoints_rec(Trail{}), {LiteralSet{}}));
}

TEST(Generators, RandomCnfRespectsLimits) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    RandomCnf r = random_cnf(rng, 8, 30, 4);
    EXPECT_LE(r.atoms, 8u);
    EXPECT_LE(r.clauses.count(), 30u);
    for (const Clause &c : r.clauses) {
      EXPECT_LE(c.size(), 4u);
      EXPECT_EQ(atoms(c).size(), 2 * c.size()) << "repeated atom";
    }
  }
}

} // namespace
} // namespace dpllt::testing
