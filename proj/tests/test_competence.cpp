#include <gtest/gtest.h>

#include <cmath>

#include "spacedcl/competence.hpp"
#include "spacedcl/error.hpp"
#include "spacedcl/rng.hpp"

using namespace spacedcl;

TEST(Competence, Endpoints) {
  CompetenceParams p{0.1, 1.0, 10};
  EXPECT_DOUBLE_EQ(competence(0.0, p), 0.1);
  EXPECT_DOUBLE_EQ(competence(1.0, p), 1.0);
  p.alpha = 2.0;
  EXPECT_DOUBLE_EQ(competence(0.0, p), std::sqrt(0.1));
  EXPECT_DOUBLE_EQ(competence(1.0, p), 1.0);
}

TEST(Competence, HandValues) {
  // (1 - 0.9 * 0.5)^(1/1) and ^(1/2)
  EXPECT_DOUBLE_EQ(competence(0.5, {0.1, 1.0, 2}), 0.55);
  EXPECT_NEAR(competence(0.5, {0.1, 2.0, 2}), 0.7416198487, 1e-10);
}

TEST(Competence, MonotoneOverRandomParameters) {
  Rng rng(11);
  for (int draw = 0; draw < 1000; ++draw) {
    CompetenceParams p{rng.uniform(), 0.2 + 4.8 * rng.uniform(), 2};
    double prev = competence(0.0, p);
    for (int i = 1; i <= 100; ++i) {
      const double c = competence(i / 100.0, p);
      ASSERT_GE(c, prev);
      ASSERT_LE(c, 1.0);
      prev = c;
    }
    ASSERT_DOUBLE_EQ(prev, 1.0);
  }
}

TEST(Competence, LargerAlphaDominates) {
  CompetenceParams a1{0.2, 1.0, 2}, a2{0.2, 2.0, 2};
  for (int i = 0; i <= 1000; ++i) EXPECT_GE(competence(i / 1000.0, a2), competence(i / 1000.0, a1));
}

TEST(Competence, EpochSchedule) {
  CompetenceParams p{0.1, 1.0, 10};
  EXPECT_DOUBLE_EQ(epoch_time(0, p), 0.0);
  EXPECT_DOUBLE_EQ(epoch_time(9, p), 1.0);
  EXPECT_THROW(epoch_time(10, p), DomainError);
  EXPECT_EQ(active_count(0, 100, p), 10u);
  EXPECT_EQ(active_count(9, 100, p), 100u);
  CompetenceParams one{0.1, 1.0, 1};
  EXPECT_DOUBLE_EQ(epoch_time(0, one), 0.0);
}

TEST(Competence, CountRounding) {
  EXPECT_EQ(count_for_competence(100, 0.1), 10u);
  EXPECT_EQ(count_for_competence(100, 0.101), 11u);
  EXPECT_EQ(count_for_competence(7, 0.0), 1u);
  EXPECT_EQ(count_for_competence(7, 1.0), 7u);
  EXPECT_EQ(count_for_competence(0, 0.5), 0u);
  EXPECT_EQ(count_for_competence(3, 0.5), 2u);
}

TEST(Competence, Validation) {
  EXPECT_THROW(competence(1.5, {}), DomainError);
  EXPECT_THROW(competence(-0.1, {}), DomainError);
  EXPECT_THROW((CompetenceParams{-0.1, 1.0, 5}).validate(), ConfigError);
  EXPECT_THROW((CompetenceParams{0.1, 0.0, 5}).validate(), ConfigError);
  EXPECT_THROW((CompetenceParams{0.1, 1.0, 0}).validate(), ConfigError);
  EXPECT_NO_THROW((CompetenceParams{0.1, 1.0, 5}).validate());
}
