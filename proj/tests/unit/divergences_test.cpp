// Copyright 2026 The ldp-minimax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "ldp/channels.hpp"
#include "ldp/divergences.hpp"
#include "ldp/rng.hpp"
#include "oracles.hpp"

namespace ldp {
namespace {

TEST(Divergences, FrozenValues) {
  auto half = DiscreteDistribution::bernoulli(0.5);
  auto quarter = DiscreteDistribution::bernoulli(0.25);
  EXPECT_NEAR(tv_distance(DiscreteDistribution::uniform({"a", "b", "c", "d"}), DiscreteDistribution::point_mass("a")),
              oracle::kTvUniform4VsPoint, 1e-15);
  EXPECT_NEAR(kl(half, quarter).value(), oracle::kKlBer05Ber025, 1e-12);
  EXPECT_NEAR(hellinger(half, DiscreteDistribution::bernoulli(0.9)), oracle::kHellingerBer05Ber09, 1e-12);
  EXPECT_NEAR(chi_square(half, quarter).value(), oracle::kChi2Ber05Ber025, 1e-12);
  EXPECT_NEAR(chi_affinity(half, quarter).value(), oracle::kAffinityBer05Ber025, 1e-12);
  EXPECT_NEAR(renyi(half, quarter, 2.0).value(), oracle::kRenyi2Ber05Ber025, 1e-12);
  EXPECT_NEAR(fk_divergence(half, quarter, 3.0).value(), oracle::kF3Ber05Ber025, 1e-12);
}

TEST(Divergences, ProductTv) {
  auto p = product(DiscreteDistribution::bernoulli(0.5), DiscreteDistribution::bernoulli(0.5));
  auto q = product(DiscreteDistribution::bernoulli(0.7), DiscreteDistribution::bernoulli(0.5));
  EXPECT_NEAR(tv_distance(p, q), oracle::kProductTvSpot, 1e-12);
}

TEST(Divergences, AbsoluteContinuityFailureIsInfinite) {
  auto p = DiscreteDistribution::bernoulli(0.5);
  auto q = DiscreteDistribution::point_mass("0");
  EXPECT_TRUE(kl(p, q).is_infinite());
  EXPECT_TRUE(chi_square(p, q).is_infinite());
  EXPECT_TRUE(fk_divergence(p, q, 2.0).is_infinite());
  EXPECT_TRUE(renyi(p, q, 2.0).is_infinite());
  EXPECT_FALSE(kl(q, p).is_infinite());
  EXPECT_NEAR(kl(q, p).value(), std::log(2.0), 1e-12);
}

TEST(Divergences, DisjointSupportsAreAligned) {
  auto p = DiscreteDistribution::point_mass("x");
  auto q = DiscreteDistribution::point_mass("y");
  EXPECT_DOUBLE_EQ(tv_distance(p, q), 1.0);
  EXPECT_NEAR(hellinger(p, q), 1.0, 1e-15);
}

TEST(Divergences, RenyiOrderOneIsKl) {
  auto p = DiscreteDistribution::bernoulli(0.3);
  auto q = DiscreteDistribution::bernoulli(0.6);
  EXPECT_NEAR(renyi(p, q, 1.0).value(), kl(p, q).value(), 1e-12);
}

// Hand-rolled generator: random pairs on up to 6 atoms, some with zero mass.
class RandomPairs : public ::testing::TestWithParam<int> {};

TEST_P(RandomPairs, Properties) {
  RngStream rng(derive_seed(2024, {static_cast<std::uint64_t>(GetParam())}));
  const int k = 2 + static_cast<int>(rng.index(5));
  auto p = random_distribution(k, rng, 0.15);
  auto q = random_distribution(k, rng, 0.15);
  auto r = random_distribution(k, rng, 0.0);  // full support

  // Identity and symmetry.
  EXPECT_NEAR(tv_distance(p, p), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(tv_distance(p, q), tv_distance(q, p));
  EXPECT_NEAR(hellinger(p, q), hellinger(q, p), 1e-15);
  const double tv = tv_distance(p, q);
  EXPECT_GE(tv, 0.0);
  EXPECT_LE(tv, 1.0);
  // Triangle inequality for tv.
  EXPECT_LE(tv, tv_distance(p, r) + tv_distance(r, q) + 1e-12);

  // Against a full-support reference every divergence is finite.
  const double k_r = kl(p, r).value();
  const double chi = chi_square(p, r).value();
  EXPECT_GE(k_r, -1e-12);
  // Pinsker and KL <= log(1 + chi^2).
  EXPECT_LE(2 * std::pow(tv_distance(p, r), 2), k_r + 1e-12);
  EXPECT_LE(k_r, std::log1p(chi) + 1e-12);
  // Affinity is 1 + chi^2 and Renyi-2 is its log.
  EXPECT_NEAR(chi_affinity(p, r).value(), 1 + chi, 1e-12);
  EXPECT_NEAR(renyi(p, r, 2.0).value(), std::log1p(chi), 1e-12);
  // Renyi is nondecreasing in the order.
  double prev = renyi(p, r, 1.0).value();
  for (double a : {1.5, 2.0, 3.0}) {
    const double cur = renyi(p, r, a).value();
    EXPECT_GE(cur, prev - 1e-12);
    prev = cur;
  }
  // f_2 equals chi-square; squared Hellinger is bounded by tv.
  EXPECT_NEAR(fk_divergence(p, r, 2.0).value(), chi, 1e-12);
  EXPECT_LE(std::pow(hellinger(p, r), 2), tv_distance(p, r) + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPairs, ::testing::Range(0, 100));

TEST(Divergences, EigenKernelsMatchDistributionOverloads) {
  Eigen::Vector3d p(0.2, 0.3, 0.5), q(0.4, 0.4, 0.2);
  auto dp = DiscreteDistribution::from_masses(p), dq = DiscreteDistribution::from_masses(q);
  EXPECT_DOUBLE_EQ(tv_distance(p, q), tv_distance(dp, dq));
  EXPECT_DOUBLE_EQ(kl(p, q).value(), kl(dp, dq).value());
  EXPECT_DOUBLE_EQ(chi_square(p, q).value(), chi_square(dp, dq).value());
}

TEST(Divergences, InvalidArguments) {
  auto p = DiscreteDistribution::bernoulli(0.5);
  EXPECT_THROW(renyi(p, p, 0.5), std::invalid_argument);
  EXPECT_THROW(fk_divergence(p, p, 0.5), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({"a", "a"}, std::vector<double>{0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({"a", "b"}, std::vector<double>{0.5, 0.6}), std::invalid_argument);
}

}  // namespace
}  // namespace ldp
