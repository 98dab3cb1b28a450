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
#include "ldp/contraction.hpp"
#include "ldp/divergences.hpp"
#include "oracles.hpp"

namespace ldp {
namespace {

TEST(Contraction, RandomizedResponseExample) {
  auto rr = rr_two_point_channel(1.0);
  auto p0 = DiscreteDistribution::bernoulli(0.2), p1 = DiscreteDistribution::bernoulli(0.7);
  for (double k : {1.5, 2.0, 3.0}) {
    auto r = check_fk_contraction(rr, p0, p1, k, 3);
    EXPECT_TRUE(r.holds) << k;
    EXPECT_GE(r.slack(), -1e-9);
    EXPECT_EQ(r.seed, 3u);
    const double eps = verify_fk(rr, k).value();
    EXPECT_NEAR(r.epsilon_used.value(), eps, 1e-15);
    EXPECT_NEAR(r.rhs.value(), std::pow(2 * eps * 0.5, k), 1e-12);
  }
}

TEST(Contraction, IdenticalInputsGiveZero) {
  auto p = DiscreteDistribution::bernoulli(0.4);
  auto r = check_fk_contraction(rr_two_point_channel(2.0), p, p, 2.0);
  EXPECT_NEAR(r.lhs, 0.0, 1e-15);
  EXPECT_TRUE(r.holds);
}

TEST(Contraction, InfiniteEpsilonHoldsVacuously) {
  auto id = FiniteChannel::identity({"0", "1"});
  auto r = check_fk_contraction(id, DiscreteDistribution::bernoulli(0.1), DiscreteDistribution::bernoulli(0.9), 2.0);
  EXPECT_TRUE(r.rhs.is_infinite());
  EXPECT_TRUE(r.holds);
}

class ContractionSweep : public ::testing::TestWithParam<int> {};

TEST_P(ContractionSweep, HoldsOnRandomInstances) {
  const std::uint64_t seed = derive_seed(11, {static_cast<std::uint64_t>(GetParam())});
  RngStream rng(seed);
  const int nx = 2 + static_cast<int>(rng.index(3)), nz = 2 + static_cast<int>(rng.index(3));
  auto ch = random_channel(nx, nz, rng);
  auto p0 = DiscreteDistribution(ch.inputs(), random_distribution(nx, rng, 0.2).mass());
  auto p1 = DiscreteDistribution(ch.inputs(), random_distribution(nx, rng, 0.2).mass());
  for (double k : {1.5, 2.0, 3.0}) EXPECT_GE(check_fk_contraction(ch, p0, p1, k, seed).slack(), -1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ContractionSweep, ::testing::Range(0, 50));

TEST(Tensorization, ChiAndKlBounds) {
  std::vector<FiniteChannel> chans{rr_two_point_channel(0.5), rr_two_point_channel(1.0)};
  std::vector<DiscreteDistribution> p0{DiscreteDistribution::bernoulli(0.3), DiscreteDistribution::bernoulli(0.5)};
  std::vector<DiscreteDistribution> p1{DiscreteDistribution::bernoulli(0.6), DiscreteDistribution::bernoulli(0.1)};
  auto rep = check_tensorized_chi(chans, p0, p1);
  EXPECT_EQ(rep.joint_atoms, 4u);
  // Exact product formula: chi^2 of a product is prod(1 + chi_i^2) - 1.
  double prod = 1;
  std::vector<double> tvs;
  double eps2 = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    prod *= 1 + chi_square(push_forward(p0[i], chans[i]), push_forward(p1[i], chans[i])).value();
    tvs.push_back(tv_distance(p0[i], p1[i]));
    eps2 = std::max(eps2, verify_chi2(chans[i]).value());
  }
  EXPECT_NEAR(rep.chi.lhs, prod - 1, 1e-12);
  EXPECT_TRUE(rep.chi.holds);
  EXPECT_TRUE(rep.kl.holds);
  // eps^2 from the chi-square verifier never exceeds (e^eps - 1)^2.
  EXPECT_LE(eps2, std::pow(std::expm1(1.0), 2));
  auto b = kl_tensor_bound(eps2, tvs);
  EXPECT_NEAR(rep.kl.rhs.value(), b.tight, 1e-15);
  EXPECT_LE(rep.kl.lhs, b.tight + 1e-12);
  EXPECT_LE(b.tight, b.loose + 1e-12);
}

TEST(Tensorization, KlBoundSingleTerm) {
  auto b = kl_tensor_bound(1.0, {0.5});
  EXPECT_NEAR(b.tight, std::log(2.0), 1e-15);
  EXPECT_NEAR(b.loose, 1.0, 1e-15);
}

TEST(Complexity, HypercubeIsExact) {
  for (int d : {1, 2, 3, 5})
    for (double delta : {0.1, 0.5, 0.9}) EXPECT_NEAR(complexity_c2(hypercube_packing(d, delta)), delta * delta / d, 1e-10);
}

TEST(Complexity, MembersEqualBaseGiveZero) {
  auto base = DiscreteDistribution::bernoulli(0.3);
  PackingFamily fam{base, {base, base}};
  EXPECT_NEAR(complexity_c2(fam), 0.0, 1e-15);
  EXPECT_NEAR(complexity_cinf(fam, base), 0.0, 1e-15);
}

TEST(Complexity, CinfSingleMember) {
  auto base = DiscreteDistribution::bernoulli(0.5);
  auto m = DiscreteDistribution::bernoulli(0.8);
  PackingFamily fam{base, {m}};
  const double tv = tv_distance(base, m);
  EXPECT_NEAR(complexity_cinf(fam, base), std::pow(2 * tv, 2), 1e-12);
  EXPECT_NEAR(complexity_cinf(fam, base), oracle::kCinfSingleMember, 1e-12);
}

TEST(Complexity, CinfDominatesScaledC2) {
  RngStream rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    auto base = random_distribution(4, rng);
    PackingFamily fam{base, {}};
    for (int v = 0; v < 3; ++v) fam.members.push_back(DiscreteDistribution(base.support(), random_distribution(4, rng).mass()));
    EXPECT_GE(complexity_cinf(fam, base) + 1e-12, complexity_c2(fam) * base.mass().minCoeff());
  }
}

TEST(Complexity, SparseLogistic) {
  auto f0 = sparse_logistic_packing(2, 0.0, 0.5);
  EXPECT_NEAR(complexity_c2(f0), oracle::kSparseC2Theta0Zero, 1e-6);
  EXPECT_NEAR(sparse_logistic_complexity_bound(2, 0.0, 0.5), oracle::kSparseBoundTheta0Zero, 1e-6);
  auto f1 = sparse_logistic_packing(2, 1.0, 0.5);
  // Reference measure: the uniform distribution on the joint atoms.
  auto uniform = DiscreteDistribution::uniform(f1.base.support());
  EXPECT_NEAR(complexity_c2(f1, uniform), oracle::kSparseC2Theta0One, 1e-6);
  EXPECT_NEAR(sparse_logistic_complexity_bound(2, 1.0, 0.5), oracle::kSparseBoundTheta0One, 1e-6);
  for (int d : {2, 3, 4})
    for (double t : {0.0, 0.5, 1.0, 2.0})
      for (double delta : {0.1, 0.5, 1.0}) {
        auto fam = sparse_logistic_packing(d, t, delta);
        EXPECT_LE(complexity_c2(fam, DiscreteDistribution::uniform(fam.base.support())),
                  sparse_logistic_complexity_bound(d, t, delta) + 1e-9);
      }
}

TEST(BigTensor, HypercubeChiMode) {
  const int d = 4;
  const double delta = 0.3, n = 50, eps2 = 0.25;
  auto fam = hypercube_packing(d, delta);
  auto v = big_tensor_bound(fam, n, PrivacyMode::kChi2, eps2, fam.base).value();
  EXPECT_LE(v, n * eps2 * delta * delta * (1 + delta) / d + 1e-12);
  EXPECT_NEAR(big_tensor_bound(fam, 0, PrivacyMode::kChi2, eps2, fam.base).value(), 0.0, 1e-15);
}

TEST(BigTensor, DpModeTwoMembers) {
  auto base = DiscreteDistribution::bernoulli(0.5);
  PackingFamily fam{base, {DiscreteDistribution::bernoulli(0.8), DiscreteDistribution::bernoulli(0.2)}};
  const double cinf = complexity_cinf(fam, base);
  const double ratio = 0.5 / 0.2;  // max_v ||dP/dP_v||_inf
  const double expected = 10 * std::pow(std::exp(0.5) - std::exp(-0.5), 2) / 4 * cinf * std::min(std::exp(1.0), ratio);
  EXPECT_NEAR(big_tensor_bound(fam, 10, PrivacyMode::kDp, 1.0, base).value(), expected, 1e-12);
}

TEST(Complexity, Errors) {
  auto base = DiscreteDistribution::uniform({"a", "b"});
  PackingFamily fam{base, {DiscreteDistribution::point_mass("a")}};
  EXPECT_THROW(complexity_c2(fam, DiscreteDistribution::point_mass("b")), std::invalid_argument);
  std::vector<Atom> many;
  for (int i = 0; i < 21; ++i) many.push_back(std::to_string(i));
  PackingFamily big{DiscreteDistribution::uniform(many), {DiscreteDistribution::uniform(many)}};
  EXPECT_THROW(complexity_cinf(big, big.base), std::length_error);
}

}  // namespace
}  // namespace ldp
