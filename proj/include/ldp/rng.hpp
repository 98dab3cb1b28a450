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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ldp {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for a child stream identified by `ids` under `master`.
/// Order-sensitive, so (trial, estimator) and (estimator, trial) differ.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids);

/// Explicit random stream handle. Every randomized routine takes one of these
/// by reference; nothing in the library touches global RNG state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const { return seed_; }
  RngStream child(std::initializer_list<std::uint64_t> ids) const {
    return RngStream(derive_seed(seed_, ids));
  }

  double uniform();  // [0, 1)
  double normal();
  /// Centered Laplace with scale b, by inverse CDF.
  double laplace(double scale);
  bool bernoulli(double p);
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ldp
