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

#include <cstddef>

// Numerical constants and solver tolerances in one place.
//
// The lower-bound results only assert that "some numerical constant c > 0"
// exists. Where an evaluator needs a number, it is pinned here. Tests compare
// ratios across n, epsilon and p and never the constants themselves.
namespace ldp::constants {

/// Bernoulli private lower bound c / (n eps^2). Composed from the 1/8 in the
/// modulus-of-continuity bound and the (1/2)^2 curvature of the squared loss
/// at delta = 1/sqrt(8 n eps^2), then halved once more for slack.
inline constexpr double kBernoulliLower = 1.0 / 512.0;

/// One-parameter L1-information bound C / (n eps^2 E|score|^2) ^ C.
/// Shares the Bernoulli constant; not claimed tight.
inline constexpr double kOneParamInformation = 1.0 / 512.0;

/// Logistic prediction-error bound c * min{1/sqrt(n eps^2), 1/(1+e^|theta0|)}.
inline constexpr double kLogisticPrediction = 1.0 / 8.0;

/// Prefactor 1/(16 sqrt 2) of the generic L1-information lower bound.
inline constexpr double kGenericPrivateLbPrefactor = 0.044194173824159216;

// Construction and solver tolerances.
inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kEqualityTol = 1e-12;
inline constexpr double kScoreMeanTol = 1e-8;
inline constexpr double kContractionSlack = 1e-9;

inline constexpr double kPowerIterationRelTol = 1e-12;
inline constexpr int kPowerIterationCap = 10000;

inline constexpr double kGoldenSectionTol = 1e-10;
inline constexpr double kBisectionTol = 1e-10;
inline constexpr double kBracketCap = 1e3;

inline constexpr double kNewtonGradTol = 1e-10;
inline constexpr double kNewtonStepTol = 1e-6;
inline constexpr int kNewtonIterationCap = 200;
inline constexpr double kMleGradTol = 1e-8;
inline constexpr double kMleNormCap = 50.0;

// Size caps for exhaustive routines.
inline constexpr std::size_t kVertexEnumerationCap = 20;
inline constexpr std::size_t kDualNormSupportCap = 64;
inline constexpr std::size_t kJointAtomCap = 1'000'000;

}  // namespace ldp::constants
