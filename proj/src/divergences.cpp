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

#include "ldp/divergences.hpp"

namespace ldp {

double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned a = align(p, q);
  return tv_distance(a.p, a.q);
}

ExtendedReal kl(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned a = align(p, q);
  return kl(a.p, a.q);
}

double hellinger(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned a = align(p, q);
  return hellinger(a.p, a.q);
}

ExtendedReal chi_square(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned a = align(p, q);
  return chi_square(a.p, a.q);
}

ExtendedReal chi_affinity(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned a = align(p, q);
  return chi_affinity(a.p, a.q);
}

ExtendedReal renyi(const DiscreteDistribution& p, const DiscreteDistribution& q, double alpha) {
  Aligned a = align(p, q);
  return renyi(a.p, a.q, alpha);
}

ExtendedReal fk_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, double k) {
  Aligned a = align(p, q);
  return fk_divergence(a.p, a.q, k);
}

}  // namespace ldp
