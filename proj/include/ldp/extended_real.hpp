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

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ldp {

/// A non-negative-or-finite real extended with an explicit +infinity marker.
///
/// Divergences, privacy verifiers and several bound evaluators legitimately
/// produce +infinity (absolute-continuity failures, zero kernel entries).
/// The marker is carried as a flag rather than as an IEEE infinity so callers
/// must branch on it explicitly; `value()` refuses to hand out the marker.
template <typename Scalar>
class BasicExtendedReal {
 public:
  constexpr BasicExtendedReal() = default;
  BasicExtendedReal(Scalar value) : value_(value) {  // NOLINT
    if (std::isnan(value)) throw std::domain_error("ExtendedReal: NaN");
    if (std::isinf(value)) {
      if (value < 0) throw std::domain_error("ExtendedReal: -infinity");
      infinite_ = true;
      value_ = 0;
    }
  }

  static constexpr BasicExtendedReal infinity() {
    BasicExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws std::domain_error on the infinity marker.
  Scalar value() const {
    if (infinite_) throw std::domain_error("ExtendedReal: value() on +infinity marker");
    return value_;
  }
  constexpr Scalar value_or(Scalar fallback) const { return infinite_ ? fallback : value_; }

  /// IEEE view for arithmetic that is known to be infinity-safe.
  Scalar as_double() const {
    return infinite_ ? std::numeric_limits<Scalar>::infinity() : value_;
  }

  friend constexpr bool operator==(const BasicExtendedReal& a, const BasicExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(const BasicExtendedReal& a,
                                                     const BasicExtendedReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicExtendedReal& x) {
    if (x.infinite_) return os << "+inf";
    return os << x.value_;
  }

 private:
  Scalar value_ = 0;
  bool infinite_ = false;
};

using ExtendedReal = BasicExtendedReal<double>;

inline ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

}  // namespace ldp
