// Copyright 2026 The gibbstree Authors
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

// Exact counting of trees by degree data, in log space.

#ifndef GIBBSTREE_COMBINATORICS_HPP_
#define GIBBSTREE_COMBINATORICS_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/log_real.hpp"

namespace gibbstree {

namespace detail {

inline constexpr std::int64_t kLogFactorialTableSize = 1 << 17;

// ln k! for k < kLogFactorialTableSize, accumulated in extended precision.
inline const std::vector<double>& LogFactorialTable() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTableSize);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (std::int64_t k = 1; k < kLogFactorialTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

inline double LogFactorialValue(std::int64_t m) {
  if (m < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "factorial of negative " + std::to_string(m));
  }
  if (m < detail::kLogFactorialTableSize) {
    return detail::LogFactorialTable()[m];
  }
  return static_cast<double>(std::lgamma(static_cast<long double>(m) + 1.0L));
}

inline LogReal LogFactorial(std::int64_t m) {
  return LogReal::FromLog(LogFactorialValue(m));
}

// ln of the multinomial N! / prod n_k!.
inline LogReal LogMultinomial(std::int64_t n, std::span<const std::int64_t> parts) {
  std::int64_t sum = 0;
  double acc = LogFactorialValue(n);
  for (std::int64_t k : parts) {
    if (k < 0) {
      throw Error(ErrorCode::kSumMismatch, "negative multinomial part");
    }
    sum += k;
    acc -= LogFactorialValue(k);
  }
  if (sum != n) {
    throw Error(ErrorCode::kSumMismatch,
                "parts sum to " + std::to_string(sum) + ", expected " +
                    std::to_string(n));
  }
  return LogReal::FromLog(acc);
}

inline LogReal LogMultinomial(std::int64_t n, const CountVector& parts) {
  return LogMultinomial(n, parts.counts());
}

// Labeled trees on vertices 1..N where vertex i has degree d[i-1]:
// (N-2)! / prod (d_i - 1)!, and zero unless the degrees sum to 2N-2.
inline LogReal LogLabeledCountByDegrees(std::span<const int> degrees) {
  const auto n = static_cast<std::int64_t>(degrees.size());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two vertices");
  }
  std::int64_t sum = 0;
  double acc = 0.0;
  for (int d : degrees) {
    if (d < 1) {
      throw Error(ErrorCode::kInvalidArgument, "degree below 1");
    }
    sum += d;
    acc -= LogFactorialValue(d - 1);
  }
  if (sum != 2 * n - 2) return LogReal::Zero();
  return LogReal::FromLog(acc + LogFactorialValue(n - 2));
}

namespace detail {

inline void RequireProfile(std::int64_t n, const CountVector& profile,
                           Kind kind) {
  if (profile.kind() != kind) {
    throw Error(ErrorCode::kKindMismatch, "profile has the wrong tree kind");
  }
  if (profile.total() != n) {
    throw Error(ErrorCode::kSumMismatch,
                "profile sums to " + std::to_string(profile.total()) +
                    ", expected N = " + std::to_string(n));
  }
  for (std::int64_t v : profile.counts()) {
    if (v < 0) throw Error(ErrorCode::kSumMismatch, "negative count");
  }
}

}  // namespace detail

// Labeled trees on N vertices with exactly n_k vertices of degree k:
// (N-2)! / prod ((k-1)!)^{n_k} * N! / prod n_k!.
inline LogReal LogLabeledCountByProfile(std::int64_t n,
                                        const CountVector& profile) {
  detail::RequireProfile(n, profile, Kind::kLabeled);
  if (n < 2 || profile.class_sum() != 2 * n - 2) return LogReal::Zero();
  double acc = LogFactorialValue(n - 2);
  for (int k = profile.min_class(); k <= profile.max_class(); ++k) {
    acc -= static_cast<double>(profile.at(k)) * LogFactorialValue(k - 1);
  }
  return LogReal::FromLog(acc) * LogMultinomial(n, profile);
}

// Plane trees on N vertices with n_k vertices having k children:
// (1/N) * N! / prod n_k!, zero unless sum k n_k = N - 1.
inline LogReal LogPlaneCountByProfile(std::int64_t n,
                                      const CountVector& profile) {
  detail::RequireProfile(n, profile, Kind::kPlane);
  if (n < 1 || profile.class_sum() != n - 1) return LogReal::Zero();
  return LogMultinomial(n, profile) /
         LogReal::FromLog(std::log(static_cast<double>(n)));
}

inline LogReal LogCountByProfile(std::int64_t n, const CountVector& profile) {
  return profile.kind() == Kind::kLabeled ? LogLabeledCountByProfile(n, profile)
                                          : LogPlaneCountByProfile(n, profile);
}

}  // namespace gibbstree

#endif  // GIBBSTREE_COMBINATORICS_HPP_
