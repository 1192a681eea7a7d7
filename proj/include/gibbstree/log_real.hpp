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

#ifndef GIBBSTREE_LOG_REAL_HPP_
#define GIBBSTREE_LOG_REAL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace gibbstree {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) with the max-shift; -inf is absorbing for the sum.
inline double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double LogSumExp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : xs) {
    if (x != kNegInf) sum += std::exp(x - hi);
  }
  return hi + std::log(sum);
}

// A nonnegative quantity carried by its natural logarithm; Zero() is -inf.
// Addition is log-sum-exp, multiplication adds logarithms.
class LogReal {
 public:
  constexpr LogReal() = default;
  static constexpr LogReal FromLog(double logval) { return LogReal(logval); }
  static LogReal FromValue(double v) { return LogReal(std::log(v)); }
  static constexpr LogReal Zero() { return LogReal(kNegInf); }
  static constexpr LogReal One() { return LogReal(0.0); }

  constexpr double log() const { return logval_; }
  double value() const { return std::exp(logval_); }
  constexpr bool is_zero() const { return logval_ == kNegInf; }

  LogReal& operator+=(LogReal o) {
    logval_ = LogAdd(logval_, o.logval_);
    return *this;
  }
  LogReal& operator*=(LogReal o) {
    logval_ = (is_zero() || o.is_zero()) ? kNegInf : logval_ + o.logval_;
    return *this;
  }
  LogReal& operator/=(LogReal o) {
    logval_ = is_zero() ? kNegInf : logval_ - o.logval_;
    return *this;
  }
  friend LogReal operator+(LogReal a, LogReal b) { return a += b; }
  friend LogReal operator*(LogReal a, LogReal b) { return a *= b; }
  friend LogReal operator/(LogReal a, LogReal b) { return a /= b; }
  friend constexpr auto operator<=>(LogReal a, LogReal b) = default;

 private:
  constexpr explicit LogReal(double logval) : logval_(logval) {}
  double logval_ = kNegInf;
};

}  // namespace gibbstree

#endif  // GIBBSTREE_LOG_REAL_HPP_
