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

// Domain types shared by both tree models.
//
// A vertex "class" is its degree for labeled trees (classes 1..D) and its
// number of children for plane trees (classes 0..D). Vectors indexed by class
// are stored densely by position, position = class - MinClass(kind); use the
// class-based accessors to avoid mixing the two conventions.

#ifndef GIBBSTREE_ENSEMBLES_HPP_
#define GIBBSTREE_ENSEMBLES_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gibbstree/error.hpp"

namespace gibbstree {

enum class Kind { kLabeled, kPlane };

constexpr std::string_view KindName(Kind kind) {
  return kind == Kind::kLabeled ? "labeled" : "plane";
}

constexpr int MinClass(Kind kind) { return kind == Kind::kLabeled ? 1 : 0; }

// Smallest legal bound D for the kind. Labeled trees with D = 1 exist only
// for N = 2, and the constrained set of frequency vectors is empty.
constexpr int MinBound(Kind kind) { return kind == Kind::kLabeled ? 2 : 1; }

constexpr int NumClasses(Kind kind, int bound) {
  return kind == Kind::kLabeled ? bound : bound + 1;
}

// Prescribed mean class on the manifold: mean degree 2, mean child count 1.
constexpr double TargetMean(Kind kind) {
  return kind == Kind::kLabeled ? 2.0 : 1.0;
}

// Excess of a class over the smallest degree that still forms a tree:
// degree - 1 for labeled, child count for plane. Summed over all vertices the
// excess equals DegreeBudget.
constexpr int ClassExcess(Kind kind, int k) {
  return kind == Kind::kLabeled ? k - 1 : k;
}

// Total excess over N vertices: sum(d_i - 1) = N - 2 for a labeled tree,
// sum(c_i) = N - 1 for a plane tree.
constexpr std::int64_t DegreeBudget(Kind kind, std::int64_t n) {
  return kind == Kind::kLabeled ? n - 2 : n - 1;
}

// Total class sum sum(k * n_k) of a tree on n vertices.
constexpr std::int64_t ClassSum(Kind kind, std::int64_t n) {
  return kind == Kind::kLabeled ? 2 * n - 2 : n - 1;
}

struct EnsembleSpec {
  Kind kind = Kind::kLabeled;
  int bound = 2;
  double beta = 0.0;
  std::vector<double> energy;  // by position, see header comment

  int min_class() const { return MinClass(kind); }
  int max_class() const { return bound; }
  int num_classes() const { return NumClasses(kind, bound); }
  double energy_of(int k) const { return energy.at(k - min_class()); }

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

inline EnsembleSpec MakeSpec(Kind kind, int bound, double beta,
                             std::vector<double> energy) {
  return EnsembleSpec{kind, bound, beta, std::move(energy)};
}

// Zero energy table: the uniform (beta-independent) ensemble.
inline EnsembleSpec UniformSpec(Kind kind, int bound) {
  const int size = bound >= 0 ? NumClasses(kind, bound) : 0;
  return EnsembleSpec{kind, bound, 0.0,
                      std::vector<double>(size > 0 ? size : 0, 0.0)};
}

inline const EnsembleSpec& ValidateSpec(const EnsembleSpec& spec) {
  if (spec.bound < MinBound(spec.kind)) {
    throw Error(ErrorCode::kBoundTooSmall,
                std::string(KindName(spec.kind)) + " trees need D >= " +
                    std::to_string(MinBound(spec.kind)) + ", got " +
                    std::to_string(spec.bound));
  }
  if (static_cast<int>(spec.energy.size()) != spec.num_classes()) {
    throw Error(ErrorCode::kBadEnergyTable,
                "expected " + std::to_string(spec.num_classes()) +
                    " energies, got " + std::to_string(spec.energy.size()));
  }
  for (double c : spec.energy) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kBadEnergyTable, "non-finite energy entry");
    }
  }
  if (!std::isfinite(spec.beta)) {
    throw Error(ErrorCode::kBadEnergyTable, "non-finite inverse temperature");
  }
  return spec;
}

// Vertex counts per class (the degree profile chi of a tree).
class CountVector {
 public:
  CountVector() = default;
  CountVector(Kind kind, std::vector<std::int64_t> counts)
      : kind_(kind), counts_(std::move(counts)) {}

  Kind kind() const { return kind_; }
  int min_class() const { return MinClass(kind_); }
  int max_class() const { return min_class() + size() - 1; }
  int size() const { return static_cast<int>(counts_.size()); }

  std::int64_t at(int k) const { return counts_.at(k - min_class()); }
  std::int64_t& at(int k) { return counts_.at(k - min_class()); }

  std::span<const std::int64_t> counts() const { return counts_; }
  std::vector<std::int64_t>& mutable_counts() { return counts_; }

  std::int64_t total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
  }
  std::int64_t class_sum() const {
    std::int64_t s = 0;
    for (int k = min_class(); k <= max_class(); ++k) s += k * at(k);
    return s;
  }

  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend auto operator<=>(const CountVector& a, const CountVector& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Kind kind_ = Kind::kLabeled;
  std::vector<std::int64_t> counts_;
};

// Real vector indexed by class; on the manifold M when it is a probability
// vector with the kind's prescribed mean.
class FrequencyVector {
 public:
  FrequencyVector() = default;
  FrequencyVector(Kind kind, std::vector<double> p)
      : kind_(kind), p_(std::move(p)) {}

  Kind kind() const { return kind_; }
  int min_class() const { return MinClass(kind_); }
  int max_class() const { return min_class() + size() - 1; }
  int size() const { return static_cast<int>(p_.size()); }

  double at(int k) const { return p_.at(k - min_class()); }
  std::span<const double> values() const { return p_; }
  std::vector<double>& mutable_values() { return p_; }

  double sum() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }
  double mean() const {
    double m = 0.0;
    for (int k = min_class(); k <= max_class(); ++k) m += k * at(k);
    return m;
  }

  friend bool operator==(const FrequencyVector&,
                         const FrequencyVector&) = default;

 private:
  Kind kind_ = Kind::kLabeled;
  std::vector<double> p_;
};

inline constexpr double kManifoldTolerance = 1e-12;

inline bool OnManifold(const FrequencyVector& p,
                       double tol = kManifoldTolerance) {
  for (double v : p.values()) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  }
  return std::abs(p.sum() - 1.0) <= tol &&
         std::abs(p.mean() - TargetMean(p.kind())) <= tol;
}

inline bool IsFeasible(const CountVector& n, const EnsembleSpec& spec) {
  if (n.kind() != spec.kind || n.size() != spec.num_classes()) return false;
  for (std::int64_t v : n.counts()) {
    if (v < 0) return false;
  }
  return n.class_sum() == ClassSum(spec.kind, n.total());
}

inline FrequencyVector FreqFromCounts(const CountVector& n) {
  const std::int64_t total = n.total();
  if (total < 1) {
    throw Error(ErrorCode::kInvalidArgument, "count vector has N < 1");
  }
  std::vector<double> p(n.size());
  for (int i = 0; i < n.size(); ++i) {
    p[i] = static_cast<double>(n.counts()[i]) / static_cast<double>(total);
  }
  return FrequencyVector(n.kind(), std::move(p));
}

inline double L1Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "length mismatch in l1 distance");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

inline double L1Distance(const FrequencyVector& a, const FrequencyVector& b) {
  return L1Distance(a.values(), b.values());
}

}  // namespace gibbstree

#endif  // GIBBSTREE_ENSEMBLES_HPP_
