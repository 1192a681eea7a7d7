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

// Enumeration of integer class-count vectors under the two linear
// constraints shared by degree profiles and grids on the manifold:
//
//   sum_k m_k = total,   sum_k excess(k) m_k = budget.
//
// The class at position i has excess i in both kinds (degree - 1 for
// labeled, child count for plane), so the first two positions are solved
// from the constraints and the sweep runs depth-first over positions 2..D'.
// Degree profiles of N-vertex trees use (total, budget) = (N, DegreeBudget);
// the resolution-R grid on M uses (R, R).

#ifndef GIBBSTREE_LATTICE_HPP_
#define GIBBSTREE_LATTICE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"

namespace gibbstree {

inline constexpr double kDefaultLatticeCap = 1e7;

class ConstrainedLattice {
 public:
  ConstrainedLattice(Kind kind, int num_classes, std::int64_t total,
                     std::int64_t budget)
      : kind_(kind), classes_(num_classes), total_(total), budget_(budget) {
    if (num_classes < 2) {
      throw Error(ErrorCode::kInvalidArgument, "lattice needs two classes");
    }
  }

  // Profiles of trees on n vertices.
  static ConstrainedLattice Profiles(const EnsembleSpec& spec, std::int64_t n) {
    return ConstrainedLattice(spec.kind, spec.num_classes(), n,
                              DegreeBudget(spec.kind, n));
  }

  // Points m/resolution of the manifold M.
  static ConstrainedLattice ManifoldGrid(const EnsembleSpec& spec,
                                         std::int64_t resolution) {
    return ConstrainedLattice(spec.kind, spec.num_classes(), resolution,
                              resolution);
  }

  std::int64_t total() const { return total_; }
  std::int64_t budget() const { return budget_; }

  // Exact number of lattice points, as a double so that huge lattices can be
  // rejected without overflow.
  double Size() const {
    if (budget_ < 0 || total_ < 0) return 0.0;
    // ways[b] = number of free vectors with sum i*m_i == b.
    std::vector<double> ways(budget_ + 1, 0.0);
    ways[0] = 1.0;
    for (int i = 2; i < classes_; ++i) {
      for (std::int64_t b = i; b <= budget_; ++b) ways[b] += ways[b - i];
    }
    double size = 0.0;
    for (std::int64_t b = 0; b <= budget_; ++b) {
      // n_0 = total - budget + sum (i-1) m_i must be nonnegative; with
      // total >= budget it always is.
      if (total_ >= budget_) size += ways[b];
    }
    if (total_ < budget_) return SizeByEnumeration();
    return size;
  }

  void RequireSizeAtMost(double cap) const {
    const double size = Size();
    if (size > cap) {
      throw Error(ErrorCode::kLatticeTooLarge,
                  std::to_string(size) + " lattice points exceed cap " +
                      std::to_string(cap));
    }
  }

  // Independent chunks keyed by the leading free coordinate.
  std::int64_t NumChunks() const {
    return classes_ >= 3 ? budget_ / 2 + 1 : 1;
  }

  template <typename Visitor>
  void ForEachInChunk(std::int64_t chunk, Visitor&& visit) const {
    CountVector m(kind_, std::vector<std::int64_t>(classes_, 0));
    if (classes_ == 2) {
      Finish(m, budget_, 0, visit);
      return;
    }
    auto& counts = m.mutable_counts();
    counts[2] = chunk;
    const std::int64_t remaining = budget_ - 2 * chunk;
    if (remaining < 0) return;
    Recurse(m, 3, remaining, chunk, visit);
  }

  template <typename Visitor>
  void ForEach(Visitor&& visit) const {
    for (std::int64_t c = 0; c < NumChunks(); ++c) ForEachInChunk(c, visit);
  }

 private:
  template <typename Visitor>
  void Recurse(CountVector& m, int pos, std::int64_t remaining,
               std::int64_t free_count, Visitor& visit) const {
    auto& counts = m.mutable_counts();
    if (pos == classes_) {
      Finish(m, remaining, free_count, visit);
      return;
    }
    for (std::int64_t v = 0; v * pos <= remaining; ++v) {
      counts[pos] = v;
      Recurse(m, pos + 1, remaining - v * pos, free_count + v, visit);
    }
    counts[pos] = 0;
  }

  template <typename Visitor>
  void Finish(CountVector& m, std::int64_t remaining, std::int64_t free_count,
              Visitor& visit) const {
    auto& counts = m.mutable_counts();
    counts[1] = remaining;
    counts[0] = total_ - remaining - free_count;
    if (counts[0] < 0) return;
    visit(static_cast<const CountVector&>(m));
  }

  double SizeByEnumeration() const {
    double n = 0.0;
    ForEach([&](const CountVector&) { n += 1.0; });
    return n;
  }

  Kind kind_;
  int classes_;
  std::int64_t total_;
  std::int64_t budget_;
};

}  // namespace gibbstree

#endif  // GIBBSTREE_LATTICE_HPP_
