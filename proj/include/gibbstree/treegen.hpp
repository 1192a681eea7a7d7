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

// Concrete trees: Prufer codes, Lukasiewicz words, exact Gibbs samplers and
// exhaustive enumerators for small N.

#ifndef GIBBSTREE_TREEGEN_HPP_
#define GIBBSTREE_TREEGEN_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/partition.hpp"
#include "gibbstree/rng.hpp"

namespace gibbstree {

// Labeled tree on vertices 1..N. Edges are kept as (min, max) pairs in
// sorted order, so equal trees compare equal.
class LabeledTree {
 public:
  LabeledTree() = default;
  LabeledTree(int n, std::vector<std::pair<int, int>> edges)
      : n_(n), edges_(std::move(edges)) {
    for (auto& [u, v] : edges_) {
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  int num_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<int> Degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) {
      ++deg.at(u - 1);
      ++deg.at(v - 1);
    }
    return deg;
  }

  // Connected, acyclic, N - 1 edges, labels in range (union-find).
  bool IsValid() const {
    if (n_ < 1 || static_cast<int>(edges_.size()) != n_ - 1) return false;
    std::vector<int> parent(n_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [u, v] : edges_) {
      if (u < 1 || v > n_ || u == v) return false;
      const int a = find(u), b = find(v);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  }

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

// Plane tree as its preorder child counts (Lukasiewicz form).
class PlaneTree {
 public:
  PlaneTree() = default;
  explicit PlaneTree(std::vector<int> child_counts)
      : child_counts_(std::move(child_counts)) {}

  int num_vertices() const { return static_cast<int>(child_counts_.size()); }
  const std::vector<int>& child_counts() const { return child_counts_; }

  // Partial sums of (c_i - 1) are >= 0 before the last vertex and -1 after.
  bool IsValid() const {
    if (child_counts_.empty()) return false;
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < child_counts_.size(); ++i) {
      if (child_counts_[i] < 0) return false;
      sum += child_counts_[i] - 1;
      if (i + 1 < child_counts_.size() && sum < 0) return false;
    }
    return sum == -1;
  }

  friend bool operator==(const PlaneTree&, const PlaneTree&) = default;
  friend auto operator<=>(const PlaneTree&, const PlaneTree&) = default;

 private:
  std::vector<int> child_counts_;
};

// ---------------------------------------------------------------------------
// Prufer codes

inline LabeledTree PruferDecode(std::span<const int> code) {
  const int n = static_cast<int>(code.size()) + 2;
  std::vector<int> degree(n + 1, 1);
  for (int v : code) {
    if (v < 1 || v > n) {
      throw Error(ErrorCode::kBadLabel,
                  "label " + std::to_string(v) + " outside 1.." +
                      std::to_string(n));
    }
    ++degree[v];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 1; v <= n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int v : code) {
    const int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.push(v);
  }
  const int a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return LabeledTree(n, std::move(edges));
}

inline std::vector<int> PruferEncode(const LabeledTree& tree) {
  if (tree.num_vertices() < 2 || !tree.IsValid()) {
    throw Error(ErrorCode::kNotATree, "edge list is not a tree on 1..N");
  }
  const int n = tree.num_vertices();
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [u, v] : tree.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> degree(n + 1);
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 1; v <= n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<bool> removed(n + 1, false);
  std::vector<int> code;
  code.reserve(n - 2);
  while (static_cast<int>(code.size()) < n - 2) {
    const int leaf = leaves.top();
    leaves.pop();
    removed[leaf] = true;
    for (int w : adj[leaf]) {
      if (removed[w]) continue;
      code.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// Cycle lemma

// Start index of the unique rotation of a step word (sum -1) whose proper
// prefixes are all nonnegative: one past the first position where the
// prefix sum reaches its minimum.
inline std::size_t CycleLemmaRotation(std::span<const int> steps) {
  if (steps.empty()) {
    throw Error(ErrorCode::kBadStepSum, "empty step word");
  }
  std::int64_t sum = 0, min_sum = 0;
  std::size_t argmin = 0;
  bool first = true;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    sum += steps[i];
    if (first || sum < min_sum) {
      min_sum = sum;
      argmin = i;
      first = false;
    }
  }
  if (sum != -1) {
    throw Error(ErrorCode::kBadStepSum,
                "steps sum to " + std::to_string(sum) + ", expected -1");
  }
  return (argmin + 1) % steps.size();
}

// ---------------------------------------------------------------------------
// Statistics

inline CountVector ChiOf(const LabeledTree& tree, const EnsembleSpec& spec) {
  if (spec.kind != Kind::kLabeled) {
    throw Error(ErrorCode::kKindMismatch, "labeled tree, plane ensemble");
  }
  const auto deg = tree.Degrees();
  for (int d : deg) {
    if (d > spec.bound || d < 1) {
      throw Error(ErrorCode::kDegreeBoundExceeded,
                  "degree " + std::to_string(d) + " exceeds D = " +
                      std::to_string(spec.bound));
    }
  }
  return ProfileOf(Kind::kLabeled, spec.bound, deg);
}

inline CountVector ChiOf(const PlaneTree& tree, const EnsembleSpec& spec) {
  if (spec.kind != Kind::kPlane) {
    throw Error(ErrorCode::kKindMismatch, "plane tree, labeled ensemble");
  }
  for (int c : tree.child_counts()) {
    if (c > spec.bound) {
      throw Error(ErrorCode::kDegreeBoundExceeded,
                  std::to_string(c) + " children exceed D = " +
                      std::to_string(spec.bound));
    }
  }
  return ProfileOf(Kind::kPlane, spec.bound, tree.child_counts());
}

inline double EnergyOf(const CountVector& chi, const EnsembleSpec& spec) {
  double h = 0.0;
  for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
    h += spec.energy_of(k) * static_cast<double>(chi.at(k));
  }
  return h;
}

template <typename Tree>
double EnergyOf(const Tree& tree, const EnsembleSpec& spec) {
  return EnergyOf(ChiOf(tree, spec), spec);
}

// ---------------------------------------------------------------------------
// Exact samplers

// Draws from the Gibbs law on labeled trees: a degree sequence from the DP,
// then a uniform tree with those degrees via a shuffled Prufer word.
class LabeledSampler {
 public:
  LabeledSampler(const EnsembleSpec& spec, std::int64_t n)
      : dp_(RequireKind(spec), n) {}

  const DpTable& dp() const { return dp_; }

  LabeledTree operator()(Rng& rng) const {
    const std::vector<int> degrees = SampleDegreeSequence(dp_, rng);
    std::vector<int> word;
    word.reserve(degrees.size());
    for (std::size_t v = 0; v < degrees.size(); ++v) {
      for (int r = 1; r < degrees[v]; ++r) word.push_back(static_cast<int>(v) + 1);
    }
    rng.Shuffle(std::span<int>(word));
    return PruferDecode(word);
  }

 private:
  static const EnsembleSpec& RequireKind(const EnsembleSpec& spec) {
    if (spec.kind != Kind::kLabeled) {
      throw Error(ErrorCode::kKindMismatch, "labeled sampler on plane spec");
    }
    return spec;
  }

  DpTable dp_;
};

// Draws from the Gibbs law on plane trees: a class sequence from the DP,
// shuffled, then rotated into the unique valid Lukasiewicz word.
class PlaneSampler {
 public:
  PlaneSampler(const EnsembleSpec& spec, std::int64_t n)
      : dp_(RequireKind(spec), n) {}

  const DpTable& dp() const { return dp_; }

  PlaneTree operator()(Rng& rng) const {
    std::vector<int> counts = SampleDegreeSequence(dp_, rng);
    rng.Shuffle(std::span<int>(counts));
    std::vector<int> steps(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) steps[i] = counts[i] - 1;
    const std::size_t start = CycleLemmaRotation(steps);
    std::rotate(counts.begin(), counts.begin() + start, counts.end());
    return PlaneTree(std::move(counts));
  }

 private:
  static const EnsembleSpec& RequireKind(const EnsembleSpec& spec) {
    if (spec.kind != Kind::kPlane) {
      throw Error(ErrorCode::kKindMismatch, "plane sampler on labeled spec");
    }
    return spec;
  }

  DpTable dp_;
};

inline LabeledTree SampleLabeledTree(const EnsembleSpec& spec, std::int64_t n,
                                     Rng& rng) {
  return LabeledSampler(spec, n)(rng);
}

inline PlaneTree SamplePlaneTree(const EnsembleSpec& spec, std::int64_t n,
                                 Rng& rng) {
  return PlaneSampler(spec, n)(rng);
}

// ---------------------------------------------------------------------------
// Enumerators (test oracles)

inline constexpr int kMaxEnumerateLabeled = 8;
inline constexpr int kMaxEnumeratePlane = 12;

// Visits every labeled tree on n vertices once, by iterating all n^(n-2)
// Prufer codes.
template <typename Visitor>
void ForEachLabeledTree(int n, Visitor&& visit) {
  if (n < 2 || n > kMaxEnumerateLabeled) {
    throw Error(ErrorCode::kTooLarge,
                "labeled enumeration supports 2 <= N <= 8, got " +
                    std::to_string(n));
  }
  std::vector<int> code(n - 2, 1);
  for (;;) {
    visit(PruferDecode(code));
    int i = n - 3;
    while (i >= 0 && code[i] == n) code[i--] = 1;
    if (i < 0) return;
    ++code[i];
  }
}

inline std::vector<LabeledTree> EnumerateLabeledTrees(int n) {
  std::vector<LabeledTree> out;
  ForEachLabeledTree(n, [&](LabeledTree t) { out.push_back(std::move(t)); });
  return out;
}

// Visits every plane tree on n vertices with at most `bound` children per
// vertex, in lexicographic order of the preorder child counts.
template <typename Visitor>
void ForEachPlaneTree(int n, int bound, Visitor&& visit) {
  if (n < 1 || n > kMaxEnumeratePlane) {
    throw Error(ErrorCode::kTooLarge,
                "plane enumeration supports 1 <= N <= 12, got " +
                    std::to_string(n));
  }
  std::vector<int> counts(n);
  // open = subtrees still to be placed, including the current vertex.
  std::function<void(int, int)> rec = [&](int i, int open) {
    if (i == n) {
      if (open == 0) visit(PlaneTree(counts));
      return;
    }
    const int remaining_after = n - i - 1;
    for (int c = 0; c <= bound; ++c) {
      const int next_open = open - 1 + c;
      if (next_open > remaining_after) break;
      if (next_open == 0 && remaining_after > 0) continue;
      counts[i] = c;
      rec(i + 1, next_open);
    }
  };
  rec(0, 1);
}

inline std::vector<PlaneTree> EnumeratePlaneTrees(int n, int bound) {
  std::vector<PlaneTree> out;
  ForEachPlaneTree(n, bound, [&](PlaneTree t) { out.push_back(std::move(t)); });
  return out;
}

// ---------------------------------------------------------------------------
// Serialization: sorted "u v" edge lines, or space-separated child counts.
// ASCII, LF-terminated.

inline std::string Serialize(const LabeledTree& tree) {
  std::string out;
  for (auto [u, v] : tree.edges()) {
    out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  }
  return out;
}

inline std::string Serialize(const PlaneTree& tree) {
  std::string out;
  for (std::size_t i = 0; i < tree.child_counts().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(tree.child_counts()[i]);
  }
  out += '\n';
  return out;
}

inline LabeledTree ParseLabeledTree(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<int, int>> edges;
  int u, v, n = 1;
  while (in >> u >> v) {
    edges.emplace_back(u, v);
    n = std::max({n, u, v});
  }
  const int vertices = static_cast<int>(edges.size()) + 1;
  LabeledTree tree(vertices, std::move(edges));
  if (!tree.IsValid() || n != tree.num_vertices()) {
    throw Error(ErrorCode::kNotATree, "edge list is not a tree on 1..N");
  }
  return tree;
}

inline PlaneTree ParsePlaneTree(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> counts;
  int c;
  while (in >> c) counts.push_back(c);
  PlaneTree tree(std::move(counts));
  if (!tree.IsValid()) {
    throw Error(ErrorCode::kNotATree, "not a Lukasiewicz word");
  }
  return tree;
}

}  // namespace gibbstree

#endif  // GIBBSTREE_TREEGEN_HPP_
