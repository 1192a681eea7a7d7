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

// Test-only oracles. Everything here works from explicit enumeration of
// trees and never touches the DP or the closed-form counts.

#ifndef GIBBSTREE_TESTS_SUPPORT_ORACLES_HPP_
#define GIBBSTREE_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gibbstree/gibbstree.hpp"

namespace gibbstree::testing {

// Trees of an ensemble with their unnormalized Gibbs weights exp(-beta H).
// Trees violating the bound are dropped.
struct WeightedTree {
  std::string key;  // serialized tree
  CountVector chi;
  double weight;
};

inline std::vector<WeightedTree> EnumerateEnsemble(const EnsembleSpec& spec,
                                                   int n) {
  std::vector<WeightedTree> out;
  auto add = [&](const auto& tree, std::span<const int> classes) {
    CountVector chi(spec.kind,
                    std::vector<std::int64_t>(spec.num_classes(), 0));
    double h = 0.0;
    for (int k : classes) {
      if (k > spec.bound) return;
      ++chi.at(k);
      h += spec.energy.at(k - spec.min_class());
    }
    out.push_back({Serialize(tree), chi, std::exp(-spec.beta * h)});
  };
  if (spec.kind == Kind::kLabeled) {
    ForEachLabeledTree(n, [&](const LabeledTree& t) {
      const auto deg = t.Degrees();
      add(t, deg);
    });
  } else {
    // Enumerate with an unrestricted bound so that filtering by D is done
    // here rather than trusted to the enumerator.
    ForEachPlaneTree(n, n, [&](const PlaneTree& t) {
      add(t, t.child_counts());
    });
  }
  return out;
}

inline double BruteForcePartition(const EnsembleSpec& spec, int n) {
  double z = 0.0;
  for (const auto& t : EnumerateEnsemble(spec, n)) z += t.weight;
  return z;
}

// Exact law of chi by summing tree weights per profile.
inline std::map<CountVector, double> BruteForceChiLaw(const EnsembleSpec& spec,
                                                      int n) {
  std::map<CountVector, double> law;
  double z = 0.0;
  for (const auto& t : EnumerateEnsemble(spec, n)) {
    law[t.chi] += t.weight;
    z += t.weight;
  }
  for (auto& [k, v] : law) v /= z;
  return law;
}

// Number of trees per profile, with no bound on degrees.
inline std::map<CountVector, std::int64_t> BruteForceProfileCounts(Kind kind,
                                                                   int n) {
  const int bound = std::max(n - 1, MinBound(kind));
  const EnsembleSpec spec = UniformSpec(kind, bound);
  std::map<CountVector, std::int64_t> counts;
  for (const auto& t : EnumerateEnsemble(spec, n)) ++counts[t.chi];
  return counts;
}

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson goodness of fit of observed counts against expected probabilities.
// Cells with zero expected probability must have zero counts.
inline ChiSquareResult ChiSquareTest(const std::vector<double>& probs,
                                     const std::vector<std::int64_t>& counts) {
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  ChiSquareResult r;
  int cells = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(total);
    if (expected <= 0.0) {
      if (counts[i] != 0) {
        r.p_value = 0.0;
        r.statistic = INFINITY;
        return r;
      }
      continue;
    }
    const double d = static_cast<double>(counts[i]) - expected;
    r.statistic += d * d / expected;
    ++cells;
  }
  r.dof = cells - 1;
  if (r.dof < 1) return r;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

// Random point of M: a random convex combination of its extreme points
// (point mass at the target class and two-class mixtures around it), built
// here from the definition of M.
inline FrequencyVector RandomManifoldPoint(const EnsembleSpec& spec, Rng& rng) {
  const int t = spec.kind == Kind::kLabeled ? 2 : 1;
  const int lo = spec.min_class(), hi = spec.max_class();
  std::vector<std::vector<double>> vertices;
  std::vector<double> mass(spec.num_classes(), 0.0);
  mass[t - lo] = 1.0;
  vertices.push_back(mass);
  for (int a = lo; a < t; ++a) {
    for (int b = t + 1; b <= hi; ++b) {
      std::vector<double> v(spec.num_classes(), 0.0);
      v[a - lo] = static_cast<double>(b - t) / (b - a);
      v[b - lo] = static_cast<double>(t - a) / (b - a);
      vertices.push_back(v);
    }
  }
  std::vector<double> weights(vertices.size());
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.Uniform());  // Dirichlet(1, ..., 1)
    total += w;
  }
  std::vector<double> p(spec.num_classes(), 0.0);
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    for (int i = 0; i < spec.num_classes(); ++i) {
      p[i] += weights[j] / total * vertices[j][i];
    }
  }
  return FrequencyVector(spec.kind, std::move(p));
}

inline EnsembleSpec RandomSpec(Kind kind, int bound, Rng& rng) {
  std::vector<double> c(NumClasses(kind, bound));
  for (double& v : c) v = 4.0 * rng.Uniform() - 2.0;
  return MakeSpec(kind, bound, 3.0 * rng.Uniform(), std::move(c));
}

inline std::int64_t Catalan(int m) {
  std::int64_t c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace gibbstree::testing

#endif  // GIBBSTREE_TESTS_SUPPORT_ORACLES_HPP_
