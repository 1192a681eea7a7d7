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

// Partition function, exact law of the degree profile, and exact sampling of
// class sequences for the Gibbs tree ensembles.
//
// Grouping trees by class sequence (d_1, ..., d_N) gives
//
//   Z_N = (N-2)! * sum_d prod_i w(d_i),  w(k) = exp(-beta c(k)) / (k-1)!
//
// for labeled trees (the number of trees with given degrees is the
// multinomial (N-2; d_1-1, ..., d_N-1)), and
//
//   Z_N = (1/N) * sum_d prod_i w(k),  w(k) = exp(-beta c(k))
//
// for plane trees (cycle lemma). Both sums run over sequences with
// sum_i excess(d_i) = DegreeBudget(N), which the DP below evaluates one
// vertex at a time.

#ifndef GIBBSTREE_PARTITION_HPP_
#define GIBBSTREE_PARTITION_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gibbstree/combinatorics.hpp"
#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/lattice.hpp"
#include "gibbstree/log_real.hpp"
#include "gibbstree/parallel.hpp"
#include "gibbstree/rng.hpp"

namespace gibbstree {

// Per-class log-weights: -beta c(k) - ln (k-1)! (labeled) or -beta c(k)
// (plane), by position.
inline std::vector<double> ClassLogWeights(const EnsembleSpec& spec) {
  std::vector<double> lw(spec.num_classes());
  for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
    double w = -spec.beta * spec.energy_of(k);
    if (spec.kind == Kind::kLabeled) w -= LogFactorialValue(k - 1);
    lw[k - spec.min_class()] = w;
  }
  return lw;
}

inline std::int64_t MinVertices(Kind kind) {
  return kind == Kind::kLabeled ? 2 : 1;
}

struct DpOptions {
  // Cells of the (N+1) x (budget+1) table; the default admits N = 20000.
  double max_cells = 20001.0 * 20001.0;
  // Accumulate classes from the largest down; used to check that the
  // recurrence does not depend on the summation order.
  bool reverse_class_order = false;
};

// Conversion of the DP terminal value into ln Z_N.
inline double LogPartitionFromTerminal(Kind kind, std::int64_t n,
                                       double terminal) {
  if (terminal == kNegInf) {
    throw Error(ErrorCode::kNoFeasibleTree,
                "no tree on " + std::to_string(n) + " vertices respects D");
  }
  return kind == Kind::kLabeled
             ? terminal + LogFactorialValue(n - 2)
             : terminal - std::log(static_cast<double>(n));
}

// Forward table W[i][s]: log of the total weight of class sequences of
// length i whose excesses sum to s. Indexing by excess rather than by raw
// degree sum drops the s < i region that is unreachable for labeled trees;
// RawLogWeight translates back.
class DpTable {
 public:
  DpTable(const EnsembleSpec& spec, std::int64_t n, DpOptions options = {})
      : spec_(ValidateSpec(spec)),
        n_(n),
        budget_(DegreeBudget(spec.kind, n)),
        log_weights_(ClassLogWeights(spec)) {
    if (n < MinVertices(spec.kind)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "N = " + std::to_string(n) + " is below the minimum");
    }
    const double cells =
        static_cast<double>(n + 1) * static_cast<double>(budget_ + 1);
    if (cells > options.max_cells) {
      throw Error(ErrorCode::kSizeOverflow,
                  "DP table of " + std::to_string(cells) + " cells");
    }
    const auto width = static_cast<std::size_t>(budget_ + 1);
    table_.assign(static_cast<std::size_t>(n + 1) * width, kNegInf);
    table_[0] = 0.0;
    const int classes = spec.num_classes();
    for (std::int64_t i = 1; i <= n; ++i) {
      const double* prev = &table_[(i - 1) * width];
      double* row = &table_[i * width];
      for (std::int64_t s = 0; s <= budget_; ++s) {
        double acc = kNegInf;
        for (int j = 0; j < classes; ++j) {
          const int pos = options.reverse_class_order ? classes - 1 - j : j;
          if (pos > s) {
            if (options.reverse_class_order) continue;
            break;
          }
          const double term = prev[s - pos];
          if (term != kNegInf) acc = LogAdd(acc, term + log_weights_[pos]);
        }
        row[s] = acc;
      }
    }
  }

  const EnsembleSpec& spec() const { return spec_; }
  std::int64_t num_vertices() const { return n_; }
  std::int64_t budget() const { return budget_; }
  std::span<const double> class_log_weights() const { return log_weights_; }

  // W[i][s] over excess sums.
  double LogWeight(std::int64_t i, std::int64_t s) const {
    if (s < 0 || s > budget_) return kNegInf;
    return table_[i * (budget_ + 1) + s];
  }

  // W[i][s] over raw class sums s = sum of degrees / child counts.
  double RawLogWeight(std::int64_t i, std::int64_t s) const {
    return LogWeight(i, spec_.kind == Kind::kLabeled ? s - i : s);
  }

  double terminal() const { return LogWeight(n_, budget_); }

 private:
  EnsembleSpec spec_;
  std::int64_t n_;
  std::int64_t budget_;
  std::vector<double> log_weights_;
  std::vector<double> table_;
};

inline DpTable BuildDp(const EnsembleSpec& spec, std::int64_t n,
                       DpOptions options = {}) {
  return DpTable(spec, n, options);
}

inline LogReal LogPartition(const DpTable& dp) {
  return LogReal::FromLog(LogPartitionFromTerminal(
      dp.spec().kind, dp.num_vertices(), dp.terminal()));
}

// Same recurrence with two rolling rows; O(budget) memory, for callers that
// only need ln Z_N at large N.
inline LogReal LogPartition(const EnsembleSpec& spec, std::int64_t n) {
  ValidateSpec(spec);
  if (n < MinVertices(spec.kind)) {
    throw Error(ErrorCode::kInvalidArgument,
                "N = " + std::to_string(n) + " is below the minimum");
  }
  const std::int64_t budget = DegreeBudget(spec.kind, n);
  const std::vector<double> lw = ClassLogWeights(spec);
  std::vector<double> prev(budget + 1, kNegInf), row(budget + 1);
  prev[0] = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t s = 0; s <= budget; ++s) {
      double acc = kNegInf;
      for (int pos = 0; pos < static_cast<int>(lw.size()) && pos <= s; ++pos) {
        const double term = prev[s - pos];
        if (term != kNegInf) acc = LogAdd(acc, term + lw[pos]);
      }
      row[s] = acc;
    }
    std::swap(prev, row);
  }
  return LogReal::FromLog(LogPartitionFromTerminal(spec.kind, n, prev[budget]));
}

// ln of exp(-beta H) times the number of trees with profile n, without
// normalization.
inline double LogProfileWeight(const EnsembleSpec& spec, std::int64_t n,
                               const CountVector& profile) {
  const LogReal count = LogCountByProfile(n, profile);
  if (count.is_zero()) return kNegInf;
  double energy = 0.0;
  for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
    energy += spec.energy_of(k) * static_cast<double>(profile.at(k));
  }
  return count.log() - spec.beta * energy;
}

// ln P_N{chi = n}, with ln Z_N supplied by the caller.
inline LogReal LogProbProfile(const EnsembleSpec& spec, std::int64_t n,
                              const CountVector& profile, LogReal log_z) {
  if (profile.size() != spec.num_classes()) {
    throw Error(ErrorCode::kKindMismatch, "profile length does not match D");
  }
  const double w = LogProfileWeight(spec, n, profile);
  if (w == kNegInf) return LogReal::Zero();
  return LogReal::FromLog(w - log_z.log());
}

inline LogReal LogProbProfile(const EnsembleSpec& spec, std::int64_t n,
                              const CountVector& profile) {
  return LogProbProfile(spec, n, profile, LogPartition(spec, n));
}

struct ChiLawEntry {
  CountVector profile;
  double log_prob;
};

struct ChiLaw {
  EnsembleSpec spec;
  std::int64_t n = 0;
  std::vector<ChiLawEntry> entries;

  double LogTotal() const {
    std::vector<double> xs;
    xs.reserve(entries.size());
    for (const auto& e : entries) xs.push_back(e.log_prob);
    return LogSumExp(xs);
  }
};

inline ChiLaw ExactChiLaw(const EnsembleSpec& spec, std::int64_t n,
                          double cap = kDefaultLatticeCap) {
  ValidateSpec(spec);
  const auto lattice = ConstrainedLattice::Profiles(spec, n);
  lattice.RequireSizeAtMost(cap);
  const LogReal log_z = LogPartition(spec, n);
  ChiLaw law{spec, n, {}};
  lattice.ForEach([&](const CountVector& profile) {
    law.entries.push_back(
        {profile, LogProbProfile(spec, n, profile, log_z).log()});
  });
  return law;
}

// Draws d_1..d_N with probability proportional to prod_i w(d_i) subject to
// the excess constraint, walking the table backwards from W[N][budget].
// Returned values are classes (degrees or child counts).
inline std::vector<int> SampleDegreeSequence(const DpTable& dp, Rng& rng) {
  if (dp.terminal() == kNegInf) {
    throw Error(ErrorCode::kNoFeasibleTree, "empty ensemble");
  }
  const int classes = dp.spec().num_classes();
  const int min_class = dp.spec().min_class();
  const auto lw = dp.class_log_weights();
  std::vector<int> out(dp.num_vertices());
  std::int64_t s = dp.budget();
  for (std::int64_t i = dp.num_vertices(); i >= 1; --i) {
    const double total = dp.LogWeight(i, s);
    double u = rng.Uniform();
    int chosen = -1;
    for (int pos = 0; pos < classes && pos <= s; ++pos) {
      const double prev = dp.LogWeight(i - 1, s - pos);
      if (prev == kNegInf) continue;
      chosen = pos;
      u -= std::exp(prev + lw[pos] - total);
      if (u < 0.0) break;
    }
    out[i - 1] = chosen + min_class;
    s -= chosen;
  }
  return out;
}

inline CountVector ProfileOf(Kind kind, int bound,
                             std::span<const int> classes) {
  CountVector n(kind, std::vector<std::int64_t>(NumClasses(kind, bound), 0));
  for (int k : classes) {
    if (k < MinClass(kind) || k > bound) {
      throw Error(ErrorCode::kDegreeBoundExceeded,
                  "class " + std::to_string(k) + " outside the bound");
    }
    ++n.at(k);
  }
  return n;
}

}  // namespace gibbstree

#endif  // GIBBSTREE_PARTITION_HPP_
