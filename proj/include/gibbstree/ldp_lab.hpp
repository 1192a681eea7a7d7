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

// Finite-N checks of the large deviation behaviour of chi/N: exact ball and
// tail probabilities from lattice sums, and the coupling of chi/N with a
// nearest lattice point of the manifold M.

#ifndef GIBBSTREE_LDP_LAB_HPP_
#define GIBBSTREE_LDP_LAB_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "gibbstree/combinatorics.hpp"
#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/lattice.hpp"
#include "gibbstree/log_real.hpp"
#include "gibbstree/parallel.hpp"
#include "gibbstree/partition.hpp"
#include "gibbstree/rate.hpp"
#include "gibbstree/rng.hpp"

namespace gibbstree {

struct LatticeOptions {
  double cap = kDefaultLatticeCap;
  int workers = 1;
};

// Ball membership is closed; this absorbs rounding in n/N.
inline constexpr double kBallSlack = 1e-12;

namespace detail {

inline void RequireCenter(const FrequencyVector& c, const EnsembleSpec& spec) {
  if (c.kind() != spec.kind || c.size() != spec.num_classes()) {
    throw Error(ErrorCode::kKindMismatch, "center does not match ensemble");
  }
}

inline double ProfileDistance(const CountVector& n, double inv_n,
                              std::span<const double> center) {
  double d = 0.0;
  for (std::size_t i = 0; i < center.size(); ++i) {
    d += std::abs(static_cast<double>(n.counts()[i]) * inv_n - center[i]);
  }
  return d;
}

// ln P_N{chi/N in S} for the set S given by `keep`, summed chunk by chunk
// and merged in chunk order so the result does not depend on `workers`.
template <typename Keep>
double LogProbWhere(const EnsembleSpec& spec, std::int64_t n, Keep keep,
                    const LatticeOptions& opts) {
  const auto lattice = ConstrainedLattice::Profiles(spec, n);
  lattice.RequireSizeAtMost(opts.cap);
  const double log_z = LogPartition(spec, n).log();
  std::vector<double> partial(static_cast<std::size_t>(lattice.NumChunks()),
                              kNegInf);
  ParallelFor(partial.size(), opts.workers, [&](std::size_t chunk) {
    double acc = kNegInf;
    lattice.ForEachInChunk(static_cast<std::int64_t>(chunk),
                           [&](const CountVector& profile) {
                             if (!keep(profile)) return;
                             acc = LogAdd(acc,
                                          LogProfileWeight(spec, n, profile));
                           });
    partial[chunk] = acc;
  });
  const double total = LogSumExp(partial);
  return total == kNegInf ? kNegInf : std::min(0.0, total - log_z);
}

}  // namespace detail

inline LogReal LogProbBall(const EnsembleSpec& spec, std::int64_t n,
                           const FrequencyVector& center, double eps,
                           const LatticeOptions& opts = {}) {
  ValidateSpec(spec);
  detail::RequireCenter(center, spec);
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ball radius must be > 0");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return LogReal::FromLog(detail::LogProbWhere(
      spec, n,
      [&](const CountVector& profile) {
        return detail::ProfileDistance(profile, inv_n, center.values()) <=
               eps + kBallSlack;
      },
      opts));
}

// -(1/N) ln P_N{||chi/N - p||_1 <= eps}; +inf for an empty ball.
inline double FiniteRate(const EnsembleSpec& spec, std::int64_t n,
                         const FrequencyVector& p, double eps,
                         const LatticeOptions& opts = {}) {
  detail::RequireCenter(p, spec);
  // Every probability vector is within l1 distance 2 of every other.
  if (eps >= 2.0 && std::abs(p.sum() - 1.0) <= kManifoldTolerance) return 0.0;
  const LogReal lp = LogProbBall(spec, n, p, eps, opts);
  if (lp.is_zero()) return std::numeric_limits<double>::infinity();
  return -lp.log() / static_cast<double>(n);
}

struct RateTableRow {
  std::int64_t n = 0;
  FrequencyVector target;
  double eps = 0.0;
  double log_prob = 0.0;
  double rate = 0.0;
  double rate_function = 0.0;  // I(target)
  double gap = 0.0;            // rate - I(target)
};

inline std::vector<RateTableRow> ConvergenceTable(
    const RateContext& ctx, std::span<const std::int64_t> sizes,
    const FrequencyVector& p, double eps, const LatticeOptions& opts = {}) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "N list must increase");
    }
  }
  const double rate_fn = RateValue(p, ctx);
  std::vector<RateTableRow> rows;
  for (std::int64_t n : sizes) {
    RateTableRow row;
    row.n = n;
    row.target = p;
    row.eps = eps;
    row.rate = FiniteRate(ctx.spec, n, p, eps, opts);
    row.log_prob = -row.rate * static_cast<double>(n);
    row.rate_function = rate_fn;
    row.gap = row.rate - rate_fn;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Infimum of I over the resolution-R grid points of M accepted by `keep`;
// +inf if none is.
inline double InfRateOnGrid(
    const RateContext& ctx, std::int64_t resolution,
    const std::function<bool(std::span<const double>)>& keep,
    double cap = kDefaultLatticeCap) {
  const auto lattice = ConstrainedLattice::ManifoldGrid(ctx.spec, resolution);
  lattice.RequireSizeAtMost(cap);
  const std::vector<double> lw = ClassLogWeights(ctx.spec);
  std::vector<double> p(ctx.spec.num_classes());
  double best = std::numeric_limits<double>::infinity();
  const double r = static_cast<double>(resolution);
  lattice.ForEach([&](const CountVector& m) {
    for (int i = 0; i < m.size(); ++i) {
      p[i] = static_cast<double>(m.counts()[i]) / r;
    }
    if (!keep(p)) return;
    best = std::min(best, JUnchecked(p, lw) - ctx.j_star);
  });
  return best;
}

// Grid resolution giving roughly 10^5..10^6 points for the dimension of M.
inline std::int64_t DefaultGridResolution(const EnsembleSpec& spec) {
  switch (spec.num_classes() - 2) {
    case 0: return 10;
    case 1: return 20000;
    case 2: return 3000;
    case 3: return 400;
    default: return 60;
  }
}

// inf{I(q) : q in M, ||q - center||_1 <= eps}.
inline double InfRateInBall(const RateContext& ctx,
                            const FrequencyVector& center, double eps,
                            std::int64_t resolution = 0) {
  if (resolution == 0) resolution = DefaultGridResolution(ctx.spec);
  return InfRateOnGrid(ctx, resolution, [&](std::span<const double> q) {
    return L1Distance(q, center.values()) <= eps + kBallSlack;
  });
}

// inf{I(q) : q in M, ||q - p*||_1 >= delta}.
inline double InfRateOutside(const RateContext& ctx, double delta,
                             std::int64_t resolution = 0) {
  if (resolution == 0) resolution = DefaultGridResolution(ctx.spec);
  return InfRateOnGrid(ctx, resolution, [&](std::span<const double> q) {
    return L1Distance(q, ctx.pstar.values()) >= delta;
  });
}

struct TailResult {
  double log_tail = kNegInf;
  double tail = 0.0;
};

// Exact P_N(||chi/N - p*||_1 > delta).
inline TailResult LlnTail(const RateContext& ctx, std::int64_t n, double delta,
                          const LatticeOptions& opts = {}) {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be > 0");
  }
  if (delta >= 2.0) return {};
  const double inv_n = 1.0 / static_cast<double>(n);
  const double lp = detail::LogProbWhere(
      ctx.spec, n,
      [&](const CountVector& profile) {
        return detail::ProfileDistance(profile, inv_n, ctx.pstar.values()) >
               delta + kBallSlack;
      },
      opts);
  return {lp, std::exp(lp)};
}

// ---------------------------------------------------------------------------
// Coupling of chi/N with the manifold lattice

struct RSet {
  std::vector<CountVector> points;  // numerators m, with y = m / N
  std::int64_t l1_numerator = 0;    // distance = l1_numerator / N
};

// Lattice points m/N of M at minimal l1 distance from x = n/N. Writing the
// difference as t unit moves (vertices changing class), the minimal sets are
// found by increasing t; sources and targets are disjoint multisets.
inline RSet RSetOf(const CountVector& x, const EnsembleSpec& spec) {
  if (!IsFeasible(x, spec)) {
    throw Error(ErrorCode::kInvalidArgument, "x is not a feasible profile");
  }
  const std::int64_t n = x.total();
  const auto target_sum =
      static_cast<std::int64_t>(TargetMean(spec.kind)) * n;
  const std::int64_t gap = target_sum - x.class_sum();
  const int lo = spec.min_class(), hi = spec.max_class();

  std::set<CountVector> found;
  std::vector<int> sources, targets;
  CountVector work = x;

  std::function<void(int, int, int, int)> pick_targets =
      [&](int t, int from, std::int64_t shift, int placed) {
        if (placed == t) {
          if (shift == gap) found.insert(work);
          return;
        }
        for (int k = from; k <= hi; ++k) {
          if (std::find(sources.begin(), sources.end(), k) != sources.end()) {
            continue;
          }
          ++work.at(k);
          pick_targets(t, k, shift + k, placed + 1);
          --work.at(k);
        }
      };
  std::function<void(int, int, std::int64_t, int)> pick_sources =
      [&](int t, int from, std::int64_t shift, int placed) {
        if (placed == t) {
          pick_targets(t, lo, shift, 0);
          return;
        }
        for (int k = from; k <= hi; ++k) {
          if (work.at(k) == 0) continue;
          --work.at(k);
          sources.push_back(k);
          pick_sources(t, k, shift - k, placed + 1);
          sources.pop_back();
          ++work.at(k);
        }
      };

  for (int t = 1; t <= 8 && t <= n; ++t) {
    pick_sources(t, lo, 0, 0);
    if (!found.empty()) {
      return RSet{std::vector<CountVector>(found.begin(), found.end()), 2 * t};
    }
  }
  throw Error(ErrorCode::kNoFeasibleTree, "no lattice point of M nearby");
}

inline RSet RSetOf(const FrequencyVector& x, std::int64_t n,
                   const EnsembleSpec& spec) {
  std::vector<std::int64_t> counts(x.size());
  for (int i = 0; i < x.size(); ++i) {
    counts[i] = std::llround(x.values()[i] * static_cast<double>(n));
  }
  return RSetOf(CountVector(x.kind(), std::move(counts)), spec);
}

struct CouplingSample {
  std::int64_t n = 0;
  CountVector x;  // chi, with x = chi / N
  CountVector y;  // numerators of the manifold point
  std::size_t r_size = 0;
  double l1 = 0.0;

  FrequencyVector x_freq() const { return FreqFromCounts(x); }
  FrequencyVector y_freq() const { return FreqFromCounts(y); }
};

class Coupler {
 public:
  Coupler(const EnsembleSpec& spec, std::int64_t n) : dp_(spec, n) {}

  CouplingSample operator()(Rng& rng) const {
    const auto& spec = dp_.spec();
    const auto degrees = SampleDegreeSequence(dp_, rng);
    CouplingSample s;
    s.n = dp_.num_vertices();
    s.x = ProfileOf(spec.kind, spec.bound, degrees);
    const RSet r = RSetOf(s.x, spec);
    s.r_size = r.points.size();
    s.y = r.points[rng.Below(r.points.size())];
    s.l1 = static_cast<double>(r.l1_numerator) / static_cast<double>(s.n);
    return s;
  }

 private:
  DpTable dp_;
};

inline CouplingSample CoupleSample(const EnsembleSpec& spec, std::int64_t n,
                                   Rng& rng) {
  return Coupler(spec, n)(rng);
}

}  // namespace gibbstree

#endif  // GIBBSTREE_LDP_LAB_HPP_
