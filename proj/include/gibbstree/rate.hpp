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

// The rate function of the degree frequencies and its minimizer.
//
//   J(p) = -h(p) + beta E(p) + G(p)      (G omitted for plane trees)
//   I(p) = J(p) - J(p*),                 p* = argmin_M J
//
// With lw_k the class log-weights of partition.hpp, J(p) = sum_k p_k
// (ln p_k - lw_k). Stationarity of J under the two linear constraints of M
// gives the exponential tilt p_k(x) proportional to exp(lw_k) x^k, and p* is
// the member of that family whose mean class hits the target.

#ifndef GIBBSTREE_RATE_HPP_
#define GIBBSTREE_RATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gibbstree/combinatorics.hpp"
#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/lattice.hpp"
#include "gibbstree/log_real.hpp"
#include "gibbstree/partition.hpp"

namespace gibbstree {

inline double Entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

inline double Entropy(const FrequencyVector& p) { return Entropy(p.values()); }

inline double EnergyMean(std::span<const double> p, std::span<const double> c) {
  if (p.size() != c.size()) {
    throw Error(ErrorCode::kInvalidArgument, "energy table length mismatch");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * c[i];
  return e;
}

inline double GTerm(const FrequencyVector& p) {
  if (p.kind() != Kind::kLabeled) {
    throw Error(ErrorCode::kKindMismatch,
                "the factorial term only exists for labeled trees");
  }
  double g = 0.0;
  for (int k = p.min_class(); k <= p.max_class(); ++k) {
    g += p.at(k) * LogFactorialValue(k - 1);
  }
  return g;
}

namespace detail {

inline void RequireShape(const FrequencyVector& p, const EnsembleSpec& spec) {
  if (p.kind() != spec.kind || p.size() != spec.num_classes()) {
    throw Error(ErrorCode::kKindMismatch,
                "frequency vector does not match the ensemble");
  }
}

}  // namespace detail

// J without the manifold check; valid on the whole simplex.
inline double JUnchecked(std::span<const double> p,
                         std::span<const double> log_weights) {
  double j = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) j += p[i] * (std::log(p[i]) - log_weights[i]);
  }
  return j;
}

inline double JValue(const FrequencyVector& p, const EnsembleSpec& spec) {
  detail::RequireShape(p, spec);
  if (!OnManifold(p)) {
    throw Error(ErrorCode::kOffManifold,
                "sum " + std::to_string(p.sum()) + ", mean " +
                    std::to_string(p.mean()));
  }
  double j = -Entropy(p) + spec.beta * EnergyMean(p.values(), spec.energy);
  if (spec.kind == Kind::kLabeled) j += GTerm(p);
  return j;
}

// Tilt family parameterized by t = ln x, which keeps x -> 0 and x -> inf
// representable.
inline FrequencyVector TiltFrequenciesLog(double log_x,
                                          const EnsembleSpec& spec) {
  const std::vector<double> lw = ClassLogWeights(spec);
  std::vector<double> a(lw.size());
  for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
    a[k - spec.min_class()] = lw[k - spec.min_class()] + k * log_x;
  }
  const double norm = LogSumExp(a);
  for (double& v : a) v = std::exp(v - norm);
  return FrequencyVector(spec.kind, std::move(a));
}

inline FrequencyVector TiltFrequencies(double x, const EnsembleSpec& spec) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tilt parameter must be > 0");
  }
  return TiltFrequenciesLog(std::log(x), spec);
}

inline double TiltMeanLog(double log_x, const EnsembleSpec& spec) {
  return TiltFrequenciesLog(log_x, spec).mean();
}

inline double TiltMean(double x, const EnsembleSpec& spec) {
  return TiltFrequencies(x, spec).mean();
}

struct RateContext {
  EnsembleSpec spec;
  FrequencyVector pstar;
  double j_star = 0.0;
  // x* of the tilt family; NaN when p* is a boundary point of M.
  double tilt = std::numeric_limits<double>::quiet_NaN();
  bool boundary = false;
  // Max deviation of ln p*_k - lw_k from its least-squares affine fit in k.
  double stationarity_residual = 0.0;
  int iterations = 0;
};

inline double StationarityResidual(const FrequencyVector& p,
                                   const EnsembleSpec& spec) {
  const std::vector<double> lw = ClassLogWeights(spec);
  const int n = spec.num_classes();
  std::vector<double> ks(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double v = p.values()[i];
    if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    ks[i] = spec.min_class() + i;
    ys[i] = std::log(v) - lw[i];
  }
  double mk = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mk += ks[i];
    my += ys[i];
  }
  mk /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (ks[i] - mk) * (ys[i] - my);
    sxx += (ks[i] - mk) * (ks[i] - mk);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(ys[i] - (my + slope * (ks[i] - mk))));
  }
  return worst;
}

inline FrequencyVector PointMass(const EnsembleSpec& spec, int k) {
  std::vector<double> p(spec.num_classes(), 0.0);
  p[k - spec.min_class()] = 1.0;
  return FrequencyVector(spec.kind, std::move(p));
}

inline RateContext SolvePstar(const EnsembleSpec& spec) {
  ValidateSpec(spec);
  RateContext ctx;
  ctx.spec = spec;
  const double target = TargetMean(spec.kind);
  const double sup = spec.max_class();
  const double inf = spec.min_class();

  auto finish_boundary = [&](int k) {
    ctx.pstar = PointMass(spec, k);
    ctx.boundary = true;
    ctx.j_star = JValue(ctx.pstar, spec);
    return ctx;
  };
  if (target >= sup - 1e-9) return finish_boundary(spec.max_class());
  if (target <= inf + 1e-9) return finish_boundary(spec.min_class());

  double lo = -60.0, hi = 60.0;
  while (TiltMeanLog(lo, spec) > target) lo *= 2.0;
  while (TiltMeanLog(hi, spec) < target) {
    hi *= 2.0;
    if (hi > 1e6) return finish_boundary(spec.max_class());
  }
  double mid = 0.5 * (lo + hi);
  double mean = TiltMeanLog(mid, spec);
  int it = 0;
  for (; it < 200 && std::abs(mean - target) > 1e-12; ++it) {
    if (mean < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid) break;
    mid = next;
    mean = TiltMeanLog(mid, spec);
  }
  // Newton polish to full precision; d mean / dt is the tilted variance.
  for (int polish = 0; polish < 4; ++polish) {
    const FrequencyVector p = TiltFrequenciesLog(mid, spec);
    double var = 0.0;
    for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
      var += p.at(k) * (k - mean) * (k - mean);
    }
    if (!(var > 0.0)) break;
    const double next = mid + (target - mean) / var;
    const double next_mean = TiltMeanLog(next, spec);
    if (!(std::abs(next_mean - target) < std::abs(mean - target))) break;
    mid = next;
    mean = next_mean;
  }
  ctx.iterations = it;
  ctx.pstar = TiltFrequenciesLog(mid, spec);
  ctx.tilt = std::exp(mid);
  ctx.j_star = JValue(ctx.pstar, spec);
  ctx.stationarity_residual = StationarityResidual(ctx.pstar, spec);
  return ctx;
}

inline double RateValue(const FrequencyVector& p, const RateContext& ctx) {
  return JValue(p, ctx.spec) - ctx.j_star;
}

// Coordinates of M: positions 2.. are free, positions 0 and 1 follow from
// sum p = 1 and sum excess * p = 1 (excess of position i is i).
inline FrequencyVector ManifoldFromFree(const EnsembleSpec& spec,
                                        std::span<const double> free) {
  if (static_cast<int>(free.size()) != spec.num_classes() - 2) {
    throw Error(ErrorCode::kInvalidArgument, "wrong number of free coordinates");
  }
  std::vector<double> p(spec.num_classes());
  double excess = 0.0, mass = 0.0;
  for (std::size_t j = 0; j < free.size(); ++j) {
    const int pos = static_cast<int>(j) + 2;
    p[pos] = free[j];
    excess += pos * free[j];
    mass += free[j];
  }
  p[1] = 1.0 - excess;
  p[0] = 1.0 - p[1] - mass;
  return FrequencyVector(spec.kind, std::move(p));
}

// Gradient of J in the free coordinates at an interior point of M.
inline std::vector<double> JGradientFree(const FrequencyVector& p,
                                         const EnsembleSpec& spec) {
  detail::RequireShape(p, spec);
  const std::vector<double> lw = ClassLogWeights(spec);
  std::vector<double> g(spec.num_classes());
  for (int i = 0; i < spec.num_classes(); ++i) {
    g[i] = std::log(p.values()[i]) + 1.0 - lw[i];
  }
  std::vector<double> out;
  for (int pos = 2; pos < spec.num_classes(); ++pos) {
    out.push_back(g[pos] - pos * g[1] + (pos - 1) * g[0]);
  }
  return out;
}

// Best point of the resolution-R grid on M under an arbitrary objective.
inline FrequencyVector GridMinimize(
    const EnsembleSpec& spec, std::int64_t resolution,
    const std::function<double(std::span<const double>)>& objective,
    double cap = kDefaultLatticeCap) {
  ValidateSpec(spec);
  if (resolution < 10) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution below 10");
  }
  const auto lattice = ConstrainedLattice::ManifoldGrid(spec, resolution);
  lattice.RequireSizeAtMost(cap);
  std::vector<double> p(spec.num_classes()), best;
  double best_value = std::numeric_limits<double>::infinity();
  const double r = static_cast<double>(resolution);
  lattice.ForEach([&](const CountVector& m) {
    for (int i = 0; i < m.size(); ++i) {
      p[i] = static_cast<double>(m.counts()[i]) / r;
    }
    const double v = objective(p);
    if (v < best_value) {
      best_value = v;
      best = p;
    }
  });
  return FrequencyVector(spec.kind, std::move(best));
}

inline FrequencyVector GridMinimizeJ(const EnsembleSpec& spec,
                                     std::int64_t resolution,
                                     double cap = kDefaultLatticeCap) {
  if (spec.bound > 5) {
    throw Error(ErrorCode::kLatticeTooLarge, "grid oracle supports D <= 5");
  }
  const std::vector<double> lw = ClassLogWeights(spec);
  return GridMinimize(
      spec, resolution,
      [&](std::span<const double> p) { return JUnchecked(p, lw); }, cap);
}

// Extreme points of M: point masses at the target class and two-class
// mixtures straddling the target mean.
inline std::vector<FrequencyVector> ManifoldVertices(const EnsembleSpec& spec) {
  ValidateSpec(spec);
  const double t = TargetMean(spec.kind);
  std::vector<FrequencyVector> out;
  for (int a = spec.min_class(); a <= spec.max_class(); ++a) {
    if (a == t) out.push_back(PointMass(spec, a));
    for (int b = a + 1; b <= spec.max_class(); ++b) {
      if (a < t && t < b) {
        std::vector<double> p(spec.num_classes(), 0.0);
        p[a - spec.min_class()] = (b - t) / (b - a);
        p[b - spec.min_class()] = (t - a) / (b - a);
        out.emplace_back(spec.kind, std::move(p));
      }
    }
  }
  return out;
}

// A minimizer of the linear energy E over M (attained at a vertex). Ties are
// broken by the first vertex in ManifoldVertices order.
inline FrequencyVector ArgminEnergy(const EnsembleSpec& spec) {
  const auto vertices = ManifoldVertices(spec);
  const FrequencyVector* best = nullptr;
  double best_e = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) {
    const double e = EnergyMean(v.values(), spec.energy);
    if (e < best_e - 1e-15) {
      best_e = e;
      best = &v;
    }
  }
  return *best;
}

}  // namespace gibbstree

#endif  // GIBBSTREE_RATE_HPP_
