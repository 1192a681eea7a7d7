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

// Command implementations behind the gibbstree executable. Each command
// reads a RunConfig, writes its report to a stream and returns an exit code:
// 0 success, 2 configuration error, 3 infeasible or oversize request,
// 4 verification failure.

#ifndef GIBBSTREE_TOOLS_COMMANDS_HPP_
#define GIBBSTREE_TOOLS_COMMANDS_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gibbstree/gibbstree.hpp"

namespace gibbstree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitVerify = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Kind kind = Kind::kLabeled;
  int bound = 3;
  double beta = 1.0;
  std::vector<double> energy;  // empty means c = 0
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> n_list;
  double eps = 0.05;
  double delta = 0.1;
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::int64_t resolution = 0;  // 0 picks a size suited to the dimension
  std::vector<double> target;   // empty means p*
  std::string out;
};

namespace detail {

inline std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double ParseDouble(const std::string& key, const std::string& text) {
  const std::string t = Trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  return v;
}

inline std::int64_t ParseInt(const std::string& key, const std::string& text) {
  const std::string t = Trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw ConfigError(key + ": not an integer: '" + text + "'");
  }
  return v;
}

inline std::uint64_t ParseSeed(const std::string& text) {
  const std::string t = Trim(text);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || t[0] == '-' || used != t.size()) {
    throw ConfigError("seed: not a 64-bit unsigned integer: '" + text + "'");
  }
  return v;
}

// "[a, b, c]" or "a,b,c".
inline std::vector<std::string> SplitList(const std::string& text) {
  std::string t = Trim(text);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ConfigError("unterminated list: " + text);
    t = t.substr(1, t.size() - 2);
  }
  std::vector<std::string> items;
  if (Trim(t).empty()) return items;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(Trim(item));
  return items;
}

inline std::vector<double> ParseDoubles(const std::string& key,
                                        const std::string& text) {
  std::vector<double> out;
  for (const auto& s : SplitList(text)) out.push_back(ParseDouble(key, s));
  return out;
}

}  // namespace detail

// Shared by the config file and command-line flags.
inline void ApplySetting(RunConfig& cfg, const std::string& raw_key,
                         const std::string& value) {
  std::string key = detail::Trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "kind") {
    const std::string v = detail::Trim(value);
    if (v == "labeled") {
      cfg.kind = Kind::kLabeled;
    } else if (v == "plane") {
      cfg.kind = Kind::kPlane;
    } else {
      throw ConfigError("kind must be 'labeled' or 'plane', got '" + v + "'");
    }
  } else if (key == "bound" || key == "D") {
    cfg.bound = static_cast<int>(detail::ParseInt(key, value));
  } else if (key == "beta") {
    cfg.beta = detail::ParseDouble(key, value);
  } else if (key == "c" || key == "energy") {
    cfg.energy = detail::ParseDoubles(key, value);
  } else if (key == "n" || key == "N") {
    cfg.n = detail::ParseInt(key, value);
  } else if (key == "n_list") {
    cfg.n_list.clear();
    for (const auto& s : detail::SplitList(value)) {
      cfg.n_list.push_back(detail::ParseInt(key, s));
    }
  } else if (key == "eps") {
    cfg.eps = detail::ParseDouble(key, value);
  } else if (key == "delta") {
    cfg.delta = detail::ParseDouble(key, value);
  } else if (key == "samples") {
    cfg.samples = detail::ParseInt(key, value);
  } else if (key == "seed") {
    cfg.seed = detail::ParseSeed(value);
  } else if (key == "workers") {
    cfg.workers = static_cast<int>(detail::ParseInt(key, value));
  } else if (key == "resolution") {
    cfg.resolution = detail::ParseInt(key, value);
  } else if (key == "target") {
    cfg.target = detail::ParseDoubles(key, value);
  } else if (key == "out") {
    cfg.out = detail::Trim(value);
  } else {
    throw ConfigError("unknown key '" + raw_key + "'");
  }
}

// One "key = value" per line; '#' starts a comment.
inline void ApplyConfigText(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    if (detail::Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    ApplySetting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

inline void ApplyConfigFile(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ApplyConfigText(cfg, ss.str());
}

// Validates the command-independent fields and returns the ensemble.
inline EnsembleSpec SpecOf(const RunConfig& cfg) {
  if (cfg.bound < MinBound(cfg.kind)) {
    throw ConfigError("bound " + std::to_string(cfg.bound) + " is below " +
                      std::to_string(MinBound(cfg.kind)) + " for " +
                      std::string(KindName(cfg.kind)) + " trees");
  }
  std::vector<double> c = cfg.energy;
  if (c.empty()) c.assign(NumClasses(cfg.kind, cfg.bound), 0.0);
  EnsembleSpec spec = MakeSpec(cfg.kind, cfg.bound, cfg.beta, std::move(c));
  try {
    ValidateSpec(spec);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.resolution < 0) throw ConfigError("resolution must be >= 0");
  for (std::size_t i = 1; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] <= cfg.n_list[i - 1]) {
      throw ConfigError("n-list must be strictly increasing");
    }
  }
  return spec;
}

// %.12g, with inf/nan spelled out.
inline std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string NumList(std::span<const double> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += Num(xs[i]);
  }
  return s + "]";
}

namespace detail {

inline std::int64_t RequireN(const RunConfig& cfg, Kind kind) {
  if (!cfg.n) throw ConfigError("--n is required");
  if (*cfg.n < MinVertices(kind)) {
    throw ConfigError("N must be >= " + std::to_string(MinVertices(kind)));
  }
  return *cfg.n;
}

inline std::vector<std::int64_t> SizesOf(const RunConfig& cfg,
                                         std::vector<std::int64_t> fallback) {
  std::vector<std::int64_t> sizes =
      !cfg.n_list.empty() ? cfg.n_list
                          : (cfg.n ? std::vector<std::int64_t>{*cfg.n}
                                   : std::move(fallback));
  for (auto n : sizes) {
    if (n < MinVertices(cfg.kind)) {
      throw ConfigError("N = " + std::to_string(n) + " is below the minimum");
    }
  }
  return sizes;
}

inline FrequencyVector TargetOf(const RunConfig& cfg, const RateContext& ctx) {
  if (cfg.target.empty()) return ctx.pstar;
  if (static_cast<int>(cfg.target.size()) != ctx.spec.num_classes()) {
    throw ConfigError("target needs " + std::to_string(ctx.spec.num_classes()) +
                      " entries");
  }
  FrequencyVector p(cfg.kind, cfg.target);
  if (!OnManifold(p, 1e-9)) throw ConfigError("target is not on M");
  return p;
}

}  // namespace detail

inline int CmdPstar(const RunConfig& cfg, std::ostream& out) {
  const EnsembleSpec spec = SpecOf(cfg);
  const RateContext ctx = SolvePstar(spec);
  out << "kind = " << KindName(spec.kind) << '\n'
      << "bound = " << spec.bound << '\n'
      << "beta = " << Num(spec.beta) << '\n'
      << "c = " << NumList(spec.energy) << '\n'
      << "pstar = " << NumList(ctx.pstar.values()) << '\n'
      << "J = " << Num(ctx.j_star) << '\n';
  if (ctx.boundary) {
    out << "boundary = true\n";
  } else {
    out << "boundary = false\n"
        << "tilt = " << Num(ctx.tilt) << '\n';
  }
  out << "stationarity_residual = " << Num(ctx.stationarity_residual) << '\n';
  return kExitOk;
}

// Draw i uses its own stream, so output does not depend on --workers.
inline int CmdSample(const RunConfig& cfg, std::ostream& out) {
  const EnsembleSpec spec = SpecOf(cfg);
  const std::int64_t n = detail::RequireN(cfg, spec.kind);
  const RateContext ctx = SolvePstar(spec);
  const auto count = static_cast<std::size_t>(cfg.samples);
  std::vector<std::string> trees(count);
  std::vector<CountVector> chis(count);
  auto run = [&](const auto& sampler) {
    ParallelFor(count, cfg.workers, [&](std::size_t i) {
      Rng rng = Rng::ForDraw(cfg.seed, 0, i);
      const auto tree = sampler(rng);
      trees[i] = Serialize(tree);
      chis[i] = ChiOf(tree, spec);
    });
  };
  if (spec.kind == Kind::kLabeled) {
    run(LabeledSampler(spec, n));
  } else {
    run(PlaneSampler(spec, n));
  }
  std::vector<std::int64_t> total(spec.num_classes(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (spec.kind == Kind::kLabeled && i > 0) out << '\n';
    out << trees[i];
    for (int j = 0; j < spec.num_classes(); ++j) total[j] += chis[i].counts()[j];
  }
  const FrequencyVector freq = FreqFromCounts(CountVector(spec.kind, total));
  out << "# summary\n"
      << "class,frequency,pstar\n";
  for (int k = spec.min_class(); k <= spec.max_class(); ++k) {
    out << k << ',' << Num(freq.at(k)) << ',' << Num(ctx.pstar.at(k)) << '\n';
  }
  out << "# l1_distance_to_pstar = " << Num(L1Distance(freq, ctx.pstar))
      << '\n';
  return kExitOk;
}

inline int CmdLdpTable(const RunConfig& cfg, std::ostream& out) {
  const EnsembleSpec spec = SpecOf(cfg);
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be > 0");
  const auto sizes = detail::SizesOf(cfg, {100, 200, 400, 800, 1600, 3200});
  const RateContext ctx = SolvePstar(spec);
  const FrequencyVector target = detail::TargetOf(cfg, ctx);
  const auto rows = ConvergenceTable(ctx, sizes, target, cfg.eps,
                                     {kDefaultLatticeCap, cfg.workers});
  out << "N,eps,log_prob,rate,I,gap\n";
  for (const auto& r : rows) {
    out << r.n << ',' << Num(r.eps) << ',' << Num(r.log_prob) << ','
        << Num(r.rate) << ',' << Num(r.rate_function) << ',' << Num(r.gap)
        << '\n';
  }
  return kExitOk;
}

inline int CmdLln(const RunConfig& cfg, std::ostream& out) {
  const EnsembleSpec spec = SpecOf(cfg);
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be > 0");
  const auto sizes = detail::SizesOf(cfg, {250, 500, 1000, 2000});
  const RateContext ctx = SolvePstar(spec);
  const double inf_i = InfRateOutside(ctx, cfg.delta, cfg.resolution);
  out << "N,delta,tail_prob,empirical_rate,inf_I\n";
  for (auto n : sizes) {
    const TailResult t =
        LlnTail(ctx, n, cfg.delta, {kDefaultLatticeCap, cfg.workers});
    out << n << ',' << Num(cfg.delta) << ',' << Num(t.tail) << ','
        << Num(-t.log_tail / static_cast<double>(n)) << ',' << Num(inf_i)
        << '\n';
  }
  return kExitOk;
}

inline constexpr double kOracleTolerance = 1e-9;

namespace detail {

inline double RelDev(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Calls visit(classes) for every tree on n vertices, with no degree bound.
template <typename Visit>
void ForEachTreeClasses(Kind kind, int n, Visit&& visit) {
  if (kind == Kind::kLabeled) {
    ForEachLabeledTree(n, [&](const LabeledTree& t) { visit(t.Degrees()); });
  } else {
    ForEachPlaneTree(n, n, [&](const PlaneTree& t) {
      const auto& cc = t.child_counts();
      visit(std::vector<int>(cc.begin(), cc.end()));
    });
  }
}

}  // namespace detail

// Compares closed-form counts, DP partition functions and the exact profile
// law against explicit enumeration for every N up to --n.
inline int CmdOracleCheck(const RunConfig& cfg, std::ostream& out) {
  const EnsembleSpec spec = SpecOf(cfg);
  const std::int64_t n_max = detail::RequireN(cfg, spec.kind);
  const int limit = spec.kind == Kind::kLabeled ? 8 : 10;
  if (n_max > limit) {
    throw ConfigError("oracle-check supports N <= " + std::to_string(limit) +
                      " for " + std::string(KindName(spec.kind)) + " trees");
  }
  double dev_count = 0.0, dev_z = 0.0, dev_law = 0.0;
  for (int n = static_cast<int>(MinVertices(spec.kind)); n <= n_max; ++n) {
    const int wide = std::max(n - 1, MinBound(spec.kind));
    std::map<CountVector, double> counts;  // unrestricted profiles
    std::map<CountVector, double> weights;  // profiles within the bound
    double z = 0.0;
    detail::ForEachTreeClasses(spec.kind, n, [&](const std::vector<int>& cls) {
      ++counts[ProfileOf(spec.kind, wide, cls)];
      if (*std::max_element(cls.begin(), cls.end()) > spec.bound) return;
      double h = 0.0;
      for (int k : cls) h += spec.energy_of(k);
      const double w = std::exp(-spec.beta * h);
      weights[ProfileOf(spec.kind, spec.bound, cls)] += w;
      z += w;
    });
    for (const auto& [profile, c] : counts) {
      dev_count = std::max(
          dev_count,
          detail::RelDev(std::exp(LogCountByProfile(n, profile).log()), c));
    }
    if (z == 0.0) continue;
    dev_z = std::max(dev_z,
                     detail::RelDev(std::exp(LogPartition(spec, n).log()), z));
    const ChiLaw law = ExactChiLaw(spec, n);
    for (const auto& e : law.entries) {
      const auto it = weights.find(e.profile);
      const double want = it == weights.end() ? 0.0 : it->second / z;
      dev_law = std::max(dev_law, detail::RelDev(std::exp(e.log_prob), want));
    }
    if (law.entries.size() != weights.size()) dev_law = INFINITY;
  }
  bool ok = true;
  out << "suite,max_rel_deviation,tolerance,status\n";
  for (const auto& [name, dev] :
       {std::pair{"counting", dev_count}, std::pair{"partition", dev_z},
        std::pair{"chi_law", dev_law}}) {
    const bool pass = dev <= kOracleTolerance;
    ok = ok && pass;
    out << name << ',' << Num(dev) << ',' << Num(kOracleTolerance) << ','
        << (pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitVerify;
}

inline int ExitCodeOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBoundTooSmall:
    case ErrorCode::kBadEnergyTable:
    case ErrorCode::kKindMismatch:
    case ErrorCode::kOffManifold:
    case ErrorCode::kInvalidArgument:
      return kExitConfig;
    default:
      return kExitInfeasible;
  }
}

inline const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names{"pstar", "sample", "ldp-table",
                                              "lln", "oracle-check"};
  return names;
}

// Runs `command`, writing the report to --out if set and to `out`
// otherwise. Errors go to `err`.
inline int RunCommand(const std::string& command, const RunConfig& cfg,
                      std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buf;
    int code;
    if (command == "pstar") {
      code = CmdPstar(cfg, buf);
    } else if (command == "sample") {
      code = CmdSample(cfg, buf);
    } else if (command == "ldp-table") {
      code = CmdLdpTable(cfg, buf);
    } else if (command == "lln") {
      code = CmdLln(cfg, buf);
    } else if (command == "oracle-check") {
      code = CmdOracleCheck(cfg, buf);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    if (cfg.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
      file << buf.str();
    }
    return code;
  } catch (const ConfigError& e) {
    err << "gibbstree: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "gibbstree: " << e.what() << '\n';
    return ExitCodeOf(e.code());
  } catch (const std::bad_alloc&) {
    err << "gibbstree: out of memory\n";
    return kExitInfeasible;
  }
}

}  // namespace gibbstree::cli

#endif  // GIBBSTREE_TOOLS_COMMANDS_HPP_
