// SPDX-License-Identifier: Apache-2.0
//
// Concurrence-vs-purity diagram: boundary curves, region classification and
// Monte-Carlo scans over local channels applied to the singlet.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "channels.hpp"
#include "entanglement.hpp"
#include "states.hpp"

namespace cpdiag {

/// Tolerance for region boundaries in the diagram.
inline constexpr double kDiagramTol = 1e-9;

struct CPPoint {
  double purity;
  double concurrence;
};

namespace detail {

inline void require_purity(double P, const char* who) {
  if (!(P >= 0.25 - kDefaultTol && P <= 1.0 + kDefaultTol))
    throw std::invalid_argument(std::string(who) + ": purity must lie in [1/4, 1]");
}

}  // namespace detail

/// Werner line: max(0, (sqrt(3(4P-1)) - 1)/2). Upper bound for unital channels.
inline double c_max_unital(double P) {
  detail::require_purity(P, "c_max_unital");
  const double x = std::max(0.0, 3.0 * (4.0 * P - 1.0));
  return std::clamp(0.5 * (std::sqrt(x) - 1.0), 0.0, 1.0);
}

/// Decoherence line: sqrt(2P - 1) above P = 1/2, zero below. Lower bound for
/// unital channels.
inline double c_min_unital(double P) {
  detail::require_purity(P, "c_min_unital");
  return P <= 0.5 ? 0.0 : std::min(1.0, std::sqrt(2.0 * P - 1.0));
}

inline CPPoint cp_point(const TwoQubitState& s, double tol = kDefaultTol) {
  return {purity(s), concurrence(s, tol)};
}

/// Oracle sweep of the MEMS family, sorted by purity. The parameter grid is
/// quadratic in p (dense near p = 0 where C(P) has infinite slope) and
/// always contains the branch point p = 2/3.
inline std::vector<CPPoint> mems_boundary(std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("mems_boundary: need at least 2 points");
  std::vector<double> ps;
  ps.reserve(n_points + 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(n_points - 1);
    ps.push_back(x * x);
  }
  ps.push_back(2.0 / 3.0);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  std::vector<CPPoint> out;
  out.reserve(ps.size());
  for (double p : ps) out.push_back(cp_point(mems(p)));
  std::sort(out.begin(), out.end(),
            [](const CPPoint& a, const CPPoint& b) { return a.purity < b.purity; });
  return out;
}

/// Piecewise-linear C_MEMS(P) over a swept boundary.
class MemsCurve {
 public:
  static constexpr std::size_t kDefaultPoints = 4001;

  MemsCurve() : MemsCurve(mems_boundary(kDefaultPoints)) {}
  explicit MemsCurve(std::vector<CPPoint> points) : pts_(std::move(points)) {
    if (pts_.size() < 2) throw std::invalid_argument("MemsCurve: need at least 2 points");
    if (!std::is_sorted(pts_.begin(), pts_.end(),
                        [](const CPPoint& a, const CPPoint& b) { return a.purity < b.purity; }))
      throw std::invalid_argument("MemsCurve: points must be sorted by purity");
  }

  const std::vector<CPPoint>& points() const { return pts_; }

  /// Zero below the least pure sampled MEMS (every state there is separable).
  double concurrence_at(double P) const {
    if (P <= pts_.front().purity) return 0.0;
    if (P >= pts_.back().purity) return pts_.back().concurrence;
    const auto hi = std::upper_bound(pts_.begin(), pts_.end(), P,
                                     [](double v, const CPPoint& q) { return v < q.purity; });
    const auto lo = hi - 1;
    const double span = hi->purity - lo->purity;
    if (span <= 0.0) return std::max(lo->concurrence, hi->concurrence);
    const double f = (P - lo->purity) / span;
    return lo->concurrence + f * (hi->concurrence - lo->concurrence);
  }

 private:
  std::vector<CPPoint> pts_;
};

enum class Region { NonPhysical, NonUnitalBand, UnitalRegion, BelowUnitalBound };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::NonPhysical: return "NonPhysical";
    case Region::NonUnitalBand: return "NonUnitalBand";
    case Region::UnitalRegion: return "UnitalRegion";
    case Region::BelowUnitalBound: return "BelowUnitalBound";
  }
  return "?";
}

/// Boundaries are inclusive: a point within tol of a unital bound counts as
/// UnitalRegion, one within tol of C_MEMS is still physical.
inline Region classify(const CPPoint& pt, const MemsCurve& curve, double tol = kDiagramTol) {
  detail::require_purity(pt.purity, "classify");
  const double P = std::clamp(pt.purity, 0.25, 1.0);
  const double C = pt.concurrence;
  if (C > curve.concurrence_at(P) + tol) return Region::NonPhysical;
  if (C > c_max_unital(P) + tol) return Region::NonUnitalBand;
  if (C >= c_min_unital(P) - tol) return Region::UnitalRegion;
  return Region::BelowUnitalBound;
}

/// Smallest distance of the MEMS reduced states (either side) from I/2.
/// Positive for p < 1; zero at the Bell-state endpoint p = 1.
inline double mems_unreachable_check(double p) {
  const TwoQubitState s = mems(p);
  return std::min(reduced_distance_from_mixed(s, Subsystem::A),
                  reduced_distance_from_mixed(s, Subsystem::B));
}

// ---------------------------------------------------------------------------
// Scans

struct ScanSample {
  CanonicalChannel channel;
  CPPoint point;
  Region region;
};

struct Violation {
  CanonicalChannel channel;
  CPPoint point;
  double margin;  // signed distance past the violated bound
};

struct RegionReport {
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<Violation> violations;
  double min_margin_lower = std::numeric_limits<double>::infinity();   // min C - c_min_unital(P)
  double max_margin_upper = -std::numeric_limits<double>::infinity();  // max C - c_max_unital(P)
  double max_margin_mems = -std::numeric_limits<double>::infinity();   // max C - C_MEMS(P)
  double max_reduced_distance = 0.0;  // untouched qubit vs I/2
  std::size_t separable_above_half = 0;  // samples with P > 1/2 and C == 0
  double acceptance_rate = 1.0;
  std::vector<ScanSample> samples;
};

struct ScanOptions {
  double tol = kDiagramTol;
  double mems_tol = 1e-6;  // slack against the interpolated MEMS curve
  std::size_t block_size = 2048;
  unsigned workers = 0;  // 0: hardware concurrency
};

namespace detail {

enum class ScanKind { Unital, NonUnital };

struct BlockResult {
  RegionReport part;
  SamplerStats stats;
};

inline void record(RegionReport& rep, const CanonicalChannel& ch, const MemsCurve& curve,
                   ScanKind kind, const ScanOptions& opt) {
  const TwoQubitState rho = apply(ch, singlet());
  const CPPoint pt = cp_point(rho);
  const double lower = pt.concurrence - c_min_unital(std::clamp(pt.purity, 0.25, 1.0));
  const double upper = pt.concurrence - c_max_unital(std::clamp(pt.purity, 0.25, 1.0));
  const double over_mems = pt.concurrence - curve.concurrence_at(pt.purity);
  rep.min_margin_lower = std::min(rep.min_margin_lower, lower);
  rep.max_margin_upper = std::max(rep.max_margin_upper, upper);
  rep.max_margin_mems = std::max(rep.max_margin_mems, over_mems);
  rep.max_reduced_distance =
      std::max(rep.max_reduced_distance, reduced_distance_from_mixed(rho, Subsystem::B));
  if (pt.purity > 0.5 && pt.concurrence == 0.0) ++rep.separable_above_half;

  if (lower < -opt.tol) rep.violations.push_back({ch, pt, lower});
  if (kind == ScanKind::Unital && upper > opt.tol) rep.violations.push_back({ch, pt, upper});
  if (over_mems > opt.mems_tol) rep.violations.push_back({ch, pt, over_mems});
  rep.samples.push_back({ch, pt, classify(pt, curve, opt.tol)});
}

inline RegionReport run_scan(ScanKind kind, std::size_t n, std::uint64_t seed,
                             const ScanOptions& opt) {
  if (n < 1) throw std::invalid_argument("scan: need at least one sample");
  const MemsCurve curve;
  const std::size_t block = std::max<std::size_t>(opt.block_size, 1);
  const std::size_t n_blocks = (n + block - 1) / block;
  std::vector<BlockResult> results(n_blocks);

  // Block b draws from its own stream seeded with (seed, b), so the output
  // does not depend on how blocks are spread over threads.
  auto run_block = [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    SeededRng rng(seq);
    BlockResult& r = results[b];
    const std::size_t count = std::min(block, n - b * block);
    r.part.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const CanonicalChannel ch =
          kind == ScanKind::Unital ? sample_unital(rng) : sample_nonunital(rng, r.stats);
      record(r.part, ch, curve, kind, opt);
    }
  };

  unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t b; (b = next.fetch_add(1)) < n_blocks;) run_block(b);
      });
  }

  RegionReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  rep.samples.reserve(n);
  SamplerStats stats;
  for (auto& r : results) {
    rep.min_margin_lower = std::min(rep.min_margin_lower, r.part.min_margin_lower);
    rep.max_margin_upper = std::max(rep.max_margin_upper, r.part.max_margin_upper);
    rep.max_margin_mems = std::max(rep.max_margin_mems, r.part.max_margin_mems);
    rep.max_reduced_distance = std::max(rep.max_reduced_distance, r.part.max_reduced_distance);
    rep.separable_above_half += r.part.separable_above_half;
    rep.violations.insert(rep.violations.end(), r.part.violations.begin(), r.part.violations.end());
    rep.samples.insert(rep.samples.end(), r.part.samples.begin(), r.part.samples.end());
    stats.proposed += r.stats.proposed;
    stats.accepted += r.stats.accepted;
  }
  rep.acceptance_rate = kind == ScanKind::Unital ? 1.0 : stats.acceptance_rate();
  return rep;
}

}  // namespace detail

/// Uniform tetrahedron channels; violations are points outside
/// [c_min_unital - tol, c_max_unital + tol] or above the MEMS curve.
inline RegionReport scan_unital(std::size_t n, std::uint64_t seed, const ScanOptions& opt = {}) {
  return detail::run_scan(detail::ScanKind::Unital, n, seed, opt);
}

/// Non-unital CP channels. Violations are points below c_min_unital - tol
/// (against the conjectured lower bound) or above the MEMS curve.
/// max_margin_upper > 0 shows excursions above the Werner line.
inline RegionReport scan_nonunital(std::size_t n, std::uint64_t seed, const ScanOptions& opt = {}) {
  return detail::run_scan(detail::ScanKind::NonUnital, n, seed, opt);
}

}  // namespace cpdiag
