#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "levyhunt/triplet.hpp"

namespace levyhunt {

struct SimConfig {
    double t_max = 1.0;
    double dt = 0.01;
    double small_jump_cut = 1e-3;  // radial truncation epsilon, in (0, 1]
    std::int64_t n_paths = 1;
    std::uint64_t master_seed = 0;
    Vec start;                     // defaults to the origin
};

enum class JumpOrigin { Large, Small, OffRange };
const char* to_string(JumpOrigin o);

struct JumpRecord {
    double t = 0.0;
    Vec jump;
    JumpOrigin origin = JumpOrigin::Large;
    Vec state_after;
};

// Simulated trajectories on a fixed grid plus exact-time jump records.
// Draws for path p depend only on (master_seed, p), so the ensemble is
// bit-identical for any worker count.
class PathEnsemble {
public:
    const SimConfig& config() const { return cfg_; }
    const SpectralData& spectral() const { return spectral_; }
    const Vec& times() const { return times_; }
    int dim() const { return n_; }
    std::int64_t n_paths() const { return cfg_.n_paths; }

    std::span<const double> state(std::int64_t path, std::size_t time_index) const;
    const std::vector<JumpRecord>& jumps(std::int64_t path) const;
    std::span<const double> gauss_total(std::int64_t path) const;

    // per-unit-time deterministic drift actually applied: b - ∫_{eps<=|x|<1} x mu
    const Vec& effective_drift() const { return drift_; }
    const Vec& compensator() const { return compensator_; }
    double jump_rate() const { return jump_rate_; }
    // ∫_{|x|<eps} |x|^2 mu(dx), dropped by the truncation
    double neglected_small_jump_variance() const { return neglected_var_; }

private:
    friend PathEnsemble sample_paths(const LevyTriplet&, const SimConfig&, int);
    SimConfig cfg_;
    SpectralData spectral_;
    int n_ = 0;
    Vec times_;
    std::vector<double> states_;  // n_paths x (grid size) x n
    std::vector<std::vector<JumpRecord>> jump_log_;
    std::vector<double> gauss_;   // n_paths x n
    Vec drift_;
    Vec compensator_;
    double jump_rate_ = 0.0;
    double neglected_var_ = 0.0;
};

// workers <= 0: LEVYHUNT_THREADS, else hardware concurrency
PathEnsemble sample_paths(const LevyTriplet& t, const SimConfig& cfg, int workers = 0);

// First jump time whose vector lies off range(sqrtA), +inf when none.
std::vector<double> first_off_range_jump(const PathEnsemble& ens, const SpectralData& s,
                                         double membership_tol = 1e-9);

struct AffineSubspace {
    Vec point;
    std::vector<Vec> basis;
};
struct PointTarget {
    Vec x;
};
using HitTarget = std::variant<AffineSubspace, PointTarget>;

struct HittingEstimate {
    double p_hat = 0.0;
    double ci95_halfwidth = 0.0;
    std::int64_t n_hits = 0;
    std::int64_t n_paths = 0;
    double tube_delta = 0.0;
};

// Fraction of paths entering the delta-tube of the target at a recorded time
// in (0, t_max]. tube_delta = 0 means exact membership within 1e-9. A
// lower-bound estimator: crossings between recorded times are invisible.
HittingEstimate estimate_hitting(const PathEnsemble& ens, const HitTarget& target,
                                 double tube_delta);

struct ThinnessReport {
    std::int64_t paths = 0;
    std::int64_t revisits = 0;  // on-subspace grid states before the first off-range jump
    std::int64_t paths_with_off_range_jump = 0;
    bool passed = false;        // revisits == 0
};

// Starts on range(sqrtA) and verifies the drift removes every path from the
// subspace at all positive grid times before the first off-range jump.
// Requires a triplet whose b' lies off range(sqrtA).
ThinnessReport thinness_probe(const LevyTriplet& t, const SpectralData& s, const SimConfig& cfg,
                              double membership_tol = 1e-9);

}  // namespace levyhunt
