#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levyhunt/triplet.hpp"

namespace levyhunt {

enum class Verdict { Holds, Fails, Inconclusive };

// Which decision rule produced the verdict.
enum class Criterion {
    None,
    FullRankGaussian,      // nondegenerate A
    OffRangeDriftSolvable, // finite off-range mass, sqrtA y = b' solvability
    SubordinatorDrift,     // 1-d subordinator with positive drift
};

const char* to_string(Verdict v);
const char* to_string(Criterion c);

struct KfGrid {
    double r_min = 1e-2;
    double r_max = 1e4;
    int per_decade = 10;  // 61 radii over the default six decades
    int dir_factor = 2;   // 2 n^2 quasi-uniform directions
    // Boundedness = running max grows less than this per decade over the
    // three largest decades. A bounded ratio still creeps upward through
    // almost-periodic recurrences (observed up to ~25% per decade on atomic
    // measures); an unbounded one grows tenfold per decade. 0.5 splits the
    // two regimes with a wide margin either way.
    double decade_growth_tol = 0.5;
};

struct KandaForstEstimate {
    double sup_ratio = 0.0;       // sup over the grid of |Im psi| / (1 + Re psi)
    bool bounded_heuristic = true;
    Vec worst_z;
    int failed_evals = 0;
};

// Grid estimate of the Kanda-Forst ratio. extra_dirs augment the
// quasi-uniform set (decide_H passes the eigenvector directions of A so
// degenerate directions are always probed).
KandaForstEstimate estimate_kanda_forst(const PsiView& psi, const KfGrid& grid = {},
                                        const std::vector<Vec>& extra_dirs = {});

// Explicit constant M with |Im psi| <= M (1 + Re psi), assembled from
// Re psi >= (c/2)|z|^2 with c the smallest eigenvalue of A:
//   M = |a|/sqrt(2c) + (∫_{|x|<1} |x|^2 mu) / c + 2 mu({|x| >= 1})
// Requires full rank.
double kanda_forst_bound_fullrank(const LevyTriplet& t, const SpectralData& s);

enum class KestenClass { Converges, Diverges, Undecided };
const char* to_string(KestenClass c);

struct KestenSpec {
    double z0 = 1.0;
    int doublings = 16;
    double converge_ratio = 0.75;  // successive-increment ratio, last `window` doublings
    int window = 4;
    double diverge_slack = 1e-6;   // tolerance on "non-decreasing"
    QuadControl quad{};
};

struct KestenResult {
    std::vector<std::pair<double, double>> partial_integrals;  // (upper limit, value)
    KestenClass classification = KestenClass::Undecided;
    std::optional<double> limit_estimate;
    bool is_compound_poisson = false;
};

// Partial integrals of ∫_0^Z Re([1 + psi(z)]^{-1}) dz over doubling limits;
// finiteness decides non-polarity of points in one dimension.
KestenResult kesten(const PsiView& psi, const KestenSpec& spec = {});
KestenResult kesten(const LevyTriplet& t, const KestenSpec& spec = {});

// A = 0, finite mu, and a equal to the negated small-jump compensator.
bool is_compound_poisson(const LevyTriplet& t, double tol = 1e-10);

struct SubordinatorCheck {
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

// Drift rule for subordinators: positive drift rules the hypothesis out;
// zero drift is not decided by this rule alone.
SubordinatorCheck subordinator_rule(double drift, const LevyMeasure& mu);

struct DensityGrid {
    double r_min = 1e-2;
    double r_max = 1e8;
    int per_decade = 6;
    double threshold = 50.0;
};

// Sufficient-condition flag for bounded continuous transition densities:
// min over directions of Re psi(r u)/ln(1+r) must clear the threshold at the
// largest radius and grow over the last two decades. Advisory only.
bool density_flag(const PsiView& psi, const DensityGrid& grid = {},
                  const std::vector<Vec>& extra_dirs = {});

struct CheckConfig {
    DecomposeOptions spectral{};
    double solve_tol = 1e-9;
    double membership_tol = 1e-9;
    KfGrid kf{};
    DensityGrid density{};
    bool with_density = true;
};

struct HuntReport {
    Verdict verdict = Verdict::Inconclusive;
    Criterion criterion = Criterion::None;
    int n = 0;
    int rank = 0;
    Vec bprime;              // empty when not computable
    SolveResult condition_S;
    double mu1_mass = 0.0;   // +inf disqualifies the off-range criterion
    KandaForstEstimate kf;
    bool density = false;
    std::vector<std::string> notes;
};

HuntReport decide_H(const LevyTriplet& t, const CheckConfig& cfg = {});

}  // namespace levyhunt
