#include "levyhunt/hunt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyhunt/errors.hpp"

namespace levyhunt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Vec> grid_directions(int n, int dir_factor, const std::vector<Vec>& extra) {
    std::vector<Vec> dirs = canonical_directions(n, dir_factor * n * n);
    for (const Vec& u : extra) {
        const double nrm = norm(u);
        if (nrm > 0.0) dirs.push_back(scaled(u, 1.0 / nrm));
    }
    return dirs;
}

std::vector<double> log_radii(double r_min, double r_max, int per_decade) {
    const double d0 = std::log10(r_min), d1 = std::log10(r_max);
    const int steps = std::max(1, static_cast<int>(std::lround((d1 - d0) * per_decade)));
    std::vector<double> r(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) r[static_cast<std::size_t>(i)] = std::pow(10.0, d0 + (d1 - d0) * i / steps);
    return r;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Fails: return "FAILS";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::None: return "none";
        case Criterion::FullRankGaussian: return "full_rank_gaussian";
        case Criterion::OffRangeDriftSolvable: return "off_range_drift";
        case Criterion::SubordinatorDrift: return "subordinator_drift";
    }
    return "?";
}

const char* to_string(KestenClass c) {
    switch (c) {
        case KestenClass::Converges: return "CONVERGES";
        case KestenClass::Diverges: return "DIVERGES";
        case KestenClass::Undecided: return "UNDECIDED";
    }
    return "?";
}

KandaForstEstimate estimate_kanda_forst(const PsiView& psi, const KfGrid& grid,
                                        const std::vector<Vec>& extra_dirs) {
    const auto dirs = grid_directions(psi.n, grid.dir_factor, extra_dirs);
    const auto radii = log_radii(grid.r_min, grid.r_max, grid.per_decade);

    KandaForstEstimate est;
    est.worst_z.assign(static_cast<std::size_t>(psi.n), 0.0);

    // running max of the ratio recorded at each whole decade
    std::vector<std::pair<double, double>> decade_max;  // (radius, running max)
    double running = 0.0;
    int evals = 0;

    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double r = radii[ri];
        for (const Vec& u : dirs) {
            Vec z = scaled(u, r);
            std::complex<double> v;
            try {
                v = psi.eval(z);
            } catch (const Error&) {
                ++est.failed_evals;
                continue;
            }
            ++evals;
            const double ratio = std::abs(v.imag()) / (1.0 + v.real());
            if (ratio > est.sup_ratio) {
                est.sup_ratio = ratio;
                est.worst_z = std::move(z);
            }
        }
        running = est.sup_ratio;
        const double frac = std::log10(r) - std::floor(std::log10(r) + 0.5);
        if (std::abs(frac) < 1e-9) decade_max.emplace_back(r, running);
    }
    if (evals == 0) throw EvalError("estimate_kanda_forst: exponent failed on the whole grid");

    // bounded when the running max grows < decade_growth_tol per decade over
    // the three largest decades
    est.bounded_heuristic = true;
    const std::size_t nb = decade_max.size();
    for (std::size_t k = nb > 3 ? nb - 3 : 1; k < nb; ++k) {
        const double prev = decade_max[k - 1].second;
        const double cur = decade_max[k].second;
        if (prev == 0.0) {
            if (cur > 0.0) est.bounded_heuristic = false;
            continue;
        }
        if (cur > prev * (1.0 + grid.decade_growth_tol)) est.bounded_heuristic = false;
    }
    return est;
}

double kanda_forst_bound_fullrank(const LevyTriplet& t, const SpectralData& s) {
    if (s.dim() != t.dim()) throw InvalidInput("kanda_forst_bound_fullrank: spectral mismatch");
    if (s.rank != s.dim())
        throw InvalidInput("kanda_forst_bound_fullrank: A is degenerate (rank " +
                           std::to_string(s.rank) + " of " + std::to_string(s.dim()) + ")");
    const double c = s.D.back();
    const double a_norm = norm(t.linear_coeff());
    const double small2 = second_moment_below(t.measure(), 1.0);
    const double big = tail_mass(t.measure(), 1.0);
    return a_norm / std::sqrt(2.0 * c) + small2 / c + 2.0 * big;
}

bool is_compound_poisson(const LevyTriplet& t, double tol) {
    if (max_abs(t.covariance().data()) > tol) return false;
    if (!std::isfinite(total_mass(t.measure()))) return false;
    Vec comp;
    try {
        comp = first_moment(t.measure(), 0.0, 1.0, t.dim());
    } catch (const IntegrabilityError&) {
        return false;
    }
    // pure compound Poisson: a + ∫_{|x|<1} x mu(dx) = 0
    const Vec res = add(t.linear_coeff(), comp);
    return norm(res) <= tol * (1.0 + norm(t.linear_coeff()));
}

namespace {

KestenResult kesten_impl(const PsiView& psi, const KestenSpec& spec, bool cp_flag) {
    if (psi.n != 1) throw CapabilityError("kesten: requires a one-dimensional process");
    if (spec.doublings < spec.window + 1)
        throw InvalidInput("kesten: doublings must exceed the classification window");

    auto integrand = [&psi](double z) {
        const Vec zz{z};
        const std::complex<double> v = psi.eval(zz);
        return (1.0 / (1.0 + v)).real();
    };

    KestenResult out;
    out.is_compound_poisson = cp_flag;

    double total = 0.0;
    Vec increments;
    double hi = spec.z0;
    total += integrate(integrand, 0.0, hi, spec.quad).value;
    out.partial_integrals.emplace_back(hi, total);
    for (int j = 1; j <= spec.doublings; ++j) {
        const double next = hi * 2.0;
        const double inc = integrate(integrand, hi, next, spec.quad).value;
        increments.push_back(inc);
        total += inc;
        hi = next;
        out.partial_integrals.emplace_back(hi, total);
    }

    const std::size_t w = static_cast<std::size_t>(spec.window);
    bool conv = true, div = true;
    for (std::size_t j = increments.size() - w; j < increments.size(); ++j) {
        const double prev = increments[j - 1], cur = increments[j];
        if (prev <= 1e-300) {
            // integrand has effectively vanished
            div = false;
            continue;
        }
        const double ratio = cur / prev;
        if (ratio >= spec.converge_ratio) conv = false;
        if (ratio < 1.0 - spec.diverge_slack) div = false;
    }
    out.classification = conv   ? KestenClass::Converges
                         : div  ? KestenClass::Diverges
                                : KestenClass::Undecided;

    if (out.classification == KestenClass::Converges) {
        const double last = increments.back();
        const double prev = increments[increments.size() - 2];
        if (prev > 0.0 && last > 0.0) {
            const double q = std::min(last / prev, 0.95);
            out.limit_estimate = total + last * q / (1.0 - q);
        } else {
            out.limit_estimate = total;
        }
    }
    return out;
}

}  // namespace

KestenResult kesten(const PsiView& psi, const KestenSpec& spec) {
    return kesten_impl(psi, spec, false);
}

KestenResult kesten(const LevyTriplet& t, const KestenSpec& spec) {
    return kesten_impl(t.psi(), spec, is_compound_poisson(t));
}

SubordinatorCheck subordinator_rule(double drift, const LevyMeasure& mu) {
    if (!(drift >= 0.0)) throw InvalidInput("subordinator_rule: drift must be nonnegative");
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        for (const Atom& a : am->atoms)
            if (a.x.size() != 1 || a.x[0] <= 0.0)
                throw InvalidInput("subordinator_rule: mu must live on (0, inf)");
    } else if (const auto* rm = std::get_if<RadialPowerMeasure>(&mu)) {
        for (const Vec& u : rm->directions)
            if (u.size() != 1 || u[0] <= 0.0)
                throw InvalidInput("subordinator_rule: mu must live on (0, inf)");
        if (rm->alpha >= 1.0)
            throw InvalidInput("subordinator_rule: ∫(1 ∧ x) mu(dx) diverges (alpha >= 1)");
    }
    if (drift > 0.0)
        return {Verdict::Fails,
                "positive drift: a subordinator satisfying the hypothesis must have drift 0"};
    return {Verdict::Inconclusive,
            "zero drift: the drift rule is necessary only and does not decide the hypothesis"};
}

bool density_flag(const PsiView& psi, const DensityGrid& grid, const std::vector<Vec>& extra_dirs) {
    const auto dirs = grid_directions(psi.n, 2, extra_dirs);
    auto min_ratio = [&](double r) {
        double m = kInf;
        for (const Vec& u : dirs) {
            const Vec z = scaled(u, r);
            const double v = psi.eval(z).real() / std::log1p(r);
            m = std::min(m, v);
        }
        return m;
    };
    const double v2 = min_ratio(grid.r_max);
    if (v2 < grid.threshold) return false;
    const double v1 = min_ratio(grid.r_max / 10.0);
    const double v0 = min_ratio(grid.r_max / 100.0);
    return v2 > v1 && v1 > v0;
}

HuntReport decide_H(const LevyTriplet& t, const CheckConfig& cfg) {
    HuntReport rep;
    rep.n = t.dim();

    const SpectralData sd = decompose(t.covariance(), cfg.spectral);
    rep.rank = sd.rank;

    std::vector<Vec> eig_dirs;
    for (int i = 0; i < sd.dim(); ++i) {
        const auto row = sd.O.row(static_cast<std::size_t>(i));
        eig_dirs.emplace_back(row.begin(), row.end());
    }

    try {
        rep.kf = estimate_kanda_forst(t.psi(), cfg.kf, eig_dirs);
        if (rep.kf.failed_evals > 0)
            rep.notes.push_back("kanda-forst grid: " + std::to_string(rep.kf.failed_evals) +
                                " evaluation(s) skipped");
    } catch (const Error& e) {
        rep.notes.push_back(std::string("kanda-forst estimate unavailable: ") + e.what());
    }
    if (cfg.with_density) {
        try {
            rep.density = density_flag(t.psi(), cfg.density, eig_dirs);
        } catch (const Error& e) {
            rep.notes.push_back(std::string("density flag unavailable: ") + e.what());
        }
    }

    if (sd.rank == rep.n) {
        rep.verdict = Verdict::Holds;
        rep.criterion = Criterion::FullRankGaussian;
        rep.bprime = t.drift();  // no off-range jumps to compensate
        rep.condition_S = solve_condition_S(sd, rep.bprime, cfg.solve_tol);
        rep.mu1_mass = 0.0;
        if (!rep.kf.bounded_heuristic) {
            // the bound is guaranteed for full rank; keep the grid evidence honest
            rep.notes.push_back("grid heuristic disagreed with the full-rank bound; overridden");
            rep.kf.bounded_heuristic = true;
        }
        rep.notes.push_back("Gaussian covariance has full rank");
        return rep;
    }

    const OffRangeRestriction off = restrict_off_range(t, sd, cfg.membership_tol);
    rep.mu1_mass = off.mass;

    if (std::isfinite(off.mass)) {
        try {
            rep.bprime = compensated_drift(t, off.mu1);
        } catch (const IntegrabilityError& e) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes.push_back(std::string("compensated drift unavailable: ") + e.what());
            return rep;
        }
        rep.condition_S = solve_condition_S(sd, rep.bprime, cfg.solve_tol);
        rep.verdict = rep.condition_S.solvable ? Verdict::Holds : Verdict::Fails;
        rep.criterion = Criterion::OffRangeDriftSolvable;
        rep.notes.push_back(rep.condition_S.solvable
                                ? "off-range mass finite and sqrtA y = b' is solvable"
                                : "off-range mass finite but b' has a component outside range(sqrtA)");

        // tolerance-sensitivity warning for atoms hugging the membership boundary
        if (const auto* am = std::get_if<AtomicMeasure>(&t.measure())) {
            for (const Atom& a : am->atoms) {
                const double d = sd.range_distance(a.x);
                const double tol = cfg.membership_tol * (1.0 + norm(a.x));
                if (d > tol && d <= 10.0 * tol) {
                    rep.notes.push_back(
                        "an atom lies within 10x the membership tolerance of range(sqrtA); "
                        "the verdict is tolerance-sensitive");
                    break;
                }
            }
        }
        return rep;
    }

    // infinite off-range mass: the drift-solvability rule does not apply;
    // a driftful 1-d subordinator can still be ruled out
    if (rep.n == 1 && sd.rank == 0) {
        bool positive_support = true;
        if (const auto* am = std::get_if<AtomicMeasure>(&t.measure())) {
            for (const Atom& a : am->atoms) positive_support &= a.x[0] > 0.0;
        } else if (const auto* rm = std::get_if<RadialPowerMeasure>(&t.measure())) {
            for (const Vec& u : rm->directions) positive_support &= u[0] > 0.0;
        }
        if (positive_support) {
            try {
                const Vec b1 = compensated_drift(t, t.measure());
                const double d = b1[0];
                if (d > cfg.solve_tol) {
                    rep.verdict = Verdict::Fails;
                    rep.criterion = Criterion::SubordinatorDrift;
                    rep.bprime = b1;
                    rep.notes.push_back("subordinator with positive drift " + std::to_string(d));
                    return rep;
                }
            } catch (const IntegrabilityError&) {
                // not of bounded variation; fall through
            }
        }
    }

    rep.verdict = Verdict::Inconclusive;
    rep.notes.push_back(
        "off-range mass is infinite with degenerate A: outside the decidable cases");
    return rep;
}

}  // namespace levyhunt
