#include "levyhunt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "levyhunt/errors.hpp"
#include "levyhunt/rng.hpp"

namespace levyhunt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMembershipTol = 1e-9;

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEVYHUNT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return std::min(v, 256);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 64u));
}

// jump sampling tables fixed per run
struct JumpSampler {
    double rate = 0.0;
    // atomic: cumulative masses; radial: cumulative weights
    std::vector<double> cum;
    const AtomicMeasure* atoms = nullptr;
    const RadialPowerMeasure* radial = nullptr;
    double eps = 0.0;  // radial truncation

    Vec draw(CounterRng& rng) const {
        const double u = rng.uniform() * cum.back();
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (atoms) return atoms->atoms[std::min(idx, atoms->atoms.size() - 1)].x;
        const auto& rm = *radial;
        const std::size_t j = std::min(idx, rm.directions.size() - 1);
        // radius via inverse tail: P(|x| > r) ∝ r^(-alpha) - cutoff^(-alpha)
        const double lo = std::pow(eps, -rm.alpha);
        const double hi = std::isinf(rm.cutoff) ? 0.0 : std::pow(rm.cutoff, -rm.alpha);
        const double v = lo - rng.uniform() * (lo - hi);
        const double r = std::pow(v, -1.0 / rm.alpha);
        return scaled(rm.directions[j], r);
    }
};

JumpSampler make_sampler(const LevyMeasure& mu, double eps) {
    JumpSampler js;
    js.eps = eps;
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        js.atoms = am;
        double acc = 0.0;
        for (const Atom& a : am->atoms) js.cum.push_back(acc += a.mass);
        js.rate = acc;
    } else if (const auto* rm = std::get_if<RadialPowerMeasure>(&mu)) {
        js.radial = rm;
        double acc = 0.0;
        for (double w : rm->weights) js.cum.push_back(acc += w);
        js.rate = tail_mass(mu, eps);
    }
    return js;
}

}  // namespace

const char* to_string(JumpOrigin o) {
    switch (o) {
        case JumpOrigin::Large: return "large";
        case JumpOrigin::Small: return "small";
        case JumpOrigin::OffRange: return "off_range";
    }
    return "?";
}

std::span<const double> PathEnsemble::state(std::int64_t path, std::size_t time_index) const {
    const std::size_t stride = times_.size() * static_cast<std::size_t>(n_);
    return std::span<const double>(states_)
        .subspan(static_cast<std::size_t>(path) * stride +
                     time_index * static_cast<std::size_t>(n_),
                 static_cast<std::size_t>(n_));
}

const std::vector<JumpRecord>& PathEnsemble::jumps(std::int64_t path) const {
    return jump_log_[static_cast<std::size_t>(path)];
}

std::span<const double> PathEnsemble::gauss_total(std::int64_t path) const {
    return std::span<const double>(gauss_).subspan(
        static_cast<std::size_t>(path) * static_cast<std::size_t>(n_),
        static_cast<std::size_t>(n_));
}

PathEnsemble sample_paths(const LevyTriplet& t, const SimConfig& cfg, int workers) {
    const int n = t.dim();
    if (!(cfg.dt > 0.0)) throw InvalidInput("sim.dt: must be positive");
    if (!(cfg.dt < cfg.t_max)) throw InvalidInput("sim.dt: must be smaller than t_max");
    if (!(cfg.small_jump_cut > 0.0) || cfg.small_jump_cut > 1.0)
        throw InvalidInput("sim.small_jump_cut: must lie in (0, 1]");
    if (cfg.n_paths < 1) throw InvalidInput("sim.n_paths: must be at least 1");
    if (!cfg.start.empty() && static_cast<int>(cfg.start.size()) != n)
        throw InvalidInput("sim.start: dimension mismatch");

    PathEnsemble ens;
    ens.cfg_ = cfg;
    if (ens.cfg_.start.empty()) ens.cfg_.start.assign(static_cast<std::size_t>(n), 0.0);
    ens.n_ = n;
    ens.spectral_ = decompose(t.covariance());

    // time grid 0 = t0 < ... < tm = t_max
    {
        const std::size_t m = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-12));
        ens.times_.resize(m + 1);
        for (std::size_t i = 0; i < m; ++i) ens.times_[i] = static_cast<double>(i) * cfg.dt;
        ens.times_[m] = cfg.t_max;
    }

    const bool atomic = std::holds_alternative<AtomicMeasure>(t.measure());
    const double eps = atomic ? 0.0 : cfg.small_jump_cut;
    const JumpSampler sampler = make_sampler(t.measure(), eps);
    ens.jump_rate_ = sampler.rate;
    ens.neglected_var_ = atomic ? 0.0 : second_moment_below(t.measure(), eps);

    ens.compensator_ = first_moment(t.measure(), eps, 1.0, n);
    ens.drift_ = sub(t.drift(), ens.compensator_);

    const std::size_t grid = ens.times_.size();
    const std::size_t un = static_cast<std::size_t>(n);
    ens.states_.assign(static_cast<std::size_t>(cfg.n_paths) * grid * un, 0.0);
    ens.jump_log_.assign(static_cast<std::size_t>(cfg.n_paths), {});
    ens.gauss_.assign(static_cast<std::size_t>(cfg.n_paths) * un, 0.0);

    const bool gaussian = ens.spectral_.rank > 0;
    const Mat& sqrtA = ens.spectral_.sqrtA;
    const SpectralData& sd = ens.spectral_;

    auto run_path = [&](std::int64_t p) {
        CounterRng rng(cfg.master_seed, static_cast<std::uint64_t>(p));

        // jump times and vectors first, in time order
        std::vector<std::pair<double, Vec>> jumps;
        if (sampler.rate > 0.0) {
            double tj = rng.exponential(sampler.rate);
            while (tj <= cfg.t_max) {
                jumps.emplace_back(tj, sampler.draw(rng));
                tj += rng.exponential(sampler.rate);
            }
        }

        Vec x = ens.cfg_.start;
        Vec xi(un), ginc;
        double* out = &ens.states_[static_cast<std::size_t>(p) * grid * un];
        double* gsum = &ens.gauss_[static_cast<std::size_t>(p) * un];
        auto& log = ens.jump_log_[static_cast<std::size_t>(p)];

        double now = 0.0;
        std::size_t gi = 0;  // next grid index to record
        std::size_t ji = 0;  // next jump to apply

        auto advance_to = [&](double target) {
            const double delta = target - now;
            if (delta > 0.0) {
                axpy(delta, ens.drift_, x);
                if (gaussian) {
                    rng.normal_vec(xi);
                    ginc = sqrtA.apply(xi);
                    const double sd_step = std::sqrt(delta);
                    for (std::size_t i = 0; i < un; ++i) {
                        x[i] += sd_step * ginc[i];
                        gsum[i] += sd_step * ginc[i];
                    }
                }
            }
            now = target;
        };

        while (gi < grid || ji < jumps.size()) {
            const double tg = gi < grid ? ens.times_[gi] : kInf;
            const double tj = ji < jumps.size() ? jumps[ji].first : kInf;
            if (tj < tg) {
                advance_to(tj);
                const Vec& jv = jumps[ji].second;
                for (std::size_t i = 0; i < un; ++i) x[i] += jv[i];
                JumpRecord rec;
                rec.t = tj;
                rec.jump = jv;
                const double d = sd.range_distance(jv);
                rec.origin = d > kMembershipTol * (1.0 + norm(jv)) ? JumpOrigin::OffRange
                             : norm(jv) < 1.0                      ? JumpOrigin::Small
                                                                   : JumpOrigin::Large;
                rec.state_after = x;
                log.push_back(std::move(rec));
                ++ji;
            } else {
                advance_to(tg);
                for (std::size_t i = 0; i < un; ++i) out[gi * un + i] = x[i];
                ++gi;
            }
        }
    };

    const int nw = std::min<std::int64_t>(resolve_workers(workers), cfg.n_paths);
    if (nw <= 1) {
        for (std::int64_t p = 0; p < cfg.n_paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        const std::int64_t chunk = (cfg.n_paths + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, cfg.n_paths);
            pool.emplace_back([&, lo, hi] {
                for (std::int64_t p = lo; p < hi; ++p) run_path(p);
            });
        }
        for (auto& th : pool) th.join();
    }
    return ens;
}

std::vector<double> first_off_range_jump(const PathEnsemble& ens, const SpectralData& s,
                                         double membership_tol) {
    std::vector<double> out(static_cast<std::size_t>(ens.n_paths()), kInf);
    for (std::int64_t p = 0; p < ens.n_paths(); ++p) {
        for (const JumpRecord& j : ens.jumps(p)) {
            if (!s.in_range(j.jump, membership_tol)) {
                out[static_cast<std::size_t>(p)] = j.t;
                break;
            }
        }
    }
    return out;
}

namespace {

// orthonormalized basis for distance computations
struct TargetGeometry {
    Vec point;
    std::vector<Vec> frame;

    double distance(std::span<const double> x) const {
        Vec d = sub(x, point);
        for (const Vec& e : frame) {
            const double c = dot(d, e);
            axpy(-c, e, d);
        }
        return norm(d);
    }
};

TargetGeometry make_geometry(const HitTarget& target, int n) {
    TargetGeometry g;
    if (const auto* pt = std::get_if<PointTarget>(&target)) {
        if (static_cast<int>(pt->x.size()) != n)
            throw InvalidInput("hit target: point dimension mismatch");
        g.point = pt->x;
        return g;
    }
    const auto& sub_t = std::get<AffineSubspace>(target);
    if (static_cast<int>(sub_t.point.size()) != n)
        throw InvalidInput("hit target: subspace point dimension mismatch");
    if (sub_t.basis.empty() || sub_t.basis.size() >= static_cast<std::size_t>(n))
        throw InvalidInput("hit target: subspace dimension must lie in [1, n-1]");
    g.point = sub_t.point;
    for (const Vec& b : sub_t.basis) {
        if (static_cast<int>(b.size()) != n)
            throw InvalidInput("hit target: basis vector dimension mismatch");
        Vec e = b;
        for (const Vec& f : g.frame) {
            const double c = dot(e, f);
            axpy(-c, f, e);
        }
        const double nrm = norm(e);
        if (nrm > 1e-12) g.frame.push_back(scaled(e, 1.0 / nrm));
    }
    if (g.frame.empty()) throw InvalidInput("hit target: basis is degenerate");
    return g;
}

}  // namespace

HittingEstimate estimate_hitting(const PathEnsemble& ens, const HitTarget& target,
                                 double tube_delta) {
    if (ens.n_paths() < 1) throw InvalidInput("estimate_hitting: empty ensemble");
    if (tube_delta < 0.0) throw InvalidInput("estimate_hitting: tube_delta must be >= 0");
    const TargetGeometry geom = make_geometry(target, ens.dim());
    const double delta = tube_delta > 0.0 ? tube_delta : kMembershipTol;

    std::int64_t hits = 0;
    const std::size_t grid = ens.times().size();
    for (std::int64_t p = 0; p < ens.n_paths(); ++p) {
        bool hit = false;
        for (std::size_t g = 1; g < grid && !hit; ++g)  // grid times > 0
            hit = geom.distance(ens.state(p, g)) <= delta;
        if (!hit)
            for (const JumpRecord& j : ens.jumps(p)) {
                if (j.t <= 0.0) continue;
                if (geom.distance(j.state_after) <= delta) {
                    hit = true;
                    break;
                }
            }
        if (hit) ++hits;
    }

    HittingEstimate est;
    est.n_hits = hits;
    est.n_paths = ens.n_paths();
    est.tube_delta = tube_delta;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(ens.n_paths());
    est.ci95_halfwidth = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                                          static_cast<double>(ens.n_paths()));
    return est;
}

ThinnessReport thinness_probe(const LevyTriplet& t, const SpectralData& s, const SimConfig& cfg,
                              double membership_tol) {
    const OffRangeRestriction off = restrict_off_range(t, s, membership_tol);
    if (!std::isfinite(off.mass))
        throw InvalidInput("thinness_probe: off-range mass must be finite");
    const Vec bprime = compensated_drift(t, off.mu1);
    if (solve_condition_S(s, bprime).solvable)
        throw InvalidInput(
            "thinness_probe: requires b' off range(sqrtA); this process keeps the subspace "
            "invariant before the first off-range jump");

    SimConfig cfg2 = cfg;
    if (cfg2.start.empty()) cfg2.start.assign(static_cast<std::size_t>(t.dim()), 0.0);
    if (!s.in_range(cfg2.start, membership_tol))
        throw InvalidInput("thinness_probe: start must lie on range(sqrtA)");

    const PathEnsemble ens = sample_paths(t, cfg2);
    const std::vector<double> t_off = first_off_range_jump(ens, s, membership_tol);

    ThinnessReport rep;
    rep.paths = ens.n_paths();
    const std::size_t grid = ens.times().size();
    for (std::int64_t p = 0; p < ens.n_paths(); ++p) {
        if (std::isfinite(t_off[static_cast<std::size_t>(p)])) ++rep.paths_with_off_range_jump;
        for (std::size_t g = 1; g < grid; ++g) {
            if (ens.times()[g] >= t_off[static_cast<std::size_t>(p)]) break;
            if (s.range_distance(ens.state(p, g)) <= 1e-9) ++rep.revisits;
        }
    }
    rep.passed = rep.revisits == 0;
    return rep;
}

}  // namespace levyhunt
