// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, not computed at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "levyhunt/hunt.hpp"
#include "levyhunt/report_io.hpp"
#include "levyhunt/rng.hpp"
#include "levyhunt/simulate.hpp"
#include "levyhunt/triplet_io.hpp"

using namespace levyhunt;

namespace {

const std::string kFixtures = LEVYHUNT_FIXTURES;
const std::string kCli = LEVYHUNT_CLI;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    int id;
    std::string title;
    double budget_s;
    std::function<Outcome()> fn;
};

LevyTriplet load_triplet(const std::string& name) {
    return std::get<LevyTriplet>(load_process_spec(kFixtures + "/" + name));
}

Mat diag_mat(const Vec& d) { return Mat::diag(d); }

Mat random_orthogonal(CounterRng& rng, std::size_t n) {
    Mat q = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double th = 2.0 * std::numbers::pi * rng.uniform();
            const double c = std::cos(th), s = std::sin(th);
            for (std::size_t k = 0; k < n; ++k) {
                const double qi = q(i, k), qj = q(j, k);
                q(i, k) = c * qi - s * qj;
                q(j, k) = s * qi + c * qj;
            }
        }
    return q;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. equivalence of verdict, condition (S) solvability and the boundedness
//    heuristic on 20 constructed finite-off-range triplets
Outcome crit_equivalence() {
    CounterRng rng(1001, 0);
    int mismatches = 0, built = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const bool want_solvable = trial < 10;
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);  // 2, 3, 4
        const int k = trial % 5 == 4 ? 0 : 1 + static_cast<int>(rng.uniform() * (n - 1));

        Vec lam(n, 0.0);
        for (int i = 0; i < k; ++i) lam[static_cast<std::size_t>(i)] = 0.3 + 1.7 * rng.uniform();
        std::sort(lam.begin(), lam.end(), std::greater<>());

        // atoms off the diagonal-frame range: nonzero tail components
        AtomicMeasure am;
        const int n_atoms = 2 + static_cast<int>(rng.uniform() * 3);
        for (int i = 0; i < n_atoms; ++i) {
            Vec x(n, 0.0);
            for (std::size_t d = 0; d < n; ++d) x[d] = 0.8 * rng.normal();
            x[n - 1] += (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + rng.uniform());
            am.atoms.push_back({x, 0.3 + 1.2 * rng.uniform()});
        }

        // target b' in the diagonal frame, then back out a
        Vec bprime(n, 0.0);
        for (int i = 0; i < k; ++i) bprime[static_cast<std::size_t>(i)] = rng.normal();
        if (!want_solvable) bprime[n - 1] = 0.4 + rng.uniform();

        Vec comp(n, 0.0);
        for (const Atom& at : am.atoms)
            if (norm(at.x) < 1.0) axpy(at.mass, at.x, comp);
        Vec a(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) a[i] = -bprime[i] - comp[i];

        LevyTriplet t(a, diag_mat(lam), am);
        // conjugate away from the axes half the time
        if (trial % 2 == 1) t = rotate_triplet(t, random_orthogonal(rng, n));
        ++built;

        const HuntReport rep = decide_H(t);
        const bool v = rep.verdict == Verdict::Holds;
        const bool s = rep.condition_S.solvable;
        const bool b = rep.kf.bounded_heuristic;
        if (rep.criterion != Criterion::OffRangeDriftSolvable || v != want_solvable || v != s ||
            v != b)
            ++mismatches;
    }
    Outcome o;
    o.pass = mismatches == 0 && built == 20;
    o.detail = std::to_string(built) + " triplets, " + std::to_string(mismatches) + " mismatches";
    return o;
}

// ---------------------------------------------------------------------------
// 2. full-rank covariance: HOLDS and the explicit constant dominates the grid
Outcome crit_fullrank() {
    CounterRng rng(1002, 0);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
        Mat A = g.transposed() * g;
        for (std::size_t i = 0; i < n; ++i) A(i, i) += 0.1;  // lambda_min >= 0.1
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = 0.5 * (A(i, j) + A(j, i));
                A(i, j) = A(j, i) = v;
            }

        Vec a(n);
        for (double& v : a) v = 3.0 * rng.normal();
        AtomicMeasure am;
        const int n_atoms = static_cast<int>(rng.uniform() * 6);
        for (int i = 0; i < n_atoms; ++i) {
            Vec x(n);
            for (double& v : x) v = 1.5 * rng.normal();
            if (norm(x) < 1e-6) x[0] = 1.0;
            am.atoms.push_back({x, 0.1 + rng.uniform()});
        }
        const LevyTriplet t(a, A,
                            am.atoms.empty() ? LevyMeasure(NoJumps{}) : LevyMeasure(am));

        const HuntReport rep = decide_H(t);
        const auto spec = decompose(t.covariance());
        const double bound = kanda_forst_bound_fullrank(t, spec);
        if (rep.verdict != Verdict::Holds || rep.criterion != Criterion::FullRankGaussian ||
            rep.kf.sup_ratio > bound)
            ++bad;
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = "50 triplets, " + std::to_string(bad) + " violations";
    return o;
}

// ---------------------------------------------------------------------------
// 3. Kesten oracle families
Outcome crit_kesten() {
    Outcome o;
    std::ostringstream d;

    const LevyTriplet gauss = load_triplet("gaussian-1d.json");
    const KestenResult rg = kesten(gauss);
    const double target = std::numbers::pi / std::sqrt(2.0);
    const bool g_ok = rg.classification == KestenClass::Converges && rg.limit_estimate &&
                      std::abs(*rg.limit_estimate - target) <= 1e-4;
    d << "gauss err=" << (rg.limit_estimate ? std::abs(*rg.limit_estimate - target) : -1.0);

    const KestenResult rc = kesten(stable_exponent(1, 1.0).psi());
    const bool c_ok = rc.classification == KestenClass::Diverges;

    const KestenResult r15 = kesten(stable_exponent(1, 1.5).psi());
    const bool s_ok = r15.classification == KestenClass::Converges;

    const KestenResult rcp = kesten(load_triplet("compound-poisson.json"));
    const bool cp_ok = rcp.is_compound_poisson;

    o.pass = g_ok && c_ok && s_ok && cp_ok;
    d << (c_ok ? ", cauchy diverges" : ", cauchy WRONG")
      << (s_ok ? ", |z|^1.5 converges" : ", |z|^1.5 WRONG")
      << (cp_ok ? ", cp flagged" : ", cp NOT flagged");
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 4. exact-landing frequency from -b's reproduces the no-jump probability
Outcome crit_landing() {
    const LevyTriplet t = load_triplet("fails-case-2d.json");
    SimConfig cfg;
    cfg.n_paths = 100000;
    cfg.t_max = 1.0;
    cfg.dt = 0.05;
    cfg.master_seed = 20240;
    cfg.start = {0.0, -1.0};  // -b' * s with s = 1
    const PathEnsemble ens = sample_paths(t, cfg);
    const HittingEstimate est =
        estimate_hitting(ens, AffineSubspace{{0.0, 0.0}, {{1.0, 0.0}}}, 0.0);
    const double err = std::abs(est.p_hat - std::exp(-1.0));
    Outcome o;
    o.pass = err <= 0.01;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "p_hat=%.5f, |p_hat - 1/e|=%.5f (limit 0.01)", est.p_hat, err);
    o.detail = buf;
    return o;
}

// ---------------------------------------------------------------------------
// 5. thinness: no on-subspace revisits before the first off-range jump
Outcome crit_thinness() {
    const LevyTriplet t = load_triplet("fails-case-2d.json");
    const auto s = decompose(t.covariance());
    SimConfig cfg;
    cfg.n_paths = 10000;
    cfg.t_max = 1.0;
    cfg.dt = 0.01;
    cfg.master_seed = 20241;
    const ThinnessReport rep = thinness_probe(t, s, cfg);
    Outcome o;
    o.pass = rep.passed && rep.paths == 10000;
    o.detail = std::to_string(rep.revisits) + " revisits over " + std::to_string(rep.paths) +
               " paths (" + std::to_string(rep.paths_with_off_range_jump) + " with off-range jumps)";
    return o;
}

// ---------------------------------------------------------------------------
// 6. subordinator drift rule and its cross-check
Outcome crit_subordinator() {
    AtomicMeasure poisson;
    poisson.atoms.push_back({{1.0}, 1.0});

    const bool fails = subordinator_rule(1.0, NoJumps{}).verdict == Verdict::Fails &&
                       subordinator_rule(1.0, LevyMeasure(poisson)).verdict == Verdict::Fails;
    const bool inconclusive =
        subordinator_rule(0.0, LevyMeasure(poisson)).verdict == Verdict::Inconclusive;

    const LevyTriplet zero_drift({0.0}, Mat(1, 1), poisson);
    const bool cross = decide_H(zero_drift).verdict == Verdict::Holds;

    Outcome o;
    o.pass = fails && inconclusive && cross;
    o.detail = std::string(fails ? "d>0 FAILS" : "d>0 WRONG") +
               (inconclusive ? ", d=0 INCONCLUSIVE" : ", d=0 WRONG") +
               (cross ? ", decide_H cross-check HOLDS" : ", cross-check WRONG");
    return o;
}

// ---------------------------------------------------------------------------
// 7. numeric core: eigendecomposition and the least-squares oracle
Outcome crit_numeric() {
    CounterRng rng(1007, 0);
    int bad_recon = 0, bad_solve = 0;

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 9);  // up to 10
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
        Mat A = g.transposed() * g;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = 0.5 * (A(i, j) + A(j, i));
                A(i, j) = A(j, i) = v;
            }
        const auto s = decompose(A);

        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double v = 0.0;
                for (std::size_t r = 0; r < n; ++r) v += s.O(r, i) * s.D[r] * s.O(r, j);
                worst = std::max(worst, std::abs(v - A(i, j)));
            }
        if (worst > 1e-9 * std::max(1.0, s.D[0])) ++bad_recon;
    }

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5);
        const int rank = 1 + static_cast<int>(rng.uniform() * n);
        Mat A(n, n);
        for (int r = 0; r < rank; ++r) {
            Vec v(n);
            rng.normal_vec(v);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) A(i, j) += v[i] * v[j];
        }
        Vec b(n);
        rng.normal_vec(b);
        if (trial % 2 == 0) b = A.apply(b);  // half the cases are exactly solvable

        const auto s = decompose(A);
        const auto res = solve_condition_S(s, b);

        // independent oracle: modified Gram-Schmidt on the columns of A gives
        // an orthonormal basis of range(A) = range(sqrtA)
        std::vector<Vec> basis;
        for (std::size_t c = 0; c < n; ++c) {
            Vec v(n);
            for (std::size_t r = 0; r < n; ++r) v[r] = A(r, c);
            for (const Vec& e : basis) axpy(-dot(v, e), e, v);
            const double nrm = norm(v);
            if (nrm > 1e-8) basis.push_back(scaled(v, 1.0 / nrm));
        }
        Vec resid = b;
        for (const Vec& e : basis) axpy(-dot(resid, e), e, resid);
        const double oracle = norm(resid);

        if (std::abs(res.residual - oracle) > 1e-8 * (1.0 + norm(b))) ++bad_solve;
        const bool oracle_solvable = oracle <= 1e-9 * (1.0 + norm(b));
        if (res.solvable != oracle_solvable) ++bad_solve;
        if (res.solvable) {
            const double direct = norm(sub(b, s.sqrtA.apply(*res.y)));
            if (direct > 1e-8 * (1.0 + norm(b))) ++bad_solve;
        }
    }

    Outcome o;
    o.pass = bad_recon == 0 && bad_solve == 0;
    o.detail = std::to_string(bad_recon) + " reconstruction / " + std::to_string(bad_solve) +
               " solve failures over 100+100 systems";
    return o;
}

// ---------------------------------------------------------------------------
// 8. simulator statistics: Gaussian covariance, jump counts, Exp law
Outcome crit_simulator_stats() {
    std::ostringstream d;
    bool ok = true;

    {
        Mat A(2, 2);
        A(0, 0) = 1.0;
        A(0, 1) = A(1, 0) = 0.3;
        A(1, 1) = 0.5;
        const LevyTriplet t({0.0, 0.0}, A, NoJumps{});
        SimConfig cfg;
        cfg.n_paths = 100000;
        cfg.t_max = 1.0;
        cfg.dt = 0.1;
        cfg.master_seed = 20242;
        const PathEnsemble ens = sample_paths(t, cfg);
        const std::size_t last = ens.times().size() - 1;
        double c00 = 0, c01 = 0, c11 = 0, m0 = 0, m1 = 0;
        for (std::int64_t p = 0; p < cfg.n_paths; ++p) {
            const auto x = ens.state(p, last);
            m0 += x[0];
            m1 += x[1];
        }
        m0 /= cfg.n_paths;
        m1 /= cfg.n_paths;
        for (std::int64_t p = 0; p < cfg.n_paths; ++p) {
            const auto x = ens.state(p, last);
            c00 += (x[0] - m0) * (x[0] - m0);
            c01 += (x[0] - m0) * (x[1] - m1);
            c11 += (x[1] - m1) * (x[1] - m1);
        }
        c00 /= cfg.n_paths;
        c01 /= cfg.n_paths;
        c11 /= cfg.n_paths;
        const bool cov_ok = std::abs(c00 - 1.0) <= 0.03 * 1.0 &&
                            std::abs(c11 - 0.5) <= 0.03 * 0.5 &&
                            std::abs(c01 - 0.3) <= 0.03 * std::sqrt(1.0 * 0.5);
        ok = ok && cov_ok;
        d << "cov errs=(" << std::abs(c00 - 1.0) << "," << std::abs(c01 - 0.3) << ","
          << std::abs(c11 - 0.5) << ")";
    }

    const LevyTriplet t = load_triplet("fails-case-2d.json");
    {
        SimConfig cfg;
        cfg.n_paths = 100000;
        cfg.t_max = 1.0;
        cfg.dt = 0.5;
        cfg.master_seed = 20243;
        const PathEnsemble ens = sample_paths(t, cfg);
        std::int64_t total = 0;
        for (std::int64_t p = 0; p < cfg.n_paths; ++p)
            total += static_cast<std::int64_t>(ens.jumps(p).size());
        const double expect = static_cast<double>(cfg.n_paths) * cfg.t_max * ens.jump_rate();
        const double sigma = std::sqrt(expect);
        const bool jumps_ok = std::abs(static_cast<double>(total) - expect) <= 3.0 * sigma;
        ok = ok && jumps_ok;
        d << ", jump dev=" << std::abs(total - expect) / sigma << " sigma";
    }

    {
        SimConfig cfg;
        cfg.n_paths = 100000;
        cfg.t_max = 20.0;
        cfg.dt = 0.5;
        cfg.master_seed = 20244;
        const PathEnsemble ens = sample_paths(t, cfg);
        const auto s = decompose(t.covariance());
        std::vector<double> times;
        for (double v : first_off_range_jump(ens, s))
            if (std::isfinite(v)) times.push_back(v);
        std::sort(times.begin(), times.end());
        const double lambda = 1.0;  // off-range mass of the fixture
        double ks = 0.0;
        const double n = static_cast<double>(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double f = 1.0 - std::exp(-lambda * times[i]);
            ks = std::max(ks, std::abs((static_cast<double>(i) + 1.0) / n - f));
            ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        }
        const double crit = 1.63 / std::sqrt(n);  // 1% level
        ok = ok && ks < crit;
        d << ", KS=" << ks << " (crit " << crit << ", n=" << times.size() << ")";
    }

    Outcome o;
    o.pass = ok;
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 9. byte-identical structured output across worker counts
Outcome crit_determinism() {
    const std::string base = " simulate --input " + kFixtures +
                             "/fails-case-2d.json --paths 2000 --tmax 1 --dt 0.05 --seed 777 "
                             "--format structured";
    const std::string run1 = "LEVYHUNT_THREADS=1 " + kCli + base +
                             " --output acc_dump1.csv --jump-log acc_jl1.csv > acc_sum1.json";
    const std::string run2 = "LEVYHUNT_THREADS=4 " + kCli + base +
                             " --output acc_dump2.csv --jump-log acc_jl2.csv > acc_sum2.json";
    Outcome o;
    if (std::system(run1.c_str()) != 0 || std::system(run2.c_str()) != 0) {
        o.pass = false;
        o.detail = "cli invocation failed";
        return o;
    }
    const bool dumps = slurp("acc_dump1.csv") == slurp("acc_dump2.csv");
    const bool logs = slurp("acc_jl1.csv") == slurp("acc_jl2.csv");
    const bool sums = slurp("acc_sum1.json") == slurp("acc_sum2.json");
    const bool nonempty = !slurp("acc_dump1.csv").empty();
    o.pass = dumps && logs && sums && nonempty;
    o.detail = std::string("path dumps ") + (dumps ? "identical" : "DIFFER") + ", jump logs " +
               (logs ? "identical" : "DIFFER") + ", summaries " + (sums ? "identical" : "DIFFER");
    return o;
}

}  // namespace

int main() {
    std::vector<Check> checks = {
        {1, "verdict == condition (S) == Kanda-Forst boundedness on 20 finite-off-range triplets",
         10.0, crit_equivalence},
        {2, "50 full-rank triplets: HOLDS and grid ratio below the explicit constant", 30.0,
         crit_fullrank},
        {3, "Kesten families: Gaussian limit pi/sqrt(2), Cauchy diverges, |z|^1.5 converges, "
            "compound-Poisson caveat",
         5.0, crit_kesten},
        {4, "exact-landing frequency within 0.01 of 1/e at 1e5 paths", 60.0, crit_landing},
        {5, "thinness probe: zero on-subspace revisits over 1e4 paths", 30.0, crit_thinness},
        {6, "subordinator drift rule and decide_H cross-check", 5.0, crit_subordinator},
        {7, "eigendecomposition reconstruction and least-squares oracle agreement", 5.0,
         crit_numeric},
        {8, "simulator statistics: covariance 3%, jump counts 3 sigma, Exp KS at 1%", 120.0,
         crit_simulator_stats},
        {9, "cmd_simulate output is byte-identical across worker counts", 60.0,
         crit_determinism},
    };

    int failures = 0;
    for (const Check& c : checks) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= c.budget_s;
        const bool pass = out.pass && in_budget;
        if (!pass) ++failures;
        std::printf("%s criterion %d: %s [%s] (%.2fs, budget %.0fs)\n", pass ? "PASS" : "FAIL",
                    c.id, c.title.c_str(), out.detail.c_str(), secs, c.budget_s);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
