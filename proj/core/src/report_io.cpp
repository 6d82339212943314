#include "levyhunt/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace levyhunt {

namespace {

using nlohmann::json;

json num_or_inf(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* criterion_label(Criterion c) {
    switch (c) {
        case Criterion::FullRankGaussian:
            return "full-rank Gaussian component";
        case Criterion::OffRangeDriftSolvable:
            return "finite off-range mass, solvability of sqrtA y = b'";
        case Criterion::SubordinatorDrift:
            return "subordinator drift rule";
        case Criterion::None:
            return "none applicable";
    }
    return "?";
}

}  // namespace

std::string report_to_json(const HuntReport& rep) {
    json j;
    j["schema"] = "levyhunt/report/1";
    j["verdict"] = to_string(rep.verdict);
    j["criterion"] = to_string(rep.criterion);
    j["n"] = rep.n;
    j["rank"] = rep.rank;
    j["bprime"] = rep.bprime;
    j["condition_S"] = {
        {"solvable", rep.condition_S.solvable},
        {"residual", rep.condition_S.residual},
    };
    if (rep.condition_S.y) j["condition_S"]["y"] = *rep.condition_S.y;
    j["mu1_mass"] = num_or_inf(rep.mu1_mass);
    j["kanda_forst"] = {
        {"sup_ratio", rep.kf.sup_ratio},
        {"bounded_heuristic", rep.kf.bounded_heuristic},
        {"worst_z", rep.kf.worst_z},
    };
    j["density_flag"] = rep.density;
    j["notes"] = rep.notes;
    return j.dump(2);
}

std::string report_to_text(const HuntReport& rep) {
    std::ostringstream os;
    os << "hunt hypothesis check\n";
    os << "  verdict:        " << to_string(rep.verdict) << "\n";
    os << "  criterion:      " << criterion_label(rep.criterion) << "\n";
    os << "  rank:           " << rep.rank << " of " << rep.n << "\n";
    if (!rep.bprime.empty()) {
        os << "  b':             [";
        for (std::size_t i = 0; i < rep.bprime.size(); ++i)
            os << (i ? ", " : "") << fmt(rep.bprime[i]);
        os << "]\n";
        os << "  condition (S):  " << (rep.condition_S.solvable ? "solvable" : "not solvable")
           << ", residual " << fmt(rep.condition_S.residual) << "\n";
    }
    os << "  off-range mass: " << (std::isinf(rep.mu1_mass) ? "inf" : fmt(rep.mu1_mass)) << "\n";
    os << "  kanda-forst:    sup ratio " << fmt(rep.kf.sup_ratio) << " ("
       << (rep.kf.bounded_heuristic ? "bounded" : "unbounded") << " on the grid)\n";
    os << "  density flag:   " << (rep.density ? "yes" : "no") << "\n";
    for (const std::string& n : rep.notes) os << "  note: " << n << "\n";
    return os.str();
}

std::string kesten_to_json(const KestenResult& res) {
    json j;
    j["schema"] = "levyhunt/kesten/1";
    j["classification"] = to_string(res.classification);
    j["compound_poisson"] = res.is_compound_poisson;
    if (res.limit_estimate) j["limit_estimate"] = *res.limit_estimate;
    json parts = json::array();
    for (const auto& [z, v] : res.partial_integrals) parts.push_back({{"z", z}, {"value", v}});
    j["partial_integrals"] = parts;
    return j.dump(2);
}

std::string kesten_to_text(const KestenResult& res) {
    std::ostringstream os;
    os << "kesten point-hitting integral\n";
    os << "  classification: " << to_string(res.classification) << "\n";
    if (res.limit_estimate) os << "  limit estimate: " << fmt(*res.limit_estimate) << "\n";
    if (res.is_compound_poisson)
        os << "  caveat: compound Poisson input; the integral criterion does not apply\n";
    os << "  partial integrals:\n";
    for (const auto& [z, v] : res.partial_integrals)
        os << "    Z = " << fmt(z) << "  ->  " << fmt(v) << "\n";
    return os.str();
}

std::string hitting_to_json(const HittingEstimate& est, const SimConfig& cfg) {
    json j;
    j["schema"] = "levyhunt/hitting/1";
    j["p_hat"] = est.p_hat;
    j["ci95_halfwidth"] = est.ci95_halfwidth;
    j["n_hits"] = est.n_hits;
    j["n_paths"] = est.n_paths;
    j["tube_delta"] = est.tube_delta;
    j["seed"] = cfg.master_seed;
    return j.dump(2);
}

std::string hitting_to_text(const HittingEstimate& est) {
    std::ostringstream os;
    os << "hitting estimate\n";
    os << "  p_hat:  " << fmt(est.p_hat) << "  (" << est.n_hits << " of " << est.n_paths
       << " paths)\n";
    os << "  ci95:   +/- " << fmt(est.ci95_halfwidth) << "\n";
    os << "  tube:   " << fmt(est.tube_delta) << "\n";
    return os.str();
}

std::string simulate_summary_json(const PathEnsemble& ens) {
    json j;
    j["schema"] = "levyhunt/simulate/1";
    j["n"] = ens.dim();
    j["n_paths"] = ens.n_paths();
    j["grid_points"] = ens.times().size();
    j["t_max"] = ens.config().t_max;
    j["dt"] = ens.config().dt;
    j["seed"] = ens.config().master_seed;
    j["jump_rate"] = ens.jump_rate();
    j["neglected_small_jump_variance"] = ens.neglected_small_jump_variance();

    std::int64_t n_large = 0, n_small = 0, n_off = 0;
    for (std::int64_t p = 0; p < ens.n_paths(); ++p)
        for (const JumpRecord& r : ens.jumps(p)) {
            if (r.origin == JumpOrigin::Large) ++n_large;
            if (r.origin == JumpOrigin::Small) ++n_small;
            if (r.origin == JumpOrigin::OffRange) ++n_off;
        }
    j["jumps"] = {{"large", n_large}, {"small", n_small}, {"off_range", n_off}};

    // final-state sample mean
    Vec mean(static_cast<std::size_t>(ens.dim()), 0.0);
    const std::size_t last = ens.times().size() - 1;
    for (std::int64_t p = 0; p < ens.n_paths(); ++p) {
        const auto s = ens.state(p, last);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += s[i];
    }
    for (double& v : mean) v /= static_cast<double>(ens.n_paths());
    j["final_mean"] = mean;
    return j.dump(2);
}

std::string simulate_summary_text(const PathEnsemble& ens) {
    std::ostringstream os;
    os << "simulated " << ens.n_paths() << " path(s), t_max " << fmt(ens.config().t_max)
       << ", dt " << fmt(ens.config().dt) << ", seed " << ens.config().master_seed << "\n";
    os << "  jump rate: " << fmt(ens.jump_rate()) << "\n";
    if (ens.neglected_small_jump_variance() > 0.0)
        os << "  neglected small-jump variance: " << fmt(ens.neglected_small_jump_variance())
           << "\n";
    return os.str();
}

void write_path_dump(std::ostream& os, const PathEnsemble& ens) {
    os << "path_id,t";
    for (int i = 1; i <= ens.dim(); ++i) os << ",x_" << i;
    os << "\n";
    const std::size_t grid = ens.times().size();
    for (std::int64_t p = 0; p < ens.n_paths(); ++p) {
        const auto& jumps = ens.jumps(p);
        std::size_t ji = 0;
        for (std::size_t g = 0; g < grid; ++g) {
            const double tg = ens.times()[g];
            for (; ji < jumps.size() && jumps[ji].t < tg; ++ji) {
                os << p << "," << fmt(jumps[ji].t);
                for (double v : jumps[ji].state_after) os << "," << fmt(v);
                os << "\n";
            }
            os << p << "," << fmt(tg);
            for (double v : ens.state(p, g)) os << "," << fmt(v);
            os << "\n";
        }
        for (; ji < jumps.size(); ++ji) {
            os << p << "," << fmt(jumps[ji].t);
            for (double v : jumps[ji].state_after) os << "," << fmt(v);
            os << "\n";
        }
    }
}

void write_jump_log(std::ostream& os, const PathEnsemble& ens) {
    os << "path_id,t,origin";
    for (int i = 1; i <= ens.dim(); ++i) os << ",j_" << i;
    os << "\n";
    for (std::int64_t p = 0; p < ens.n_paths(); ++p)
        for (const JumpRecord& r : ens.jumps(p)) {
            os << p << "," << fmt(r.t) << "," << to_string(r.origin);
            for (double v : r.jump) os << "," << fmt(v);
            os << "\n";
        }
}

}  // namespace levyhunt
