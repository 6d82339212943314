// levyhunt: decide Hunt's hypothesis (H) for a Levy process given its
// characteristics, evaluate the supporting analytic quantities, and run
// Monte Carlo hitting experiments against the analytic verdict.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "levyhunt/errors.hpp"
#include "levyhunt/hunt.hpp"
#include "levyhunt/report_io.hpp"
#include "levyhunt/simulate.hpp"
#include "levyhunt/triplet_io.hpp"

namespace {

using namespace levyhunt;

struct CommonOpts {
    std::string input;
    std::string output;  // empty = stdout
    std::string format = "human";
};

struct SimOpts {
    std::int64_t paths = 1000;
    double t_max = 1.0;
    double dt = 0.01;
    double eps = 1e-3;
    std::optional<std::uint64_t> seed;
    std::string start;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--input", c.input, "process specification file (JSON)")->required();
    cmd->add_option("--output", c.output, "write the main result here instead of stdout");
    cmd->add_option("--format", c.format, "human | structured")
        ->check(CLI::IsMember({"human", "structured"}));
}

void add_sim(CLI::App* cmd, SimOpts& s) {
    cmd->add_option("--paths", s.paths, "number of Monte Carlo paths");
    cmd->add_option("--tmax", s.t_max, "time horizon");
    cmd->add_option("--dt", s.dt, "grid step");
    cmd->add_option("--eps", s.eps, "small-jump truncation radius (radial measures)");
    cmd->add_option("--seed", s.seed, "master seed (falls back to LEVYHUNT_SEED)");
    cmd->add_option("--start", s.start, "start point, comma separated");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& opt) {
    if (opt) return *opt;
    if (const char* env = std::getenv("LEVYHUNT_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

Vec parse_point(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("--start: expected comma-separated numbers");
        }
    }
    return v;
}

SimConfig make_sim_config(const SimOpts& s) {
    SimConfig cfg;
    cfg.n_paths = s.paths;
    cfg.t_max = s.t_max;
    cfg.dt = s.dt;
    cfg.small_jump_cut = s.eps;
    cfg.master_seed = resolve_seed(s.seed);
    if (!s.start.empty()) cfg.start = parse_point(s.start);
    return cfg;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw Error("cannot write '" + c.output + "'");
    out << text;
}

const LevyTriplet& require_triplet(const ProcessSpec& spec, const char* cmd) {
    if (const auto* t = std::get_if<LevyTriplet>(&spec)) return *t;
    throw CapabilityError(std::string(cmd) + ": requires a full triplet, got an exponent-only spec");
}

PsiView spec_psi(const ProcessSpec& spec) {
    if (const auto* t = std::get_if<LevyTriplet>(&spec)) return t->psi();
    return std::get<StableSpec>(spec).make().psi();
}

HitTarget parse_target(const std::string& text) {
    std::string body = text;
    if (!text.empty() && text.front() != '{') {
        std::ifstream in(text);
        if (!in) throw ParseError("cannot open target file '" + text + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("target: ") + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "point") {
        PointTarget p;
        p.x = j.at("x").get<Vec>();
        return p;
    }
    if (type == "subspace") {
        AffineSubspace s;
        s.point = j.at("point").get<Vec>();
        for (const auto& b : j.at("basis")) s.basis.push_back(b.get<Vec>());
        return s;
    }
    throw ParseError("target: 'type' must be 'point' or 'subspace'");
}

int run_check(const CommonOpts& c, const CheckConfig& cfg) {
    const ProcessSpec spec = load_process_spec(c.input);
    const LevyTriplet& t = require_triplet(spec, "check");
    const HuntReport rep = decide_H(t, cfg);
    emit(c, c.format == "structured" ? report_to_json(rep) : report_to_text(rep));
    switch (rep.verdict) {
        case Verdict::Holds: return 0;
        case Verdict::Fails: return 10;
        case Verdict::Inconclusive: return 20;
    }
    return 1;
}

int run_kesten(const CommonOpts& c, const KestenSpec& ks) {
    const ProcessSpec spec = load_process_spec(c.input);
    KestenResult res;
    if (const auto* t = std::get_if<LevyTriplet>(&spec))
        res = kesten(*t, ks);
    else
        res = kesten(spec_psi(spec), ks);
    emit(c, c.format == "structured" ? kesten_to_json(res) : kesten_to_text(res));
    return 0;
}

int run_exponent(const CommonOpts& c, const std::string& zgrid_path) {
    const ProcessSpec spec = load_process_spec(c.input);
    const PsiView psi = spec_psi(spec);

    std::ifstream in(zgrid_path);
    if (!in) throw ParseError("cannot open z-grid file '" + zgrid_path + "'");
    std::ostringstream out;
    nlohmann::json rows = nlohmann::json::array();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        Vec z;
        double v;
        while (ss >> v) z.push_back(v);
        if (static_cast<int>(z.size()) != psi.n)
            throw ParseError(zgrid_path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(psi.n) + " numbers");
        const auto val = psi.eval(z);
        if (c.format == "structured") {
            rows.push_back({{"z", z}, {"re", val.real()}, {"im", val.imag()}});
        } else {
            for (double comp : z) out << comp << " ";
            out << val.real() << " " << val.imag() << "\n";
        }
    }
    if (c.format == "structured") {
        nlohmann::json j;
        j["schema"] = "levyhunt/exponent/1";
        j["values"] = rows;
        emit(c, j.dump(2));
    } else {
        emit(c, out.str());
    }
    return 0;
}

int run_simulate(const CommonOpts& c, const SimOpts& so, const std::string& jump_log_path) {
    const ProcessSpec spec = load_process_spec(c.input);
    const LevyTriplet& t = require_triplet(spec, "simulate");
    const PathEnsemble ens = sample_paths(t, make_sim_config(so));

    std::cout << (c.format == "structured" ? simulate_summary_json(ens)
                                           : simulate_summary_text(ens))
              << "\n";
    if (!c.output.empty()) {
        std::ofstream out(c.output);
        if (!out) throw Error("cannot write '" + c.output + "'");
        write_path_dump(out, ens);
    }
    if (!jump_log_path.empty()) {
        std::ofstream out(jump_log_path);
        if (!out) throw Error("cannot write '" + jump_log_path + "'");
        write_jump_log(out, ens);
    }
    return 0;
}

int run_hit(const CommonOpts& c, const SimOpts& so, const std::string& target_text,
            double tube_delta) {
    const ProcessSpec spec = load_process_spec(c.input);
    const LevyTriplet& t = require_triplet(spec, "hit");
    const SimConfig cfg = make_sim_config(so);
    const PathEnsemble ens = sample_paths(t, cfg);
    const HittingEstimate est = estimate_hitting(ens, parse_target(target_text), tube_delta);
    emit(c, c.format == "structured" ? hitting_to_json(est, cfg) : hitting_to_text(est));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hunt hypothesis checks and path experiments for Levy processes"};
    app.require_subcommand(1);

    CommonOpts check_c, kesten_c, exp_c, sim_c, hit_c;
    CheckConfig check_cfg;
    int grid_decades = 4;
    KestenSpec kesten_spec;
    std::string zgrid_path, jump_log_path, target_text;
    double tube_delta = 0.0;
    SimOpts sim_so, hit_so;

    CLI::App* check = app.add_subcommand("check", "decide the hypothesis for a triplet");
    add_common(check, check_c);
    check->add_option("--rank-tol", check_cfg.spectral.rank_tol_rel,
                      "relative eigenvalue threshold for the rank");
    check->add_option("--solve-tol", check_cfg.solve_tol, "solvability tolerance for sqrtA y = b'");
    check->add_option("--grid-decades", grid_decades,
                      "largest Kanda-Forst grid radius, as a power of ten");

    CLI::App* kes = app.add_subcommand("kesten", "point-hitting integral (one dimension)");
    add_common(kes, kesten_c);
    kes->add_option("--z0", kesten_spec.z0, "first integration limit");
    kes->add_option("--doublings", kesten_spec.doublings, "number of doubled limits");

    CLI::App* expc = app.add_subcommand("exponent", "evaluate the exponent on a z grid");
    add_common(expc, exp_c);
    expc->add_option("--z-grid", zgrid_path, "file with one z per line")->required();

    CLI::App* sim = app.add_subcommand("simulate", "sample paths and dump them");
    sim->add_option("--input", sim_c.input, "process specification file (JSON)")->required();
    sim->add_option("--output", sim_c.output, "write the path dump (CSV) here");
    sim->add_option("--format", sim_c.format, "summary format: human | structured")
        ->check(CLI::IsMember({"human", "structured"}));
    add_sim(sim, sim_so);
    sim->add_option("--jump-log", jump_log_path, "write the jump log here");

    CLI::App* hit = app.add_subcommand("hit", "estimate a hitting probability");
    add_common(hit, hit_c);
    add_sim(hit, hit_so);
    hit->add_option("--target", target_text, "target JSON (inline or a file path)")->required();
    hit->add_option("--tube-delta", tube_delta, "tube radius (0 = exact membership)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (check->parsed()) {
            check_cfg.kf.r_max = std::pow(10.0, grid_decades);
            return run_check(check_c, check_cfg);
        }
        if (kes->parsed()) return run_kesten(kesten_c, kesten_spec);
        if (expc->parsed()) return run_exponent(exp_c, zgrid_path);
        if (sim->parsed()) return run_simulate(sim_c, sim_so, jump_log_path);
        if (hit->parsed()) return run_hit(hit_c, hit_so, target_text, tube_delta);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
