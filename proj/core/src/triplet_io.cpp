#include "levyhunt/triplet_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "levyhunt/errors.hpp"

namespace levyhunt {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

double number_at(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field '" + field + "'");
    const json& v = j.at(field);
    if (!v.is_number()) throw ParseError("field '" + field + "': expected a number");
    return v.get<double>();
}

Vec vec_at(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field '" + field + "'");
    const json& v = j.at(field);
    if (!v.is_array()) throw ParseError("field '" + field + "': expected an array");
    Vec out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ParseError("field '" + field + "[" + std::to_string(i) + "]': expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

Mat mat_at(const json& j, const std::string& field, std::size_t n) {
    if (!j.contains(field)) throw ParseError("missing field '" + field + "'");
    const json& v = j.at(field);
    if (!v.is_array() || v.size() != n)
        throw ParseError("field '" + field + "': expected " + std::to_string(n) + " rows");
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = v[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError("field '" + field + "[" + std::to_string(i) + "]': expected " +
                             std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) {
            if (!row[k].is_number())
                throw ParseError("field '" + field + "[" + std::to_string(i) +
                                 "]': expected numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    return m;
}

double cutoff_at(const json& j) {
    if (!j.contains("cutoff")) return kInf;
    const json& v = j.at("cutoff");
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw ParseError("field 'mu.cutoff': expected a number or \"inf\"");
    }
    if (!v.is_number()) throw ParseError("field 'mu.cutoff': expected a number or \"inf\"");
    return v.get<double>();
}

LevyMeasure measure_from_json(const json& j, int n) {
    if (!j.is_object() || !j.contains("type"))
        throw ParseError("field 'mu': expected an object with a 'type' tag");
    const std::string type = j.at("type").get<std::string>();
    if (type == "none") return NoJumps{};
    if (type == "atomic") {
        AtomicMeasure am;
        if (!j.contains("atoms") || !j.at("atoms").is_array())
            throw ParseError("field 'mu.atoms': expected an array");
        for (std::size_t i = 0; i < j.at("atoms").size(); ++i) {
            const json& aj = j.at("atoms")[i];
            Atom a;
            try {
                a.x = vec_at(aj, "x");
                a.mass = number_at(aj, "mass");
            } catch (const ParseError& e) {
                throw ParseError("mu.atoms[" + std::to_string(i) + "]: " + e.what());
            }
            am.atoms.push_back(std::move(a));
        }
        return am;
    }
    if (type == "radial_power") {
        const double alpha = number_at(j, "alpha");
        const double scale = j.contains("scale") ? number_at(j, "scale") : 1.0;
        const double cutoff = cutoff_at(j);
        if (j.contains("directions")) {
            const json& dj = j.at("directions");
            if (!dj.is_array()) throw ParseError("field 'mu.directions': expected an array");
            std::vector<Vec> dirs;
            for (std::size_t i = 0; i < dj.size(); ++i) {
                const json& di = dj[i];
                if (!di.is_array())
                    throw ParseError("field 'mu.directions[" + std::to_string(i) +
                                     "]': expected an array of numbers");
                Vec u;
                for (const auto& c : di) {
                    if (!c.is_number())
                        throw ParseError("field 'mu.directions[" + std::to_string(i) +
                                         "]': expected an array of numbers");
                    u.push_back(c.get<double>());
                }
                dirs.push_back(std::move(u));
            }
            Vec weights = vec_at(j, "weights");
            return RadialPowerMeasure::anisotropic(alpha, scale, cutoff, std::move(dirs),
                                                   std::move(weights));
        }
        const int count = j.contains("direction_count")
                              ? static_cast<int>(number_at(j, "direction_count"))
                              : 0;
        return RadialPowerMeasure::isotropic(n, alpha, scale, cutoff, count);
    }
    throw ParseError("field 'mu.type': unknown variant '" + type + "'");
}

json measure_to_json(const LevyMeasure& mu) {
    json j;
    if (std::holds_alternative<NoJumps>(mu)) {
        j["type"] = "none";
        return j;
    }
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        j["type"] = "atomic";
        j["atoms"] = json::array();
        for (const Atom& a : am->atoms) j["atoms"].push_back({{"x", a.x}, {"mass", a.mass}});
        return j;
    }
    const auto& rm = std::get<RadialPowerMeasure>(mu);
    j["type"] = "radial_power";
    j["alpha"] = rm.alpha;
    j["scale"] = rm.scale;
    if (std::isinf(rm.cutoff))
        j["cutoff"] = "inf";
    else
        j["cutoff"] = rm.cutoff;
    if (rm.isotropic_default) {
        j["direction_count"] = rm.directions.size();
    } else {
        j["directions"] = rm.directions;
        j["weights"] = rm.weights;
    }
    return j;
}

}  // namespace

ProcessSpec parse_process_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("syntax: ") + e.what());
    }
    try {
        if (!j.is_object()) throw ParseError("top level: expected an object");
        const double nd = number_at(j, "n");
        const int n = static_cast<int>(nd);
        if (n < 1 || nd != n) throw ParseError("field 'n': expected a positive integer");

        if (j.contains("exponent")) {
            const json& e = j.at("exponent");
            const std::string type = e.contains("type") ? e.at("type").get<std::string>() : "";
            if (type != "stable")
                throw ParseError("field 'exponent.type': only 'stable' is supported");
            StableSpec s;
            s.n = n;
            s.alpha = number_at(e, "alpha");
            s.scale = e.contains("scale") ? number_at(e, "scale") : 1.0;
            s.make();  // validate now so errors surface at parse time
            return s;
        }

        Vec a = vec_at(j, "a");
        if (static_cast<int>(a.size()) != n)
            throw ParseError("field 'a': expected " + std::to_string(n) + " entries");
        Mat A = mat_at(j, "A", static_cast<std::size_t>(n));
        if (!j.contains("mu")) throw ParseError("missing field 'mu'");
        LevyMeasure mu = measure_from_json(j.at("mu"), n);
        return LevyTriplet(std::move(a), std::move(A), std::move(mu));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

ProcessSpec load_process_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_process_spec(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_triplet(const LevyTriplet& t) {
    json j;
    j["n"] = t.dim();
    j["a"] = t.linear_coeff();
    json rows = json::array();
    for (std::size_t i = 0; i < t.covariance().rows(); ++i) {
        const auto r = t.covariance().row(i);
        rows.push_back(Vec(r.begin(), r.end()));
    }
    j["A"] = rows;
    j["mu"] = measure_to_json(t.measure());
    return j.dump(2);
}

std::string serialize_process_spec(const ProcessSpec& spec) {
    if (const auto* t = std::get_if<LevyTriplet>(&spec)) return serialize_triplet(*t);
    const auto& s = std::get<StableSpec>(spec);
    json j;
    j["n"] = s.n;
    j["exponent"] = {{"type", "stable"}, {"alpha", s.alpha}, {"scale", s.scale}};
    return j.dump(2);
}

}  // namespace levyhunt
