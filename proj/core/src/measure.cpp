#include "levyhunt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levyhunt/errors.hpp"
#include "levyhunt/rng.hpp"

namespace levyhunt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec normalized_or_throw(const Vec& u, const char* what) {
    const double nrm = norm(u);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw InvalidInput(std::string(what) + ": direction must be a nonzero finite vector");
    Vec v = u;
    for (double& c : v) c /= nrm;
    return v;
}

}  // namespace

double sphere_surface(int n) {
    // 2 pi^(n/2) / Gamma(n/2)
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

int default_direction_count(int n) { return n == 1 ? 2 : 8 * n * n; }

std::vector<Vec> canonical_directions(int n, int count) {
    std::vector<Vec> dirs;
    if (n == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    if (count <= 0) count = default_direction_count(n);
    if (count % 2 != 0) ++count;
    dirs.reserve(count);
    if (n == 2) {
        for (int j = 0; j < count; ++j) {
            const double th = 2.0 * std::numbers::pi * j / count;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    // n >= 3: seeded quasi-uniform half set plus antipodes
    CounterRng rng(0x6c65767964697273ull, static_cast<std::uint64_t>(n));
    for (int j = 0; j < count / 2; ++j) {
        Vec u = rng.unit_vector(static_cast<std::size_t>(n));
        dirs.push_back(u);
        for (double& c : u) c = -c;
        dirs.push_back(std::move(u));
    }
    return dirs;
}

RadialPowerMeasure RadialPowerMeasure::isotropic(int n, double alpha, double scale, double cutoff,
                                                 int direction_count) {
    RadialPowerMeasure m;
    m.alpha = alpha;
    m.scale = scale;
    m.cutoff = cutoff;
    m.directions = canonical_directions(n, direction_count);
    m.weights.assign(m.directions.size(), sphere_surface(n) / static_cast<double>(m.directions.size()));
    m.isotropic_default = true;
    return m;
}

RadialPowerMeasure RadialPowerMeasure::anisotropic(double alpha, double scale, double cutoff,
                                                   std::vector<Vec> directions, Vec weights) {
    RadialPowerMeasure m;
    m.alpha = alpha;
    m.scale = scale;
    m.cutoff = cutoff;
    for (auto& u : directions) u = normalized_or_throw(u, "RadialPowerMeasure");
    m.directions = std::move(directions);
    m.weights = std::move(weights);
    m.isotropic_default = false;
    return m;
}

double RadialPowerMeasure::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

void validate_measure(const LevyMeasure& mu, int n) {
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        for (std::size_t i = 0; i < am->atoms.size(); ++i) {
            const Atom& a = am->atoms[i];
            const std::string where = "mu.atoms[" + std::to_string(i) + "]";
            if (static_cast<int>(a.x.size()) != n)
                throw InvalidInput(where + ".x: expected length " + std::to_string(n));
            if (!all_finite(a.x)) throw InvalidInput(where + ".x: non-finite entry");
            if (!(a.mass > 0.0) || !std::isfinite(a.mass))
                throw InvalidInput(where + ".mass: must be positive and finite");
            if (norm(a.x) == 0.0) throw InvalidInput(where + ".x: atom at the origin");
        }
        return;
    }
    if (const auto* rm = std::get_if<RadialPowerMeasure>(&mu)) {
        if (!(rm->alpha > 0.0) || !(rm->alpha < 2.0))
            throw InvalidInput("mu.alpha: must lie in (0, 2)");
        if (!(rm->scale > 0.0) || !std::isfinite(rm->scale))
            throw InvalidInput("mu.scale: must be positive and finite");
        if (!(rm->cutoff > 0.0)) throw InvalidInput("mu.cutoff: must be positive");
        if (rm->directions.empty()) throw InvalidInput("mu.directions: empty");
        if (rm->weights.size() != rm->directions.size())
            throw InvalidInput("mu.weights: length differs from directions");
        for (std::size_t j = 0; j < rm->directions.size(); ++j) {
            if (static_cast<int>(rm->directions[j].size()) != n)
                throw InvalidInput("mu.directions[" + std::to_string(j) + "]: expected length " +
                                   std::to_string(n));
            if (std::abs(norm(rm->directions[j]) - 1.0) > 1e-9)
                throw InvalidInput("mu.directions[" + std::to_string(j) + "]: not a unit vector");
            if (!(rm->weights[j] > 0.0) || !std::isfinite(rm->weights[j]))
                throw InvalidInput("mu.weights[" + std::to_string(j) + "]: must be positive");
        }
        return;
    }
}

bool measure_is_zero(const LevyMeasure& mu) {
    if (std::holds_alternative<NoJumps>(mu)) return true;
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) return am->atoms.empty();
    return false;
}

double tail_mass(const LevyMeasure& mu, double r) {
    if (std::holds_alternative<NoJumps>(mu)) return 0.0;
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        double m = 0.0;
        for (const Atom& a : am->atoms)
            if (norm(a.x) >= r) m += a.mass;
        return m;
    }
    const auto& rm = std::get<RadialPowerMeasure>(mu);
    if (r >= rm.cutoff) return 0.0;
    if (r <= 0.0) return kInf;
    const double upper = std::isinf(rm.cutoff) ? 0.0 : std::pow(rm.cutoff, -rm.alpha);
    return rm.scale * rm.weight_sum() * (std::pow(r, -rm.alpha) - upper) / rm.alpha;
}

double total_mass(const LevyMeasure& mu) {
    if (std::holds_alternative<RadialPowerMeasure>(mu)) return kInf;
    return tail_mass(mu, 0.0);
}

double second_moment_below(const LevyMeasure& mu, double r) {
    if (std::holds_alternative<NoJumps>(mu)) return 0.0;
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        double m = 0.0;
        for (const Atom& a : am->atoms) {
            const double nx = norm(a.x);
            if (nx < r) m += a.mass * nx * nx;
        }
        return m;
    }
    const auto& rm = std::get<RadialPowerMeasure>(mu);
    const double top = std::min(r, rm.cutoff);
    if (top <= 0.0) return 0.0;
    return rm.scale * rm.weight_sum() * std::pow(top, 2.0 - rm.alpha) / (2.0 - rm.alpha);
}

Vec first_moment(const LevyMeasure& mu, double r0, double r1, int n) {
    Vec m(static_cast<std::size_t>(n), 0.0);
    if (std::holds_alternative<NoJumps>(mu)) return m;
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        for (const Atom& a : am->atoms) {
            const double nx = norm(a.x);
            if (nx >= r0 && nx < r1) axpy(a.mass, a.x, m);
        }
        return m;
    }
    const auto& rm = std::get<RadialPowerMeasure>(mu);
    const double lo = std::max(r0, 0.0);
    const double hi = std::min(r1, rm.cutoff);
    if (hi <= lo) return m;
    if (lo <= 0.0 && rm.alpha >= 1.0)
        throw IntegrabilityError("first_moment: ∫ |x| mu(dx) diverges near 0 (alpha >= 1)");
    // ∫_lo^hi r^(1) r^(-1-alpha) dr = ∫ r^(-alpha) dr
    const double radial = lo > 0.0 ? detail::power_integral(rm.alpha, lo, hi)
                                   : std::pow(hi, 1.0 - rm.alpha) / (1.0 - rm.alpha);
    for (std::size_t j = 0; j < rm.directions.size(); ++j)
        axpy(rm.scale * rm.weights[j] * radial, rm.directions[j], m);
    return m;
}

namespace detail {

namespace {

// The integrands behave like r^(1-alpha) (resp. r^(2-alpha)) at 0, which
// starves the Kronrod error estimate for alpha near 2.  The corner up to
// s r <= 1/2 is summed from the alternating Taylor series instead.
//   ∫_0^c (1 - cos(s r)) r^(-1-a) dr = sum_k (-1)^(k+1) s^(2k) c^(2k-a) / ((2k)! (2k-a))
double corner_re(double alpha, double s, double c) {
    double acc = 0.0, fact = 1.0, sign = 1.0;
    for (int k = 1; k <= 30; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        const double term =
            sign * std::pow(s, 2.0 * k) * std::pow(c, 2.0 * k - alpha) / (fact * (2.0 * k - alpha));
        acc += term;
        if (std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300)) break;
        sign = -sign;
    }
    return acc;
}

//   ∫_0^c (s r - sin(s r)) r^(-1-a) dr
double corner_im(double alpha, double s, double c) {
    double acc = 0.0, fact = 1.0, sign = 1.0;
    for (int k = 1; k <= 30; ++k) {
        fact *= (2.0 * k) * (2.0 * k + 1.0);
        const double term = sign * std::pow(s, 2.0 * k + 1.0) * std::pow(c, 2.0 * k + 1.0 - alpha) /
                            (fact * (2.0 * k + 1.0 - alpha));
        acc += term;
        if (std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300)) break;
        sign = -sign;
    }
    return acc;
}

}  // namespace

double radial_re(double alpha, double cutoff, double s, const QuadControl& ctl) {
    if (s <= 0.0) return 0.0;
    const double beta = 1.0 + alpha;
    auto f = [&](double r) { return (1.0 - std::cos(s * r)) * std::pow(r, -beta); };
    const double rsplit = osc_split / s;
    const double end1 = std::min(cutoff, rsplit);
    const double c = std::min(0.5 / s, end1);
    double v = corner_re(alpha, s, c);
    if (end1 > c) v += integrate(f, c, end1, ctl).value;
    if (cutoff > rsplit) {
        v += power_integral(beta, rsplit, cutoff);
        const double hi_tail = std::isinf(cutoff) ? 0.0 : cos_tail(beta, s * cutoff);
        v -= std::pow(s, alpha) * (cos_tail(beta, osc_split) - hi_tail);
    }
    return v;
}

double radial_im(double alpha, double cutoff, double s, const QuadControl& ctl) {
    if (s <= 0.0) return 0.0;
    const double beta = 1.0 + alpha;
    const double m = std::min(1.0, cutoff);
    const double rsplit = osc_split / s;

    // compensated piece on (0, m)
    auto f_comp = [&](double r) { return (s * r - std::sin(s * r)) * std::pow(r, -beta); };
    const double end1 = std::min(m, rsplit);
    const double c = std::min(0.5 / s, end1);
    double v = corner_im(alpha, s, c);
    if (end1 > c) v += integrate(f_comp, c, end1, ctl).value;
    if (m > rsplit) {
        v += s * power_integral(alpha, rsplit, m);
        v -= std::pow(s, alpha) * (sin_tail(beta, osc_split) - sin_tail(beta, s * m));
    }

    // uncompensated piece on (1, cutoff)
    if (cutoff > 1.0) {
        auto f_sin = [&](double r) { return std::sin(s * r) * std::pow(r, -beta); };
        if (cutoff <= rsplit) {
            v -= integrate(f_sin, 1.0, cutoff, ctl).value;
        } else {
            const double lo = std::max(1.0, rsplit);
            if (lo > 1.0) v -= integrate(f_sin, 1.0, lo, ctl).value;
            const double hi_tail = std::isinf(cutoff) ? 0.0 : sin_tail(beta, s * cutoff);
            v -= std::pow(s, alpha) * (sin_tail(beta, s * lo) - hi_tail);
        }
    }
    return v;
}

}  // namespace detail

std::complex<double> jump_exponent(const LevyMeasure& mu, std::span<const double> z,
                                   const QuadControl& ctl) {
    if (std::holds_alternative<NoJumps>(mu)) return {0.0, 0.0};
    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        double re = 0.0, im = 0.0;
        for (const Atom& a : am->atoms) {
            const double th = dot(z, a.x);
            re += a.mass * (1.0 - std::cos(th));
            im += a.mass * (-std::sin(th) + (norm(a.x) < 1.0 ? th : 0.0));
        }
        return {re, im};
    }
    const auto& rm = std::get<RadialPowerMeasure>(mu);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < rm.directions.size(); ++j) {
        const double s = dot(z, rm.directions[j]);
        if (s == 0.0) continue;
        const double w = rm.scale * rm.weights[j];
        re += w * detail::radial_re(rm.alpha, rm.cutoff, std::abs(s), ctl);
        const double im_abs = detail::radial_im(rm.alpha, rm.cutoff, std::abs(s), ctl);
        im += w * (s > 0.0 ? im_abs : -im_abs);
    }
    return {re, im};
}

}  // namespace levyhunt
