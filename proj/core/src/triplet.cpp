#include "levyhunt/triplet.hpp"

#include <cmath>
#include <sstream>

#include "levyhunt/errors.hpp"
#include "levyhunt/rng.hpp"

namespace levyhunt {

namespace {

std::string format_z(std::span<const double> z) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z[i];
    os << "]";
    return os.str();
}

}  // namespace

LevyTriplet::LevyTriplet(Vec a, Mat A, LevyMeasure mu)
    : n_(static_cast<int>(a.size())), a_(std::move(a)), A_(std::move(A)), mu_(std::move(mu)) {
    if (n_ < 1) throw InvalidInput("a: dimension must be at least 1");
    if (!all_finite(a_)) throw InvalidInput("a: non-finite entry");
    if (A_.rows() != static_cast<std::size_t>(n_) || A_.cols() != static_cast<std::size_t>(n_))
        throw InvalidInput("A: expected " + std::to_string(n_) + "x" + std::to_string(n_));
    // symmetry and positive semidefiniteness (throws InvalidInput)
    decompose(A_);
    validate_measure(mu_, n_);
}

Vec LevyTriplet::drift() const {
    Vec b = scaled(a_, -1.0);
    for (double& v : b) v += 0.0;  // no negative zeros in reports
    return b;
}

std::complex<double> LevyTriplet::exponent(std::span<const double> z) const {
    if (static_cast<int>(z.size()) != n_) throw InvalidInput("exponent: z dimension mismatch");
    if (!all_finite(z)) throw EvalError("exponent: non-finite z " + format_z(z));

    // quadratic form is nonnegative for PSD A; clamp roundoff
    const double gauss = std::max(0.0, 0.5 * dot(z, A_.apply(z)));
    std::complex<double> psi(gauss, dot(a_, z));
    psi += jump_exponent(mu_, z);
    if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag()))
        throw EvalError("exponent: non-finite value at z = " + format_z(z));
    return psi;
}

double LevyTriplet::symmetrized_exponent(std::span<const double> z) const {
    return 2.0 * exponent(z).real();
}

PsiView LevyTriplet::psi() const {
    LevyTriplet copy = *this;
    return PsiView{n_, [copy = std::move(copy)](std::span<const double> z) {
                       return copy.exponent(z);
                   }};
}

ExponentOnly::ExponentOnly(int n, Fn psi) : n_(n), psi_(std::move(psi)) {
    if (n_ < 1) throw InvalidInput("ExponentOnly: dimension must be at least 1");
    if (!psi_) throw InvalidInput("ExponentOnly: empty exponent");

    const Vec zero(static_cast<std::size_t>(n_), 0.0);
    if (std::abs(psi_(zero)) > 1e-12) throw InvalidInput("ExponentOnly: psi(0) != 0");

    // sample a log-radial fan; any visibly negative real part is invalid input
    CounterRng rng(0x7073695f76616c64ull, static_cast<std::uint64_t>(n_));
    for (int i = 0; i < 64; ++i) {
        Vec z = rng.unit_vector(static_cast<std::size_t>(n_));
        const double r = std::pow(10.0, -2.0 + 6.0 * (i / 63.0));
        for (double& c : z) c *= r;
        const auto v = psi_(z);
        if (v.real() < -1e-12 * (1.0 + std::abs(v.imag())))
            throw InvalidInput("ExponentOnly: Re psi < 0 at z = " + format_z(z));
    }
}

ExponentOnly stable_exponent(int n, double alpha, double scale) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw InvalidInput("stable_exponent: alpha must lie in (0, 2]");
    if (!(scale > 0.0)) throw InvalidInput("stable_exponent: scale must be positive");
    return ExponentOnly(n, [alpha, scale](std::span<const double> z) {
        return std::complex<double>(std::pow(scale * norm(z), alpha), 0.0);
    });
}

OffRangeRestriction restrict_off_range(const LevyTriplet& t, const SpectralData& s,
                                       double membership_tol) {
    if (s.dim() != t.dim()) throw InvalidInput("restrict_off_range: spectral data mismatch");

    if (s.rank == s.dim()) return {NoJumps{}, 0.0};  // complement of the range is empty

    const LevyMeasure& mu = t.measure();
    if (std::holds_alternative<NoJumps>(mu)) return {NoJumps{}, 0.0};

    if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
        AtomicMeasure off;
        double mass = 0.0;
        for (const Atom& a : am->atoms) {
            if (!s.in_range(a.x, membership_tol)) {
                off.atoms.push_back(a);
                mass += a.mass;
            }
        }
        if (off.atoms.empty()) return {NoJumps{}, 0.0};
        return {std::move(off), mass};
    }

    const auto& rm = std::get<RadialPowerMeasure>(mu);
    RadialPowerMeasure off = rm;
    off.directions.clear();
    off.weights.clear();
    off.isotropic_default = false;
    for (std::size_t j = 0; j < rm.directions.size(); ++j) {
        if (!s.in_range(rm.directions[j], membership_tol)) {
            off.directions.push_back(rm.directions[j]);
            off.weights.push_back(rm.weights[j]);
        }
    }
    if (off.directions.empty()) return {NoJumps{}, 0.0};
    const double mass = total_mass(LevyMeasure(off));  // +inf: density non-integrable at 0
    return {std::move(off), mass};
}

Vec compensated_drift(const LevyTriplet& t, const LevyMeasure& mu1) {
    Vec b = t.drift();
    const Vec m = first_moment(mu1, 0.0, 1.0, t.dim());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= m[i];
    return b;
}

}  // namespace levyhunt
