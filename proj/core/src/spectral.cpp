#include "levyhunt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levyhunt/errors.hpp"
#include "levyhunt/triplet.hpp"

namespace levyhunt {

namespace {

void check_symmetric(const Mat& A) {
    if (A.rows() != A.cols()) throw InvalidInput("A: must be square");
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = i + 1; j < A.cols(); ++j)
            if (std::abs(A(i, j) - A(j, i)) > 1e-12 * (1.0 + std::abs(A(i, j))))
                throw InvalidInput("A: not symmetric at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
    for (double v : A.data())
        if (!std::isfinite(v)) throw InvalidInput("A: non-finite entry");
}

double offdiag_norm(const Mat& B) {
    double s = 0.0;
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = i + 1; j < B.cols(); ++j) s += 2.0 * B(i, j) * B(i, j);
    return std::sqrt(s);
}

}  // namespace

Vec SpectralData::project_range(std::span<const double> x) const {
    Vec p(x.size(), 0.0);
    for (int i = 0; i < rank; ++i) {
        const double c = dot(O.row(i), x);
        axpy(c, O.row(i), p);
    }
    return p;
}

double SpectralData::range_distance(std::span<const double> x) const {
    const Vec p = project_range(x);
    return norm(sub(x, p));
}

bool SpectralData::in_range(std::span<const double> x, double tol) const {
    return range_distance(x) <= tol * (1.0 + norm(x));
}

SpectralData decompose(const Mat& A, const DecomposeOptions& opt) {
    check_symmetric(A);
    const std::size_t n = A.rows();

    Mat B = A;
    // symmetrize exactly so the rotations preserve symmetry bit-for-bit
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (B(i, j) + B(j, i));
            B(i, j) = B(j, i) = v;
        }
    Mat V = Mat::identity(n);  // columns accumulate eigenvectors

    double fro = 0.0;
    for (double v : B.data()) fro += v * v;
    fro = std::sqrt(fro);
    const double target = std::max(opt.offdiag_tol_rel * fro, 1e-300);

    int sweep = 0;
    for (; sweep < opt.max_sweeps; ++sweep) {
        if (offdiag_norm(B) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = B(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (B(q, q) - B(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double bip = B(i, p), biq = B(i, q);
                    B(i, p) = c * bip - s * biq;
                    B(i, q) = s * bip + c * biq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double bpi = B(p, i), bqi = B(q, i);
                    B(p, i) = c * bpi - s * bqi;
                    B(q, i) = s * bpi + c * bqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = V(i, p), viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
    }
    if (offdiag_norm(B) > target && fro > 0.0)
        throw Error("decompose: Jacobi sweep limit reached after " + std::to_string(sweep) +
                    " sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return B(i, i) > B(j, j); });

    SpectralData sd;
    sd.D.resize(n);
    sd.O = Mat(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        sd.D[r] = B(order[r], order[r]);
        for (std::size_t i = 0; i < n; ++i) sd.O(r, i) = V(i, order[r]);
    }

    const double spec_radius = n ? std::max(std::abs(sd.D.front()), std::abs(sd.D.back())) : 0.0;
    for (double& lam : sd.D) {
        if (lam < -1e-10 * spec_radius)
            throw InvalidInput("A: not positive semidefinite (eigenvalue " + std::to_string(lam) +
                               ")");
        lam = std::max(lam, 0.0);
    }

    sd.rank_tol = opt.rank_tol_rel * (n ? sd.D.front() : 0.0);
    sd.rank = 0;
    for (double lam : sd.D)
        if (lam > sd.rank_tol) ++sd.rank;

    sd.sqrtA = Mat(n, n);
    for (int r = 0; r < sd.rank; ++r) {
        const double sl = std::sqrt(sd.D[static_cast<std::size_t>(r)]);
        const auto v = sd.O.row(static_cast<std::size_t>(r));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sd.sqrtA(i, j) += sl * v[i] * v[j];
    }
    return sd;
}

SolveResult solve_condition_S(const SpectralData& s, std::span<const double> bprime,
                              double solve_tol) {
    if (static_cast<int>(bprime.size()) != s.dim())
        throw InvalidInput("solve_condition_S: dimension mismatch");
    for (double v : bprime)
        if (!std::isfinite(v)) throw InvalidInput("solve_condition_S: non-finite b'");

    const std::size_t n = bprime.size();
    Vec y(n, 0.0);
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = dot(s.O.row(i), bprime);
        if (static_cast<int>(i) < s.rank)
            axpy(c / std::sqrt(s.D[i]), s.O.row(i), y);
        else
            off2 += c * c;
    }

    SolveResult r;
    r.residual = norm(sub(bprime, s.sqrtA.apply(y)));
    r.solvable = std::sqrt(off2) <= solve_tol * (1.0 + norm(bprime));
    if (r.solvable) r.y = std::move(y);
    return r;
}

LevyTriplet rotate_triplet(const LevyTriplet& t, const Mat& Q) {
    const std::size_t n = static_cast<std::size_t>(t.dim());
    if (Q.rows() != n || Q.cols() != n) throw InvalidInput("rotate_triplet: Q shape mismatch");
    const Mat I = Q * Q.transposed();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(I(i, j) - (i == j ? 1.0 : 0.0)) > 1e-9)
                throw InvalidInput("rotate_triplet: Q is not orthogonal");

    Vec a2 = Q.apply(t.linear_coeff());
    Mat A2 = Q * t.covariance() * Q.transposed();
    // rotation preserves symmetry up to roundoff; restore it exactly
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (A2(i, j) + A2(j, i));
            A2(i, j) = A2(j, i) = v;
        }

    LevyMeasure mu2 = t.measure();
    if (auto* am = std::get_if<AtomicMeasure>(&mu2)) {
        for (Atom& atom : am->atoms) {
            const double before = norm(atom.x);
            atom.x = Q.apply(atom.x);
            // restore the isometry exactly; the |x| < 1 compensation
            // indicator must not drift across the boundary under rotation
            const double after = norm(atom.x);
            if (after > 0.0 && after != before)
                for (double& c : atom.x) c *= before / after;
        }
    } else if (auto* rm = std::get_if<RadialPowerMeasure>(&mu2)) {
        for (Vec& u : rm->directions) {
            u = Q.apply(u);
            const double nrm = norm(u);
            if (nrm > 0.0) for (double& c : u) c /= nrm;
        }
    }
    return LevyTriplet(std::move(a2), std::move(A2), std::move(mu2));
}

LevyTriplet transform_triplet(const LevyTriplet& t, const SpectralData& s) {
    LevyTriplet y = rotate_triplet(t, s.O);
    // force the covariance exactly diagonal with the known eigenvalues
    const std::size_t n = static_cast<std::size_t>(t.dim());
    Mat D(n, n);
    for (std::size_t i = 0; i < n; ++i) D(i, i) = s.D[i];
    return LevyTriplet(y.linear_coeff(), std::move(D), y.measure());
}

}  // namespace levyhunt
