#pragma once

#include <complex>
#include <functional>
#include <span>

#include "levyhunt/linalg.hpp"
#include "levyhunt/measure.hpp"
#include "levyhunt/spectral.hpp"

namespace levyhunt {

// Type-erased characteristic exponent; the common currency of the
// Kanda-Forst, Kesten and density-growth estimators.
struct PsiView {
    int n = 0;
    std::function<std::complex<double>(std::span<const double>)> eval;
};

// A Levy process given by its characteristics (a, A, mu):
//   psi(z) = i<a,z> + (1/2)<z,Az> + ∫ (1 - e^{i<z,x>} + i<z,x> 1_{|x|<1}) mu(dx)
// The constructor enforces: A symmetric within 1e-12 relative, A positive
// semidefinite within -1e-10 * spectral radius, mu valid in dimension n.
class LevyTriplet {
public:
    LevyTriplet(Vec a, Mat A, LevyMeasure mu);

    int dim() const { return n_; }
    const Vec& linear_coeff() const { return a_; }  // the vector a
    const Mat& covariance() const { return A_; }
    const LevyMeasure& measure() const { return mu_; }

    Vec drift() const;  // b = -a

    std::complex<double> exponent(std::span<const double> z) const;
    double symmetrized_exponent(std::span<const double> z) const;

    PsiView psi() const;

private:
    int n_ = 0;
    Vec a_;
    Mat A_;
    LevyMeasure mu_;
};

// A process known only through a closed-form exponent. Construction samples
// psi on a fixed grid and rejects psi(0) != 0 or negative real parts.
class ExponentOnly {
public:
    using Fn = std::function<std::complex<double>(std::span<const double>)>;

    ExponentOnly(int n, Fn psi);

    int dim() const { return n_; }
    std::complex<double> exponent(std::span<const double> z) const { return psi_(z); }
    PsiView psi() const { return PsiView{n_, psi_}; }

private:
    int n_ = 0;
    Fn psi_;
};

// psi(z) = (scale |z|)^alpha, the rotation-invariant stable family (alpha in (0,2])
ExponentOnly stable_exponent(int n, double alpha, double scale = 1.0);

struct OffRangeRestriction {
    LevyMeasure mu1;  // restriction of mu to the complement of range(sqrtA)
    double mass;      // total mass of mu1, may be +inf
};

OffRangeRestriction restrict_off_range(const LevyTriplet& t, const SpectralData& s,
                                       double membership_tol = 1e-9);

// b' = b - ∫_{|x|<1} x mu1(dx); exact for atomic mu1, closed form for radial
Vec compensated_drift(const LevyTriplet& t, const LevyMeasure& mu1);

}  // namespace levyhunt
