#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "levyhunt/linalg.hpp"
#include "levyhunt/quadrature.hpp"

namespace levyhunt {

struct Atom {
    Vec x;
    double mass = 0.0;
};

struct AtomicMeasure {
    std::vector<Atom> atoms;
};

// Jump measure with density scale * |x|^(-n-alpha) carried by a fixed set of
// rays, supported on 0 < |x| <= cutoff (cutoff may be +inf).  An isotropic
// measure is materialized at construction as an antipodally symmetric
// direction set whose weights sum to the surface area of S^(n-1); all
// integrals, masses and path sampling then agree on the same discrete-ray
// measure.
struct RadialPowerMeasure {
    double alpha = 0.5;   // stability index, in (0, 2)
    double scale = 1.0;
    double cutoff = 1.0;
    std::vector<Vec> directions;  // unit vectors
    Vec weights;                  // positive, same length as directions
    bool isotropic_default = false;

    static RadialPowerMeasure isotropic(int n, double alpha, double scale, double cutoff,
                                        int direction_count = 0);
    static RadialPowerMeasure anisotropic(double alpha, double scale, double cutoff,
                                          std::vector<Vec> directions, Vec weights);

    int dim() const { return directions.empty() ? 0 : static_cast<int>(directions[0].size()); }
    double weight_sum() const;
};

struct NoJumps {};

using LevyMeasure = std::variant<NoJumps, AtomicMeasure, RadialPowerMeasure>;

// canonical symmetric direction set; weights sum to |S^(n-1)|
std::vector<Vec> canonical_directions(int n, int count);
double sphere_surface(int n);
int default_direction_count(int n);

// throws InvalidInput naming the offending field
void validate_measure(const LevyMeasure& mu, int n);

bool measure_is_zero(const LevyMeasure& mu);

// mu({ |x| >= r }), r > 0; +inf only for r = 0 on radial measures
double tail_mass(const LevyMeasure& mu, double r);

// total mass, +inf for any nonzero radial-power measure
double total_mass(const LevyMeasure& mu);

// ∫_{|x| < r} |x|^2 mu(dx)
double second_moment_below(const LevyMeasure& mu, double r);

// ∫_{r0 <= |x| < r1} x mu(dx); throws IntegrabilityError when divergent
Vec first_moment(const LevyMeasure& mu, double r0, double r1, int n);

// ∫ (1 - e^{i<z,x>} + i<z,x> 1_{|x|<1}) mu(dx)
std::complex<double> jump_exponent(const LevyMeasure& mu, std::span<const double> z,
                                   const QuadControl& ctl = {});

namespace detail {
// ∫_0^cutoff (1 - cos(s r)) r^(-1-alpha) dr, s >= 0
double radial_re(double alpha, double cutoff, double s, const QuadControl& ctl);
// ∫_0^min(1,cutoff) (s r - sin(s r)) r^(-1-alpha) dr
//   - [cutoff > 1] ∫_1^cutoff sin(s r) r^(-1-alpha) dr,  s >= 0
double radial_im(double alpha, double cutoff, double s, const QuadControl& ctl);
}  // namespace detail

}  // namespace levyhunt
