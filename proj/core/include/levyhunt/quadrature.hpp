#pragma once

#include <functional>
#include <limits>

namespace levyhunt {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int panels = 0;
    bool converged = true;
};

struct QuadControl {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_panels = 30000;
};

// Adaptive Gauss(7)/Kronrod(15) on a finite interval, worst-panel-first refinement.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadControl& ctl = {});

double integrate_value(const std::function<double(double)>& f, double a, double b,
                       const QuadControl& ctl = {});

namespace detail {

// Asymptotic tails of oscillatory power integrals, valid for u >= osc_split:
//   sin_tail(beta, u)  =  ∫_u^∞ sin(t) t^(-beta) dt
//   cos_tail(beta, u)  =  ∫_u^∞ cos(t) t^(-beta) dt
// computed by repeated integration by parts (terms decay like (beta+k)/u).
inline constexpr double osc_split = 64.0;

double sin_tail(double beta, double u);
double cos_tail(double beta, double u);

// ∫_a^b t^(-p) dt with 0 < a < b (b may be +inf when p > 1); stable near p = 1
double power_integral(double p, double a, double b);

}  // namespace detail

}  // namespace levyhunt
