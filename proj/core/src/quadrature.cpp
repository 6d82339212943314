#include "levyhunt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "levyhunt/errors.hpp"

namespace levyhunt {

namespace {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813,
};
constexpr double kKronrodWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529,
};
// Gauss weights attach to the even-index Kronrod nodes (0, 2, 4, 6).
constexpr double kGaussWeights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double k15 = kKronrodWeights[0] * f0;
    double g7 = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fi = f(mid + dx) + f(mid - dx);
        k15 += kKronrodWeights[i] * fi;
        if (i % 2 == 0) g7 += kGaussWeights[i / 2] * fi;
    }
    k15 *= half;
    g7 *= half;
    if (!std::isfinite(k15))
        throw EvalError("quadrature: non-finite integrand on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadControl& ctl) {
    QuadResult out;
    if (a == b) return out;

    std::priority_queue<Panel> heap;
    double value = 0.0, error = 0.0;
    int panels = 0;

    // seed with four panels so a deceptively symmetric integrand cannot
    // pass the error test on the whole interval
    const int seeds = 4;
    for (int i = 0; i < seeds; ++i) {
        Panel p = eval_panel(f, a + (b - a) * i / seeds, a + (b - a) * (i + 1) / seeds);
        value += p.value;
        error += p.error;
        heap.push(p);
        ++panels;
    }

    while (error > std::max(ctl.abs_tol, ctl.rel_tol * std::abs(value)) && panels < ctl.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable at double precision
            heap.push(Panel{worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    out.value = value;
    out.error = error;
    out.panels = panels;
    out.converged = error <= std::max(ctl.abs_tol, ctl.rel_tol * std::abs(value));
    return out;
}

double integrate_value(const std::function<double(double)>& f, double a, double b,
                       const QuadControl& ctl) {
    return integrate(f, a, b, ctl).value;
}

namespace detail {

namespace {

// Shared series for ∫_u^∞ {sin|cos}(t) t^(-beta) dt.  Each integration by
// parts swaps sin <-> cos, raises beta by one and multiplies by ±beta, so
// terms shrink like (beta + k)/u; caller guarantees u >= osc_split.
double osc_tail(double beta, double u, bool want_sin) {
    const double su = std::sin(u), cu = std::cos(u);
    double acc = 0.0;
    double mult = 1.0;
    double b = beta;
    bool is_sin = want_sin;
    for (int k = 0; k < 64; ++k) {
        const double up = std::pow(u, -b);
        const double boundary = is_sin ? cu * up : -su * up;
        acc += mult * boundary;
        const double next_mult = mult * (is_sin ? -b : b);
        const double next_mag = std::abs(next_mult) * std::pow(u, -(b + 1.0));
        if (next_mag < 1e-17 * (std::abs(acc) + 1e-300)) break;
        mult = next_mult;
        b += 1.0;
        is_sin = !is_sin;
    }
    return acc;
}

}  // namespace

double sin_tail(double beta, double u) { return osc_tail(beta, u, true); }
double cos_tail(double beta, double u) { return osc_tail(beta, u, false); }

double power_integral(double p, double a, double b) {
    const double q = 1.0 - p;
    if (std::isinf(b)) {
        if (p <= 1.0) throw IntegrabilityError("power_integral: divergent tail, p <= 1");
        return std::pow(a, q) / (p - 1.0);
    }
    if (std::abs(q) < 1e-8) {
        // expand around p = 1 to dodge cancellation
        const double la = std::log(a), lb = std::log(b);
        if (std::abs(q) < 1e-300) return lb - la;
        return (std::expm1(q * lb) - std::expm1(q * la)) / q;
    }
    return (std::pow(b, q) - std::pow(a, q)) / q;
}

}  // namespace detail

}  // namespace levyhunt
