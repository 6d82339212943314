#pragma once

#include <cmath>
#include <numbers>

#include "levyhunt/rng.hpp"
#include "levyhunt/triplet.hpp"

namespace levyhunt::testing {

inline Mat diag_mat(const Vec& d) { return Mat::diag(d); }

inline Mat mat2(double a11, double a12, double a21, double a22) {
    Mat m(2, 2);
    m(0, 0) = a11;
    m(0, 1) = a12;
    m(1, 0) = a21;
    m(1, 1) = a22;
    return m;
}

// G^T G (+ shift I), always symmetric PSD
inline Mat random_psd(CounterRng& rng, std::size_t n, double shift = 0.0) {
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
    Mat a = g.transposed() * g;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += shift;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    return a;
}

// sum of `rank` random outer products
inline Mat random_psd_rank(CounterRng& rng, std::size_t n, int rank) {
    Mat a(n, n);
    for (int r = 0; r < rank; ++r) {
        Vec v(n);
        rng.normal_vec(v);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) += v[i] * v[j];
    }
    return a;
}

// product of random Givens rotations
inline Mat random_orthogonal(CounterRng& rng, std::size_t n) {
    Mat q = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double th = 2.0 * std::numbers::pi * rng.uniform();
            const double c = std::cos(th), s = std::sin(th);
            for (std::size_t k = 0; k < n; ++k) {
                const double qi = q(i, k), qj = q(j, k);
                q(i, k) = c * qi - s * qj;
                q(j, k) = s * qi + c * qj;
            }
        }
    return q;
}

inline Vec random_vec(CounterRng& rng, std::size_t n, double scale = 1.0) {
    Vec v(n);
    rng.normal_vec(v);
    for (double& x : v) x *= scale;
    return v;
}

}  // namespace levyhunt::testing
