#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "levyhunt/linalg.hpp"

namespace levyhunt {

// Philox-style 4x32 counter-based generator. Each (seed, stream) pair
// addresses an independent sequence; draws are a pure function of
// (seed, stream, counter), so parallel path generation cannot perturb them.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32)),
          s0_(static_cast<std::uint32_t>(stream)),
          s1_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        return buf_[--have_];
    }

    // uniform on [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal, Box-Muller (non-rejecting: fixed draw count)
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        cached_normal_ = r * std::sin(th);
        have_normal_ = true;
        return r * std::cos(th);
    }

    // Exp(rate)
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    void normal_vec(Vec& out) {
        for (double& v : out) v = normal();
    }

    // uniform direction on the unit sphere
    Vec unit_vector(std::size_t n) {
        Vec v(n);
        double nrm = 0.0;
        do {
            normal_vec(v);
            nrm = norm(v);
        } while (nrm < 1e-12);
        for (double& x : v) x /= nrm;
        return v;
    }

private:
    static std::uint64_t mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        return p >> 32;
    }

    void refill() {
        std::uint32_t x0 = static_cast<std::uint32_t>(ctr_);
        std::uint32_t x1 = static_cast<std::uint32_t>(ctr_ >> 32);
        std::uint32_t x2 = s0_;
        std::uint32_t x3 = s1_;
        std::uint32_t k0 = k0_, k1 = k1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, lo1;
            const auto hi0 = static_cast<std::uint32_t>(mulhilo(0xD2511F53u, x0, lo0));
            const auto hi1 = static_cast<std::uint32_t>(mulhilo(0xCD9E8D57u, x2, lo1));
            const std::uint32_t y0 = hi1 ^ x1 ^ k0;
            const std::uint32_t y1 = lo1;
            const std::uint32_t y2 = hi0 ^ x3 ^ k1;
            const std::uint32_t y3 = lo0;
            x0 = y0; x1 = y1; x2 = y2; x3 = y3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = (static_cast<std::uint64_t>(x1) << 32) | x0;
        buf_[1] = (static_cast<std::uint64_t>(x3) << 32) | x2;
        have_ = 2;
        ++ctr_;
    }

    std::uint32_t k0_, k1_;   // key: master seed
    std::uint32_t s0_, s1_;   // stream (path index)
    std::uint64_t ctr_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int have_ = 0;
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace levyhunt
