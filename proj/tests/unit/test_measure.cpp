#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyhunt/errors.hpp"
#include "levyhunt/measure.hpp"

using namespace levyhunt;

TEST_CASE("canonical direction sets are symmetric with surface weights") {
    for (int n : {1, 2, 3, 5}) {
        const auto dirs = canonical_directions(n, 0);
        CHECK(dirs.size() % 2 == 0);
        Vec sum(static_cast<std::size_t>(n), 0.0);
        for (const Vec& u : dirs) {
            CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
            axpy(1.0, u, sum);
        }
        CHECK(norm(sum) < 1e-10);  // antipodal pairing
    }
    CHECK(sphere_surface(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sphere_surface(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(sphere_surface(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("radial masses and moments, closed forms") {
    // n=1, alpha=1/2, scale 1, cutoff 1: mu(|x|>=t) = 2 (t^-1/2 - 1) / (1/2)
    const auto m = RadialPowerMeasure::isotropic(1, 0.5, 1.0, 1.0);
    const LevyMeasure mu(m);
    CHECK(tail_mass(mu, 0.25) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(tail_mass(mu, 1.0) == doctest::Approx(0.0));
    CHECK(std::isinf(total_mass(mu)));
    CHECK(second_moment_below(mu, 1.0) == doctest::Approx(2.0 / 1.5).epsilon(1e-12));

    // symmetric, so vector moments vanish
    const Vec fm = first_moment(mu, 0.0, 1.0, 1);
    CHECK(std::abs(fm[0]) < 1e-14);

    // alpha >= 1 has no first moment near zero
    const auto m2 = RadialPowerMeasure::isotropic(1, 1.5, 1.0, 1.0);
    CHECK_THROWS_AS((void)first_moment(LevyMeasure(m2), 0.0, 1.0, 1), IntegrabilityError);
    // but away from zero it does
    const Vec fm2 = first_moment(LevyMeasure(m2), 0.5, 1.0, 1);
    CHECK(std::abs(fm2[0]) < 1e-14);
}

TEST_CASE("atomic masses respect the strict |x| < 1 boundary") {
    AtomicMeasure am;
    am.atoms.push_back({{1.0, 0.0}, 2.0});   // |x| = 1 exactly
    am.atoms.push_back({{0.0, 0.5}, 3.0});
    am.atoms.push_back({{3.0, 4.0}, 1.0});   // |x| = 5
    const LevyMeasure mu(am);
    CHECK(tail_mass(mu, 1.0) == doctest::Approx(3.0));
    CHECK(total_mass(mu) == doctest::Approx(6.0));
    CHECK(second_moment_below(mu, 1.0) == doctest::Approx(3.0 * 0.25));
    const Vec fm = first_moment(mu, 0.0, 1.0, 2);  // only the |x| = 0.5 atom
    CHECK(fm[0] == doctest::Approx(0.0));
    CHECK(fm[1] == doctest::Approx(1.5));
}

TEST_CASE("jump exponent: atomic matches the direct formula") {
    AtomicMeasure am;
    am.atoms.push_back({{0.5}, 2.0});
    const Vec z{std::numbers::pi};
    const auto v = jump_exponent(LevyMeasure(am), z);
    // 2 (1 - e^{i pi/2} + i pi/2) = 2 + (pi - 2) i
    CHECK(v.real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(std::numbers::pi - 2.0).epsilon(1e-14));
}

TEST_CASE("jump exponent: radial parity and positivity") {
    const auto rm = RadialPowerMeasure::isotropic(2, 0.7, 1.0, 2.0);
    const LevyMeasure mu(rm);
    for (double r : {0.3, 5.0, 4000.0}) {
        const Vec z{0.6 * r, -0.8 * r};
        const Vec mz{-0.6 * r, 0.8 * r};
        const auto v = jump_exponent(mu, z);
        const auto w = jump_exponent(mu, mz);
        CHECK(v.real() >= 0.0);
        CHECK(v.real() == doctest::Approx(w.real()).epsilon(1e-12));
        CHECK(v.imag() == doctest::Approx(-w.imag()).epsilon(1e-12));
    }
}

TEST_CASE("measure validation names the offending field") {
    AtomicMeasure bad_origin;
    bad_origin.atoms.push_back({{0.0, 0.0}, 1.0});
    CHECK_THROWS_WITH_AS(validate_measure(LevyMeasure(bad_origin), 2),
                         doctest::Contains("origin"), InvalidInput);

    AtomicMeasure bad_mass;
    bad_mass.atoms.push_back({{1.0, 0.0}, -1.0});
    CHECK_THROWS_WITH_AS(validate_measure(LevyMeasure(bad_mass), 2), doctest::Contains("mass"),
                         InvalidInput);

    AtomicMeasure bad_dim;
    bad_dim.atoms.push_back({{1.0}, 1.0});
    CHECK_THROWS_AS(validate_measure(LevyMeasure(bad_dim), 2), InvalidInput);

    auto rm = RadialPowerMeasure::isotropic(2, 0.5, 1.0, 1.0);
    rm.alpha = 2.5;
    CHECK_THROWS_WITH_AS(validate_measure(LevyMeasure(rm), 2), doctest::Contains("alpha"),
                         InvalidInput);
}
