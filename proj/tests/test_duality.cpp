#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "woven/duality.hpp"
#include "woven/errors.hpp"
#include "woven/numerics.hpp"

using namespace woven;
using woven_test::random_frame;

TEST_CASE("canonical dual of {3e1, 3e1, e2}") {
    const Frame f(2, {{3, 0}, {3, 0}, {0, 1}});
    const Frame dual = canonical_dual(f);
    CHECK(dual.vector(0)[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(dual.vector(1)[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(dual.vector(2)[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(verify_duality(f, dual));
}

TEST_CASE("canonical dual requires a frame") {
    CHECK_THROWS_AS(canonical_dual(Frame(2, {{1, 0}, {2, 0}})), NotAFrame);
    CHECK_THROWS_AS(canonical_parseval(Frame(2, {{1, 0}, {2, 0}})), NotAFrame);
}

TEST_CASE("canonical parseval of {e1+e2, 2e1+e2} is {e2, e1}") {
    const Frame f(2, {{1, 1}, {2, 1}});
    const Frame p = canonical_parseval(f);
    CHECK(std::abs(p.vector(0)[0] - 0.0) < 1e-9);
    CHECK(std::abs(p.vector(0)[1] - 1.0) < 1e-9);
    CHECK(std::abs(p.vector(1)[0] - 1.0) < 1e-9);
    CHECK(std::abs(p.vector(1)[1] - 0.0) < 1e-9);
    const BoundsReport b = frame_bounds(p);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("perturbation space of {3e1, 3e1, e2} is the sign-split direction") {
    const Frame f(2, {{3, 0}, {3, 0}, {0, 1}});
    const DualFamily family = perturbation_space(f);
    CHECK(family.excess() == 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(family.basis(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(family.basis(1, 0) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
    CHECK(std::abs(family.basis(2, 0)) < 1e-12);
}

TEST_CASE("make_dual produces verified duals with exact kernel alignment") {
    const Frame f(2, {{3, 0}, {3, 0}, {0, 1}});
    const DualFamily family = perturbation_space(f);
    Matrix coeffs(2, 1);
    coeffs(0, 0) = 1.0;
    coeffs(1, 0) = 2.0;
    const DualResult r = make_dual(family, coeffs);
    CHECK(verify_duality(f, r.dual));
    // u_1 = (1,2)/sqrt2, u_2 = -(1,2)/sqrt2, u_3 = 0.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(r.u.vectors(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(r.u.vectors(1, 0) == doctest::Approx(2.0 * inv_sqrt2).epsilon(1e-12));
    CHECK(r.u.vectors(0, 1) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
    CHECK(std::abs(r.u.vectors(0, 2)) < 1e-12);
    // The perturbation annihilates the analysis range exactly by construction.
    CHECK((r.u.vectors * synthesis(f).transpose()).max_abs() < 1e-12);
    // Bessel bound equals ||coeffs||^2 for a one-dimensional kernel.
    CHECK(r.u.bessel_bound == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_THROWS_AS(make_dual(family, Matrix(3, 1)), ShapeMismatch);
}

TEST_CASE("every dual of a basis is the canonical dual") {
    const Frame basis(2, {{2, 0}, {1, 1}});
    const DualFamily family = perturbation_space(basis);
    CHECK(family.excess() == 0);
    const DualResult r = random_dual(basis, 7, 10.0);
    CHECK(r.u.bessel_bound == 0.0);
    CHECK(verify_duality(basis, r.dual));
}

TEST_CASE("random duals are reproducible per seed") {
    const Frame f = random_frame(3, 5, 99);
    const DualResult a = random_dual(f, 1234, 0.5);
    const DualResult b = random_dual(f, 1234, 0.5);
    CHECK(a.dual == b.dual);
    CHECK(a.u.vectors == b.u.vectors);
    const DualResult c = random_dual(f, 1235, 0.5);
    CHECK(a.dual.vectors() != c.dual.vectors());
    CHECK(verify_duality(f, a.dual));
    CHECK(verify_duality(f, c.dual));
}

TEST_CASE("scale_perturbation scales the bessel bound exactly by eps^2") {
    const Frame f(2, {{3, 0}, {3, 0}, {0, 1}});
    const PerturbationSequence u = random_dual(f, 5, 1.0).u;
    const PerturbationSequence half = scale_perturbation(u, 0.5);
    CHECK(half.bessel_bound == 0.25 * u.bessel_bound);
    CHECK(half.vectors == u.vectors * 0.5);
}

TEST_CASE("apply_perturbation shifts a frame along the sequence") {
    const Frame f(2, {{1, 0}, {0, 1}, {1, 1}});
    const PerturbationSequence zero = PerturbationSequence::zero(2, 3);
    CHECK(apply_perturbation(f, zero, 3.0) == f);
    CHECK_THROWS_AS(apply_perturbation(f, PerturbationSequence::zero(2, 4), 1.0),
                    DimensionMismatch);
}
