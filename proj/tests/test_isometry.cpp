#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "flatctc/errors.hpp"
#include "flatctc/groups.hpp"
#include "flatctc/isometry.hpp"
#include "oracles.hpp"

using namespace flatctc;

namespace {

const double kR5 = std::sqrt(5.0);

Isometry g1() { return torus_example().generators[0].element; }
Isometry g2() { return torus_example().generators[1].element; }

double affine_distance(const AffineMap& a, const AffineMap& b) {
    return std::max((a.linear - b.linear).max_abs(), (a.translation - b.translation).max_abs());
}

}  // namespace

TEST(Isometry, RejectsNonLorentz) {
    const Mat3 m{{1, 0.1, 0, 0, 1, 0, 0, 0, 1}};
    try {
        Isometry g(m, MVec());
        FAIL() << "expected NotLorentzError";
    } catch (const NotLorentzError& e) {
        EXPECT_GT(e.residual(), 0.05);
    }
}

TEST(Isometry, IdentityComponentOnly) {
    const Mat3 time_flip{{1, 0, 0, 0, 1, 0, 0, 0, -1}};
    const Mat3 space_flip{{-1, 0, 0, 0, 1, 0, 0, 0, 1}};
    EXPECT_THROW(Isometry(time_flip, MVec()), NotLorentzError);
    EXPECT_THROW(Isometry(space_flip, MVec()), NotLorentzError);
    EXPECT_NO_THROW(Isometry(time_flip, MVec(), Admit::FullPoincare));
}

TEST(Isometry, ComposeActsRightToLeft) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i) {
        const Isometry a = fixtures::random_conjugator(rng), b = fixtures::random_conjugator(rng);
        const MPoint p = oracle::random_point(rng, 5);
        const MVec diff = compose(a, b)(p) - a(b(p));
        EXPECT_LT(diff.norm(), 1e-10);
        EXPECT_LT((compose(a, inverse(a))(p) - p).norm(), 1e-9);
    }
}

TEST(Isometry, PowerCocycle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Isometry g = fixtures::random_hyperbolic(rng);
        std::uniform_int_distribution<long> k(-6, 6);
        const long a = k(rng), b = k(rng);
        const Isometry lhs = power(g, a + b);
        const Isometry rhs = compose(power(g, a), power(g, b));
        const double scale = 1.0 + lhs.linear().max_abs() + lhs.translation().max_abs();
        EXPECT_LT(affine_distance(lhs.as_affine(), rhs.as_affine()), 1e-9 * scale);
    }
}

TEST(Isometry, PowerMatchesIteration) {
    const Isometry g = g1();
    const oracle::V p{0.3, -1.2, 2.0};
    for (long n = 1; n <= 8; ++n) {
        const MVec d = displacement(power(g, n), MPoint(p[0], p[1], p[2]));
        const oracle::V o = oracle::iterate_displacement(g, p, n);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(d[i], o[i], 1e-9 * (1 + std::abs(o[i])));
    }
}

TEST(Isometry, TorusGeneratorsAreHyperbolic) {
    const IsometryClass c1 = classify(g1()), c2 = classify(g2());
    EXPECT_EQ(c1.kind, IsometryKind::Hyperbolic);
    EXPECT_EQ(c2.kind, IsometryKind::Hyperbolic);
    EXPECT_NEAR(c1.trace, 4.0, 1e-12);
    EXPECT_NEAR(c2.trace, 8.0, 1e-12);
    EXPECT_FALSE(c1.has_fixed_point);
    EXPECT_FALSE(c2.has_fixed_point);
    EXPECT_LT((g2().linear() - g1().linear() * g1().linear()).max_abs(), 1e-12);
}

TEST(Isometry, EigenvalueMatchesCharacteristicPolynomial) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 30; ++i) {
        const Isometry g = i == 0 ? g1() : fixtures::random_hyperbolic(rng);
        const auto root = oracle::smallest_root_below_one(g.linear());
        ASSERT_TRUE(root.has_value());
        EXPECT_NEAR(eigenframe(g.linear()).lambda, *root, 1e-9);
    }
    EXPECT_NEAR(eigenframe(g1().linear()).lambda, (3.0 - kR5) / 2.0, 1e-12);
}

TEST(Isometry, EigenframeOfTorusGenerator) {
    const EigenFrame f = eigenframe(g1().linear());
    const double h = 1.0 / std::numbers::sqrt2;
    EXPECT_LT((f.x_minus - MVec(0, h, h)).max_abs(), 1e-12);
    EXPECT_LT((f.x_plus - MVec(0, -h, h)).max_abs(), 1e-12);
    EXPECT_LT((f.x_null_axis - MVec(1, 0, 0)).max_abs(), 1e-12);
}

TEST(Isometry, EigenframeNormalizationProperties) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const Mat3 g = fixtures::random_hyperbolic(rng).linear();
        const EigenFrame f = eigenframe(g);
        const double s = g.max_abs();
        EXPECT_LT((g * f.x_minus - f.lambda * f.x_minus).norm(), 1e-9 * s * f.x_minus.norm());
        EXPECT_LT((g * f.x_plus - (1.0 / f.lambda) * f.x_plus).norm(), 1e-9 * s * f.x_plus.norm());
        EXPECT_LT((g * f.x_null_axis - f.x_null_axis).norm(), 1e-9 * s);
        EXPECT_NEAR(bilinear(f.x_minus, f.x_plus), -1.0, 1e-9);
        EXPECT_NEAR(lorentz_square(f.x_minus), 0.0, 1e-9);
        EXPECT_NEAR(lorentz_square(f.x_plus), 0.0, 1e-9);
        EXPECT_NEAR(lorentz_square(f.x_null_axis), 1.0, 1e-9);
        EXPECT_NEAR(bilinear(f.x_null_axis, f.x_minus), 0.0, 1e-9);
        EXPECT_GT(f.x_minus.z(), 0.0);
        EXPECT_GT(f.x_plus.z(), 0.0);
        EXPECT_EQ(orientation_det(f.x_minus, f.x_plus, f.x_null_axis), 1);
    }
}

TEST(Isometry, NotHyperbolicEigenframeThrows) {
    EXPECT_THROW(eigenframe(rotation_xy(1.0)), NotHyperbolicError);
    EXPECT_THROW(eigenframe(Mat3::identity()), NotHyperbolicError);
}

TEST(Isometry, MargulisInvariantOfTorusGenerators) {
    EXPECT_NEAR(margulis_alpha(g1()), 1.0, 1e-9);
    EXPECT_NEAR(margulis_alpha(g2()), 2.0, 1e-9);
    // Brute force: the 1-eigenvector of g1 is (1,0,0).
    std::mt19937_64 rng(14);
    for (int i = 0; i < 3; ++i) {
        const MPoint p = oracle::random_point(rng, 10);
        const oracle::V d = oracle::iterate_displacement(g1(), oracle::to_v(p), 1);
        EXPECT_NEAR(oracle::B(d, {1, 0, 0}), 1.0, 1e-9);
    }
}

TEST(Isometry, MargulisInvariantIsConjugationInvariant) {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
        const Isometry g = fixtures::random_hyperbolic(rng);
        const Isometry h = fixtures::random_conjugator(rng);
        const double a = margulis_alpha(g);
        EXPECT_NEAR(margulis_alpha(conjugate(g, h)), a, 1e-8 * (1 + std::abs(a)));
        EXPECT_NEAR(eigenframe(conjugate(g, h).linear()).lambda, eigenframe(g.linear()).lambda, 1e-9);
    }
}

TEST(Isometry, MargulisInvariantIsAdditiveOnPowers) {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 100; ++i) {
        const Isometry g = fixtures::random_hyperbolic(rng);
        const double a = margulis_alpha(g);
        for (long n : {2L, 3L, 5L}) EXPECT_NEAR(margulis_alpha(power(g, n)), n * a, 1e-7 * (1 + n * std::abs(a)));
        EXPECT_NEAR(margulis_alpha(inverse(g)), a, 1e-8 * (1 + std::abs(a)));
    }
}

TEST(Isometry, InvariantLineIsTranslatedByAlpha) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const Isometry g = i == 0 ? g1() : fixtures::random_hyperbolic(rng);
        const InvariantLine l = invariant_line(g);
        const double a = margulis_alpha(g);
        const MVec moved = g(l.base) - l.base;
        EXPECT_LT((moved - a * l.direction).norm(), 1e-8 * (1 + l.base.from_origin().norm()));
        const MPoint q = l.at(2.5);
        EXPECT_LT((g(q) - q - a * l.direction).norm(), 1e-8 * (1 + q.from_origin().norm()));
    }
    EXPECT_LT(invariant_line(g1()).base.from_origin().norm(), 1e-12);
}

TEST(Isometry, TorusSecondLineBase) {
    // q- = v- / (1 - lambda), q+ = -v+ / (1/lambda - 1) in the common frame.
    const InvariantLine l = invariant_line(g2());
    EXPECT_NEAR(l.base.y(), 2.0 / kR5, 1e-12);
    EXPECT_NEAR(l.base.z(), 0.8, 1e-12);
}

TEST(Isometry, FixedPoints) {
    const Isometry boost(boost_yz(1.0), MVec());
    ASSERT_TRUE(fixed_point(boost).has_value());
    EXPECT_TRUE(classify(boost).has_fixed_point);
    EXPECT_FALSE(fixed_point(g1()).has_value());

    std::mt19937_64 rng(18);
    for (int i = 0; i < 100; ++i) {
        const Isometry h = fixtures::random_conjugator(rng);
        const Isometry e = conjugate(Isometry(rotation_xy(1.1), MVec()), h);
        const auto x = fixed_point(e);
        ASSERT_TRUE(x.has_value());
        EXPECT_LT((e(*x) - *x).norm(), 1e-8 * (1 + x->from_origin().norm()));
        EXPECT_EQ(classify(e).fixed_set, FixedSet::Line);
        EXPECT_FALSE(classify(conjugate(Isometry(rotation_xy(1.1), MVec(0, 0, 1)), h)).has_fixed_point);
    }
}

TEST(Isometry, ParabolicCanonicalForm) {
    for (double tau : {1.0, -1.0, 0.5, -0.5, 3.0}) {
        const Isometry rho = fixtures::canonical_parabolic(tau);
        const IsometryClass c = classify(rho);
        EXPECT_EQ(c.kind, IsometryKind::Parabolic);
        EXPECT_FALSE(c.has_fixed_point);
        EXPECT_FALSE(c.marginal);
        const NormalForm nf = normal_form(rho);
        EXPECT_NEAR(std::get<ParabolicForm>(nf.params).tau, tau, 1e-12);
    }
    EXPECT_TRUE(classify(fixtures::canonical_parabolic(0.0)).has_fixed_point);
}

TEST(Isometry, CanonicalParabolicMatrix) {
    const AffineMap u = parabolic_canonical(2.0);
    const double r2 = std::numbers::sqrt2;
    const Mat3 expected{{1, r2, 1, 0, 1, r2, 0, 0, 1}};
    EXPECT_LT((u.linear - expected).max_abs(), 1e-15);
    EXPECT_EQ(u.translation, MVec(0, 0, 2));
}

TEST(Isometry, NormalFormConjugatesToCanonical) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        Isometry g;
        switch (i % 3) {
            case 0: g = fixtures::random_hyperbolic(rng); break;
            case 1: g = fixtures::random_parabolic(rng); break;
            default: g = fixtures::random_elliptic(rng); break;
        }
        const NormalForm nf = normal_form(g);
        const AffineMap conj = conjugate(g.as_affine(), nf.to_canonical);
        const AffineMap canon = nf.canonical();
        const double scale = 1.0 + nf.to_canonical.linear.max_abs() * nf.from_canonical().linear.max_abs() *
                                       (1.0 + g.translation().norm() + nf.to_canonical.translation.norm());
        EXPECT_LT(affine_distance(conj, canon), 1e-8 * scale) << "case " << i;
    }
}

TEST(Isometry, ParabolicTauUnderConjugation) {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 200; ++i) {
        const double tau = (i % 2 ? 1.0 : -1.0) * (0.25 + 0.01 * i);
        const Isometry rho = conjugate(fixtures::canonical_parabolic(tau), fixtures::random_conjugator(rng));
        const NormalForm nf = normal_form(rho);
        EXPECT_NEAR(std::get<ParabolicForm>(nf.params).tau, tau, 1e-7 * (1 + std::abs(tau)));
    }
}

TEST(Isometry, EllipticNormalFormRecoversParameters) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const double theta = -3.0 + 6.0 * (i + 0.5) / 200.0;
        const double t = (i % 3) - 1.0;
        const Isometry psi =
            conjugate(Isometry(rotation_xy(theta), MVec(0, 0, t)), fixtures::random_conjugator(rng));
        const NormalForm nf = normal_form(psi);
        const auto& e = std::get<EllipticForm>(nf.params);
        EXPECT_NEAR(e.theta, theta, 1e-8);
        EXPECT_NEAR(e.t, t, 1e-8);
    }
}

TEST(Isometry, ClassificationIsConjugationInvariant) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
        const Isometry h = fixtures::random_conjugator(rng);
        EXPECT_EQ(classify(conjugate(fixtures::random_hyperbolic(rng), h)).kind, IsometryKind::Hyperbolic);
        EXPECT_EQ(classify(conjugate(fixtures::random_parabolic(rng), h)).kind, IsometryKind::Parabolic);
        EXPECT_EQ(classify(conjugate(fixtures::random_elliptic(rng), h)).kind, IsometryKind::Elliptic);
    }
}

TEST(Isometry, IdentityAndTranslations) {
    EXPECT_EQ(classify(Isometry::identity()).kind, IsometryKind::Identity);
    EXPECT_EQ(classify(Isometry::identity()).fixed_set, FixedSet::All);
    const IsometryClass t = classify(Isometry::translation_by(MVec(0, 0, 1)));
    EXPECT_EQ(t.kind, IsometryKind::Identity);
    EXPECT_FALSE(t.has_fixed_point);
    EXPECT_THROW(normal_form(Isometry::identity()), IdentityInputError);
}

TEST(Isometry, MarginalFlagNearBandEdge) {
    // tr = 1 + 2 cosh(r) = 3 + 5e-8.
    const double r = std::acosh(1.0 + 2.5e-8);
    const IsometryClass c = classify(Isometry(boost_yz(r), MVec(1, 0, 0)));
    EXPECT_EQ(c.kind, IsometryKind::Hyperbolic);
    EXPECT_TRUE(c.marginal);
    EXPECT_FALSE(classify(Isometry(boost_yz(1.0), MVec(1, 0, 0))).marginal);
}
