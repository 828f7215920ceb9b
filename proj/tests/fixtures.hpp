#pragma once
// Random and named isometries shared by the tests.

#include <cmath>
#include <numbers>
#include <random>

#include "flatctc/isometry.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace flatctc;

/// Columns x0 = (0,-1,1)/sqrt2, x1 = (1,0,0), x2 = (0,1,1)/sqrt2.
inline Mat3 parabolic_basis() {
    const double h = 1.0 / std::numbers::sqrt2;
    return Mat3::from_columns(MVec(0, -h, h), MVec(1, 0, 0), MVec(0, h, h));
}

/// The canonical parabolic with translation tau * x2, in standard coordinates.
inline Isometry canonical_parabolic(double tau) {
    const Mat3 p = parabolic_basis();
    const Mat3 lin = p * parabolic_canonical(0.0).linear * p.inverse();
    return Isometry(lin, tau * p.column(2));
}

/// A random element of G used to conjugate fixtures.
inline Isometry random_conjugator(std::mt19937_64& rng, double rapidity = 1.0, double shift = 3.0) {
    return Isometry(random_lorentz(rng, rapidity), oracle::random_vec(rng, shift));
}

inline Isometry random_hyperbolic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rap(0.3, 1.5);
    const Isometry base(boost_yz(rap(rng)), oracle::random_vec(rng, 2.0));
    return conjugate(base, random_conjugator(rng));
}

inline Isometry random_parabolic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> t(0.3, 2.0);
    std::bernoulli_distribution sign(0.5);
    const double tau = sign(rng) ? t(rng) : -t(rng);
    return conjugate(canonical_parabolic(tau), random_conjugator(rng));
}

inline Isometry random_elliptic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> th(0.2, 3.0);
    std::uniform_real_distribution<double> tt(0.3, 2.0);
    std::bernoulli_distribution sign(0.5);
    const double theta = sign(rng) ? th(rng) : -th(rng);
    const Isometry base(rotation_xy(theta), MVec(0, 0, sign(rng) ? tt(rng) : -tt(rng)));
    return conjugate(base, random_conjugator(rng));
}

}  // namespace fixtures
