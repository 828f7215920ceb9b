#pragma once

// Timelike / lightlike / spacelike regions of an isometry and its powers.
//
// region_of() evaluates B on the displacement g^n(p) - p directly. The
// closed forms below compute the same labels through the normal forms:
// a product threshold in eigenframe coordinates for hyperbolic elements,
// translated parabolic sheets for parabolic ones, and the rotation/screw
// decomposition for elliptic ones.

#include <optional>
#include <string_view>

#include "flatctc/isometry.hpp"
#include "flatctc/minkowski.hpp"

namespace flatctc {

enum class Region { T, L, S };

std::string_view to_string(Region r) noexcept;

struct RegionLabel {
    Region region = Region::S;
    long power = 1;
    /// The displacement vanished: p is fixed by g^power.
    bool fixed_point = false;
};

MVec displacement(const Isometry& g, const MPoint& p) noexcept;

/// Label of p for g^n by direct evaluation of B(g^n(p) - p). n must be
/// nonzero; `tol` is an absolute band on the B value.
RegionLabel region_of(const Isometry& g, const MPoint& p, long n, double tol = kDefaultTol);

/// Band used by the closed forms: 1e-9 (1 + |p|^2).
double boundary_band(const MVec& p) noexcept;

/// Hyperbolic data cached for repeated queries against the same element.
class HyperbolicRegionData {
public:
    explicit HyperbolicRegionData(const Isometry& g);

    const EigenFrame& frame() const noexcept { return frame_; }
    const InvariantLine& line() const noexcept { return line_; }
    double alpha() const noexcept { return alpha_; }

    /// -(n alpha)^2 / (2 (1 - lambda^n)(lambda^-n - 1)).
    double threshold(long n) const noexcept;
    /// (p-, p+, p0) of p relative to the invariant line base.
    MVec coordinates(const MPoint& p) const noexcept { return frame_.coordinates(p - line_.base); }
    RegionLabel label(const MPoint& p, long n) const noexcept;
    /// Least n in [1, max_power] with p in T(g^n), scanning upward.
    std::optional<long> min_timelike_power(const MPoint& p, long max_power) const noexcept;

private:
    EigenFrame frame_;
    InvariantLine line_;
    double alpha_;
};

/// Throws NotHyperbolicError.
double hyperbolic_threshold(const Isometry& g, long n);
RegionLabel hyperbolic_region_closed_form(const Isometry& g, const MPoint& p, long n);

/// Coordinates (p0, p1, p2) in the parabolic adapted basis {x0, x1, x2},
/// where B(p, q) = -p0 q2 + p1 q1 - p2 q0.
struct AdaptedCoords {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
};

double adapted_bilinear(const AdaptedCoords& p, const AdaptedCoords& q) noexcept;

/// rho_tau^n(p) - p for the canonical parabolic rho_tau, from the closed
/// form for its powers. Requires n >= 1.
AdaptedCoords parabolic_power_closed_form(double tau, long n, const AdaptedCoords& p);

/// The lightlike sheet of rho_tau^n:
///   p1 = (p2^2 - tau p2) / (sqrt(2) tau) - tau (n^2 - 1) / (12 sqrt(2)).
struct ParabolicSheet {
    double tau = 1.0;
    long n = 1;

    /// (n^2 - 1) / 12.
    double phi() const noexcept;
    /// p1 on the sheet at the given p2.
    double p1_on_sheet(double p2) const noexcept;
    /// sqrt(2) tau p1 - p2^2 + tau p2 + tau^2 (n^2 - 1)/12; positive exactly
    /// on the timelike side. B(rho^n(p) - p) = -2 n^2 * residual.
    double residual(const AdaptedCoords& p) const noexcept;
};

ParabolicSheet parabolic_sheet(double tau, long n);
RegionLabel parabolic_region_closed_form(double tau, long n, const AdaptedCoords& p);

struct ParabolicWitness {
    long power;      ///< least n >= 1 with p in T(rho^n), verified by region_of
    long predicted;  ///< value predicted by solving the sheet inequality
};

/// Throws NotParabolicError, HasFixedPointError.
ParabolicWitness parabolic_witness(const Isometry& rho, const MPoint& p);

/// Proven upper bound on the least timelike power of a fixed-point-free
/// elliptic element at p: floor(2 r / |t|) + 1, r the distance to the axis
/// in adapted coordinates. Throws NotEllipticError, HasFixedPointError.
long elliptic_witness_bound(const Isometry& psi, const MPoint& p);

/// Label of p for psi^k from the screw decomposition:
///   B(psi^k(p) - p) = 4 sin^2(k theta / 2) r^2 - k^2 t^2.
/// Throws NotEllipticError.
RegionLabel elliptic_region_closed_form(const Isometry& psi, const MPoint& p, long k);

/// Least k in [1, n_max] with psi^k(p) - p timelike. Returns nullopt when
/// psi has a fixed point (t == 0). Throws NotEllipticError, and
/// WitnessBoundExceededError if n_max is below the witness. n_max <= 0
/// means "use elliptic_witness_bound".
std::optional<long> elliptic_min_timelike_power(const Isometry& psi, const MPoint& p, long n_max = 0);

}  // namespace flatctc
