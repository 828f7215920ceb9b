#pragma once

// Closed timelike curves through orbits of a single isometry.
//
// The piecewise-linear orbit path c(t) joins consecutive points g^n(p). Near
// each integer the corner is smoothed on [k, k + eps] by blending the incoming
// and outgoing directions of the tangent (not the two segments' positions;
// see BlendProfile). The smoothed curve still passes through every g^n(p),
// agrees with c outside the blend windows, and satisfies c(t + 1) = g(c(t)),
// so it closes up in the quotient.

#include <iosfwd>
#include <vector>

#include "flatctc/isometry.hpp"

namespace flatctc {

/// u(t) = f(t/eps) / (f(t/eps) + f(1 - t/eps)), f(s) = exp(-1/s) for s > 0,
/// and d = 1 - u.
class BumpPair {
public:
    /// Throws std::invalid_argument unless eps > 0.
    explicit BumpPair(double epsilon);

    double epsilon() const noexcept { return eps_; }
    double u(double t) const noexcept;
    double d(double t) const noexcept { return 1.0 - u(t); }
    double u_prime(double t) const noexcept;
    double d_prime(double t) const noexcept { return -u_prime(t); }
    /// Integral of u over [0, t].
    double u_integral(double t) const;

private:
    double eps_;
};

BumpPair bump_pair(double epsilon);

/// Weight w(s) of the corner blend at a junction. On [0, eps] the tangent is
///   forward + w(s) (backward - forward),
/// with w = d_r - depth * plateau: a ramp d_r of width r from 1 down to 0,
/// minus a shallow plateau whose area cancels the ramp's so that the curve
/// rejoins the straight segment at s = eps. w never drops below -depth, and
/// depth is half the margin by which forward can be pushed away from
/// backward before leaving the light cone, so every tangent is timelike.
class BlendProfile {
public:
    /// Throws std::invalid_argument unless 0 < eps < 1/2.
    BlendProfile(const MVec& incoming, const MVec& outgoing, double epsilon);
    double weight(double s) const noexcept;
    /// Integral of weight over [0, s] (equal to s for s <= 0, 0 for s >= eps).
    double weight_integral(double s) const;
    double depth() const noexcept { return depth_; }
    double ramp_width() const noexcept { return width_; }

private:
    double plateau(double s) const noexcept;
    double plateau_integral(double s) const;

    double eps_;
    double depth_ = 0.5;
    double width_ = 0.0;
    BumpPair ramp_;
};

struct CurveSample {
    double t = 0.0;
    MPoint position;
    MVec tangent;
};

/// c(t) = g^[t](p) + (t - [t]) (g^{[t]+1}(p) - g^[t](p)).
/// Throws NotTimelikeDisplacementError.
MPoint piecewise_orbit_curve(const Isometry& g, const MPoint& p, double t);

/// The smoothed curve and its analytic tangent at any real t.
CurveSample smooth_orbit_point(const Isometry& g, const MPoint& p, const BumpPair& bump, double t);

/// Samples t = k / samples_per_unit, k = 0..samples_per_unit, and certifies
/// every tangent timelike with one time orientation.
/// Throws NotTimelikeDisplacementError, TangentNotTimelikeError,
/// std::invalid_argument unless 0 < eps < 1/2 and samples_per_unit >= 1.
std::vector<CurveSample> smooth_orbit_curve(const Isometry& g, const MPoint& p, double epsilon = 0.1,
                                            int samples_per_unit = 100);

struct ClosureReport {
    double position_residual = 0.0;  ///< |g(c(0)) - c(1)|
    double tangent_residual = 0.0;   ///< |g c'(0) - c'(1)|
    double max_tangent_b = 0.0;      ///< largest B(c', c') over the samples (most nearly null)
};

/// Checks c(1) = g(c(0)) and c'(1) = g c'(0) within 1e-9 (relative to the
/// sample magnitudes). Throws NotClosedError with the larger residual.
ClosureReport certify_closed_in_quotient(const Isometry& g, const std::vector<CurveSample>& samples);

/// Header "t,x,y,z,tx,ty,tz,B_tangent".
void write_curve_csv(std::ostream& out, const std::vector<CurveSample>& samples);

}  // namespace flatctc
