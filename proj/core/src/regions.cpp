#include "flatctc/regions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flatctc/errors.hpp"

namespace flatctc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Region region_from(const CausalClass& c) noexcept {
    switch (c.kind) {
        case CausalKind::Timelike: return Region::T;
        case CausalKind::Spacelike: return Region::S;
        case CausalKind::Lightlike:
        case CausalKind::Zero: return Region::L;
    }
    return Region::L;
}

void require_power(long n) {
    if (n == 0) throw std::invalid_argument("power must be nonzero");
}

}  // namespace

std::string_view to_string(Region r) noexcept {
    switch (r) {
        case Region::T: return "T";
        case Region::L: return "L";
        case Region::S: return "S";
    }
    return "?";
}

MVec displacement(const Isometry& g, const MPoint& p) noexcept { return g(p) - p; }

RegionLabel region_of(const Isometry& g, const MPoint& p, long n, double tol) {
    require_power(n);
    const CausalClass c = causal_class(displacement(power(g, n), p), tol);
    return RegionLabel{region_from(c), n, c.kind == CausalKind::Zero};
}

double boundary_band(const MVec& p) noexcept { return 1e-9 * (1.0 + dot(p, p)); }

HyperbolicRegionData::HyperbolicRegionData(const Isometry& g)
    : frame_(eigenframe(g.linear())), line_(invariant_line(g)), alpha_(margulis_alpha(g)) {}

double HyperbolicRegionData::threshold(long n) const noexcept {
    if (n == 0 || alpha_ == 0.0) return 0.0;
    const double k = static_cast<double>(n < 0 ? -n : n);
    const double lam_n = std::pow(frame_.lambda, k);
    const double denom = (1.0 - lam_n) * (1.0 / lam_n - 1.0);
    const double num = k * alpha_;
    return -(num * num) / (2.0 * denom);
}

RegionLabel HyperbolicRegionData::label(const MPoint& p, long n) const noexcept {
    const MVec c = coordinates(p);
    const double band = boundary_band(c);
    const double residual = c.x() * c.y() - threshold(n);
    RegionLabel out{Region::L, n, false};
    if (residual < -band) {
        out.region = Region::T;
    } else if (residual > band) {
        out.region = Region::S;
    } else {
        out.fixed_point = std::abs(alpha_) <= kDefaultTol && std::abs(c.x()) <= band && std::abs(c.y()) <= band;
    }
    return out;
}

std::optional<long> HyperbolicRegionData::min_timelike_power(const MPoint& p, long max_power) const noexcept {
    const MVec c = coordinates(p);
    const double band = boundary_band(c);
    const double product = c.x() * c.y();
    // Every threshold is <= 0, so a nonnegative product is never timelike.
    if (product >= -band) return std::nullopt;
    for (long n = 1; n <= max_power; ++n) {
        if (product - threshold(n) < -band) return n;
    }
    return std::nullopt;
}

double hyperbolic_threshold(const Isometry& g, long n) {
    require_power(n);
    return HyperbolicRegionData(g).threshold(n);
}

RegionLabel hyperbolic_region_closed_form(const Isometry& g, const MPoint& p, long n) {
    require_power(n);
    return HyperbolicRegionData(g).label(p, n);
}

double adapted_bilinear(const AdaptedCoords& p, const AdaptedCoords& q) noexcept {
    return -p.p0 * q.p2 + p.p1 * q.p1 - p.p2 * q.p0;
}

AdaptedCoords parabolic_power_closed_form(double tau, long n, const AdaptedCoords& p) {
    if (n < 1) throw std::invalid_argument("parabolic_power_closed_form: n must be >= 1");
    const double k = static_cast<double>(n);
    const double sum_i = k * (k - 1.0) / 2.0;
    const double sum_i2 = (k - 1.0) * k * (2.0 * k - 1.0) / 6.0;
    return AdaptedCoords{k * kSqrt2 * p.p1 + k * k * p.p2 + tau * sum_i2,
                         k * kSqrt2 * p.p2 + kSqrt2 * tau * sum_i, k * tau};
}

double ParabolicSheet::phi() const noexcept {
    const double k = static_cast<double>(n);
    return (k * k - 1.0) / 12.0;
}

double ParabolicSheet::p1_on_sheet(double p2) const noexcept {
    return (p2 * p2 - tau * p2) / (kSqrt2 * tau) - tau * phi() / kSqrt2;
}

double ParabolicSheet::residual(const AdaptedCoords& p) const noexcept {
    return kSqrt2 * tau * p.p1 - p.p2 * p.p2 + tau * p.p2 + tau * tau * phi();
}

ParabolicSheet parabolic_sheet(double tau, long n) {
    if (tau == 0.0 || !std::isfinite(tau)) throw std::invalid_argument("parabolic_sheet: tau must be nonzero");
    if (n < 1) throw std::invalid_argument("parabolic_sheet: n must be >= 1");
    return ParabolicSheet{tau, n};
}

RegionLabel parabolic_region_closed_form(double tau, long n, const AdaptedCoords& p) {
    const ParabolicSheet sheet = parabolic_sheet(tau, n);
    const double r = sheet.residual(p);
    const double band = boundary_band(MVec::unchecked(p.p0, p.p1, p.p2));
    RegionLabel out{Region::L, n, false};
    if (r > band) {
        out.region = Region::T;
    } else if (r < -band) {
        out.region = Region::S;
    }
    return out;
}

ParabolicWitness parabolic_witness(const Isometry& rho, const MPoint& p) {
    const IsometryClass cls = classify(rho);
    if (cls.kind != IsometryKind::Parabolic) throw NotParabolicError();
    if (cls.has_fixed_point) throw HasFixedPointError();

    const NormalForm nf = normal_form(rho);
    const double tau = std::get<ParabolicForm>(nf.params).tau;
    const MPoint q = nf.to_canonical.apply(p);
    const double f1 = parabolic_sheet(tau, 1).residual(AdaptedCoords{q.x(), q.y(), q.z()});

    // residual_n = f1 + tau^2 (n^2 - 1) / 12 > 0  <=>  n^2 > 1 - 12 f1 / tau^2.
    long predicted = 1;
    if (!(f1 > 0.0)) {
        predicted = static_cast<long>(std::floor(std::sqrt(1.0 - 12.0 * f1 / (tau * tau)))) + 1;
    }

    long n = predicted;
    for (long guard = 0; region_of(rho, p, n).region != Region::T; ++guard) {
        if (guard > 1000) throw std::logic_error("parabolic_witness: verification did not converge");
        ++n;
    }
    while (n > 1 && region_of(rho, p, n - 1).region == Region::T) --n;
    return ParabolicWitness{n, predicted};
}

namespace {

struct EllipticChart {
    double theta;
    double t;
    double radius;
};

EllipticChart elliptic_chart(const Isometry& psi, const MPoint& p) {
    const NormalForm nf = normal_form(psi);
    const auto& form = std::get<EllipticForm>(nf.params);
    const MPoint q = nf.to_canonical.apply(p);
    return EllipticChart{form.theta, form.t, std::hypot(q.x(), q.y())};
}

long bound_from(const EllipticChart& c) {
    return static_cast<long>(std::floor(2.0 * c.radius / std::abs(c.t))) + 1;
}

}  // namespace

RegionLabel elliptic_region_closed_form(const Isometry& psi, const MPoint& p, long k) {
    require_power(k);
    if (classify(psi).kind != IsometryKind::Elliptic) throw NotEllipticError();
    const EllipticChart c = elliptic_chart(psi, p);
    const double kd = static_cast<double>(k);
    const double s = std::sin(kd * c.theta / 2.0);
    const double b = 4.0 * s * s * c.radius * c.radius - kd * kd * c.t * c.t;
    const double band = 1e-9 * (1.0 + 4.0 * c.radius * c.radius + kd * kd * c.t * c.t);
    RegionLabel out{Region::L, k, false};
    if (b < -band) {
        out.region = Region::T;
    } else if (b > band) {
        out.region = Region::S;
    } else {
        out.fixed_point = std::abs(c.t) <= kDefaultTol && std::abs(s) * c.radius <= kDefaultTol;
    }
    return out;
}

long elliptic_witness_bound(const Isometry& psi, const MPoint& p) {
    const IsometryClass cls = classify(psi);
    if (cls.kind != IsometryKind::Elliptic) throw NotEllipticError();
    if (cls.has_fixed_point) throw HasFixedPointError();
    return bound_from(elliptic_chart(psi, p));
}

std::optional<long> elliptic_min_timelike_power(const Isometry& psi, const MPoint& p, long n_max) {
    const IsometryClass cls = classify(psi);
    if (cls.kind != IsometryKind::Elliptic) throw NotEllipticError();
    // Displacements of an elliptic with a fixed point lie in the spacelike
    // plane orthogonal to its axis.
    if (cls.has_fixed_point) return std::nullopt;

    const EllipticChart chart = elliptic_chart(psi, p);
    const long bound = bound_from(chart);
    if (n_max <= 0) n_max = bound;

    const double r2 = chart.radius * chart.radius;
    for (long k = 1; k <= n_max; ++k) {
        const double kd = static_cast<double>(k);
        const double s = std::sin(kd * chart.theta / 2.0);
        const double b = 4.0 * s * s * r2 - kd * kd * chart.t * chart.t;
        if (b < -kDefaultTol && region_of(psi, p, k).region == Region::T) return k;
    }
    throw WitnessBoundExceededError(bound);
}

}  // namespace flatctc
