#include "flatctc/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "flatctc/errors.hpp"
#include "flatctc/regions.hpp"

namespace flatctc {

BumpPair::BumpPair(double epsilon) : eps_(epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("bump epsilon must be positive");
}

double BumpPair::u(double t) const noexcept {
    const double s = t / eps_;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

double BumpPair::u_prime(double t) const noexcept {
    const double s = t / eps_;
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    const double sum = a + b;
    return a * b * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s))) / (sum * sum) / eps_;
}

double BumpPair::u_integral(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= eps_) return eps_ / 2.0 + (t - eps_);
    // u is flat at both ends of its ramp, so a fixed composite rule is
    // accurate to about 1e-14 relative to eps.
    const auto f = [this](double x) { return u(x); };
    constexpr int kPanels = 4;
    double sum = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, t * i / kPanels, t * (i + 1) / kPanels);
    }
    return sum;
}

BumpPair bump_pair(double epsilon) { return BumpPair(epsilon); }

namespace {

MVec timelike_displacement(const Isometry& g, const MPoint& p) {
    const MVec d = displacement(g, p);
    const CausalClass c = causal_class(d);
    if (c.kind != CausalKind::Timelike) throw NotTimelikeDisplacementError(std::string(to_string(c.kind)));
    return d;
}

// Largest delta with (1 + delta) b - delta a still timelike: the smallest
// positive root of B(b + delta (b - a)) = 0, or infinity.
double cone_margin(const MVec& a, const MVec& b) {
    const MVec e = b - a;
    const double q = lorentz_square(e), r = bilinear(b, e), s = lorentz_square(b);
    double best = std::numeric_limits<double>::infinity();
    const auto consider = [&](double x) {
        if (x > 0.0 && x < best) best = x;
    };
    if (std::abs(q) <= 1e-300) {
        if (r > 0.0) consider(-s / (2.0 * r));
        return best;
    }
    const double disc = r * r - q * s;
    if (disc < 0.0) return best;
    const double root = std::sqrt(disc);
    consider((-r - root) / q);
    consider((-r + root) / q);
    return best;
}

}  // namespace

BlendProfile::BlendProfile(const MVec& incoming, const MVec& outgoing, double epsilon) : eps_(epsilon), ramp_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    depth_ = std::min(0.5, 0.5 * cone_margin(incoming, outgoing));
    width_ = 2.0 * depth_ * eps_ / (1.0 + 2.0 * depth_);
    ramp_ = BumpPair(width_);
}

double BlendProfile::plateau(double s) const noexcept {
    if (s <= 0.0 || s >= eps_) return 0.0;
    if (s < width_) return ramp_.u(s);
    if (s <= eps_ - width_) return 1.0;
    return 1.0 - ramp_.u(s - (eps_ - width_));
}

double BlendProfile::plateau_integral(double s) const {
    if (s <= 0.0) return 0.0;
    const double top = eps_ - width_;
    if (s <= top) return ramp_.u_integral(s);
    const double x = std::min(s, eps_) - top;
    return ramp_.u_integral(top) + x - ramp_.u_integral(x);
}

double BlendProfile::weight(double s) const noexcept {
    if (s <= 0.0) return 1.0;
    if (s >= eps_) return 0.0;
    return ramp_.d(s) - depth_ * plateau(s);
}

double BlendProfile::weight_integral(double s) const {
    if (s <= 0.0) return s;
    if (s >= eps_) return 0.0;
    return (s - ramp_.u_integral(s)) - depth_ * plateau_integral(s);
}

MPoint piecewise_orbit_curve(const Isometry& g, const MPoint& p, double t) {
    timelike_displacement(g, p);
    const double k = std::floor(t);
    const Isometry gk = power(g, static_cast<long>(k));
    const MPoint a = gk(p);
    const MPoint b = g(a);
    return a + (t - k) * (b - a);
}

CurveSample smooth_orbit_point(const Isometry& g, const MPoint& p, const BumpPair& bump, double t) {
    const MVec forward = timelike_displacement(g, p);
    const MVec backward = p - inverse(g)(p);
    const BlendProfile profile(backward, forward, bump.epsilon());

    const double k = std::floor(t);
    const double s = t - k;
    const MVec turn = backward - forward;
    CurveSample out{t, p + s * forward + profile.weight_integral(s) * turn, forward + profile.weight(s) * turn};
    if (k != 0.0) {
        const Isometry gk = power(g, static_cast<long>(k));
        out.position = gk(out.position);
        out.tangent = gk.linear() * out.tangent;
    }
    return out;
}

std::vector<CurveSample> smooth_orbit_curve(const Isometry& g, const MPoint& p, double epsilon,
                                            int samples_per_unit) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    if (samples_per_unit < 1) throw std::invalid_argument("samples_per_unit must be >= 1");
    const BumpPair bump(epsilon);
    timelike_displacement(g, p);

    std::vector<CurveSample> out;
    out.reserve(static_cast<std::size_t>(samples_per_unit) + 1);
    int orientation = 0;
    for (int k = 0; k <= samples_per_unit; ++k) {
        const double t = static_cast<double>(k) / samples_per_unit;
        CurveSample s = smooth_orbit_point(g, p, bump, t);
        const double b = lorentz_square(s.tangent);
        const int sign = s.tangent.z() > 0.0 ? 1 : -1;
        if (!(b < -1e-12 * dot(s.tangent, s.tangent)) || (orientation != 0 && sign != orientation)) {
            throw TangentNotTimelikeError(t);
        }
        orientation = sign;
        out.push_back(s);
    }
    return out;
}

ClosureReport certify_closed_in_quotient(const Isometry& g, const std::vector<CurveSample>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("need at least two samples");
    const CurveSample& first = samples.front();
    const CurveSample& last = samples.back();

    ClosureReport r;
    r.position_residual = (g(first.position) - last.position).norm();
    r.tangent_residual = (g.linear() * first.tangent - last.tangent).norm();
    r.max_tangent_b = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) r.max_tangent_b = std::max(r.max_tangent_b, lorentz_square(s.tangent));

    const double pos_tol = 1e-9 * (1.0 + last.position.from_origin().norm());
    const double tan_tol = 1e-9 * (1.0 + last.tangent.norm());
    if (r.position_residual > pos_tol || r.tangent_residual > tan_tol) {
        throw NotClosedError(std::max(r.position_residual, r.tangent_residual));
    }
    return r;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveSample>& samples) {
    out << "t,x,y,z,tx,ty,tz,B_tangent\n";
    char buf[64];
    const auto put = [&](double x, char sep) {
        if (x == 0.0) x = 0.0;
        std::snprintf(buf, sizeof buf, "%.12g%c", x, sep);
        out << buf;
    };
    for (const auto& s : samples) {
        put(s.t, ',');
        put(s.position.x(), ',');
        put(s.position.y(), ',');
        put(s.position.z(), ',');
        put(s.tangent.x(), ',');
        put(s.tangent.y(), ',');
        put(s.tangent.z(), ',');
        put(lorentz_square(s.tangent), '\n');
    }
}

}  // namespace flatctc
