#include "flatctc/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flatctc/errors.hpp"

namespace flatctc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Kernel of a rank-2 matrix: the largest cross product of two rows.
MVec kernel_direction(const Mat3& m) {
    const MVec r0 = m.row(0), r1 = m.row(1), r2 = m.row(2);
    MVec best = cross(r0, r1);
    for (const MVec& c : {cross(r0, r2), cross(r1, r2)}) {
        if (c.norm() > best.norm()) best = c;
    }
    const double n = best.norm();
    if (n == 0.0 || !std::isfinite(n)) throw std::logic_error("kernel_direction: matrix has rank < 2");
    return best / n;
}

MVec future(const MVec& v) { return v.z() < 0.0 ? -v : v; }

Mat3 shift(const Mat3& g, double mu) {
    Mat3 m = g;
    for (int i = 0; i < 3; ++i) m(i, i) -= mu;
    return m;
}

}  // namespace

AffineMap AffineMap::inverse() const {
    const Mat3 inv = linear.inverse();
    return AffineMap{inv, -(inv * translation)};
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) noexcept {
    return AffineMap{outer.linear * inner.linear, outer.linear * inner.translation + outer.translation};
}

Isometry::Isometry(const Mat3& linear, const MVec& translation, Admit admit)
    : map_{linear, translation} {
    for (double x : linear.a) {
        if (!std::isfinite(x)) throw std::domain_error("non-finite matrix entry");
    }
    const double scale = std::max(1.0, linear.max_abs());
    const double residual = lorentz_residual(linear);
    if (residual > kLorentzTol * scale * scale) {
        throw NotLorentzError("linear part is not in O(2,1): |g^T J g - J| = " + std::to_string(residual),
                              residual);
    }
    if (admit == Admit::IdentityComponent) {
        if (linear.det() < 0.0) throw NotLorentzError("linear part reverses orientation", residual);
        if (linear(2, 2) <= 0.0) throw NotLorentzError("linear part reverses time orientation", residual);
    }
}

MPoint apply(const Isometry& g, const MPoint& p) noexcept { return g(p); }

Isometry compose(const Isometry& a, const Isometry& b) noexcept {
    const AffineMap m = compose(a.as_affine(), b.as_affine());
    return Isometry::unchecked(m.linear, m.translation);
}

Isometry inverse(const Isometry& g) noexcept {
    // g^{-1} = J g^T J for g in O(2,1).
    const Mat3 j = Mat3::lorentz_metric();
    const Mat3 inv = j * g.linear().transpose() * j;
    return Isometry::unchecked(inv, -(inv * g.translation()));
}

Isometry power(const Isometry& g, long n) noexcept {
    Isometry base = n < 0 ? inverse(g) : g;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    Isometry acc = Isometry::identity();
    while (k > 0) {
        if (k & 1UL) acc = compose(acc, base);
        k >>= 1;
        if (k > 0) base = compose(base, base);
    }
    return acc;
}

Isometry conjugate(const Isometry& g, const Isometry& h) noexcept {
    return compose(compose(h, g), inverse(h));
}

AffineMap conjugate(const AffineMap& g, const AffineMap& h) {
    return compose(compose(h, g), h.inverse());
}

std::string_view to_string(IsometryKind k) noexcept {
    switch (k) {
        case IsometryKind::Identity: return "Identity";
        case IsometryKind::Hyperbolic: return "Hyperbolic";
        case IsometryKind::Parabolic: return "Parabolic";
        case IsometryKind::Elliptic: return "Elliptic";
    }
    return "Unknown";
}

std::optional<MPoint> fixed_point(const Isometry& g) {
    // Solve (g - I) x = -v with full pivoting; free variables are set to 0.
    Mat3 a = shift(g.linear(), 1.0);
    std::array<double, 3> b{-g.translation().x(), -g.translation().y(), -g.translation().z()};
    std::array<int, 3> col{0, 1, 2};
    const double rank_tol = 1e-10 * std::max(1.0, a.max_abs());

    int rank = 0;
    for (int k = 0; k < 3; ++k) {
        int pr = k, pc = k;
        double best = 0.0;
        for (int r = k; r < 3; ++r) {
            for (int c = k; c < 3; ++c) {
                if (std::abs(a(r, c)) > best) {
                    best = std::abs(a(r, c));
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best <= rank_tol) break;
        if (pr != k) {
            for (int c = 0; c < 3; ++c) std::swap(a(pr, c), a(k, c));
            std::swap(b[pr], b[k]);
        }
        if (pc != k) {
            for (int r = 0; r < 3; ++r) std::swap(a(r, pc), a(r, k));
            std::swap(col[pc], col[k]);
        }
        for (int r = k + 1; r < 3; ++r) {
            const double f = a(r, k) / a(k, k);
            for (int c = k; c < 3; ++c) a(r, c) -= f * a(k, c);
            b[r] -= f * b[k];
        }
        ++rank;
    }

    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (int k = rank - 1; k >= 0; --k) {
        double s = b[k];
        for (int c = k + 1; c < rank; ++c) s -= a(k, c) * y[c];
        y[k] = s / a(k, k);
    }
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) x[col[k]] = y[k];

    const MPoint candidate = MPoint::unchecked(x[0], x[1], x[2]);
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(x[2])) return std::nullopt;
    const double residual = (g(candidate) - candidate).max_abs();
    if (residual <= 1e-8 * (1.0 + g.translation().norm())) return candidate;
    return std::nullopt;
}

IsometryClass classify(const Isometry& g, double tol_tr) {
    IsometryClass out;
    out.trace = g.linear().trace();
    const double gap = out.trace - 3.0;

    if (std::abs(gap) <= tol_tr && (g.linear() - Mat3::identity()).max_abs() <= kLorentzTol) {
        out.kind = IsometryKind::Identity;
        out.has_fixed_point = g.translation().max_abs() <= 1e-8;
        out.fixed_set = out.has_fixed_point ? FixedSet::All : FixedSet::None;
        return out;
    }

    if (gap > tol_tr) {
        out.kind = IsometryKind::Hyperbolic;
    } else if (gap < -tol_tr) {
        out.kind = IsometryKind::Elliptic;
    } else {
        out.kind = IsometryKind::Parabolic;
    }
    out.marginal = std::abs(gap) > 0.01 * tol_tr && std::abs(gap) <= 100.0 * tol_tr;
    out.has_fixed_point = fixed_point(g).has_value();
    out.fixed_set = out.has_fixed_point ? FixedSet::Line : FixedSet::None;
    return out;
}

EigenFrame eigenframe(const Mat3& g, double tol_tr) {
    const double tr = g.trace();
    if (!(tr > 3.0 + tol_tr)) throw NotHyperbolicError();

    // Characteristic polynomial (x - 1)(x^2 - (tr - 1) x + 1).
    const double s = tr - 1.0;
    EigenFrame f;
    f.lambda = 2.0 / (s + std::sqrt(s * s - 4.0));

    const MVec n_minus = future(kernel_direction(shift(g, f.lambda)));
    const MVec n_plus = future(kernel_direction(shift(g, 1.0 / f.lambda)));

    // Fix B(x-, x+) = -1 and split the scale so both have the same z.
    const double beta = bilinear(n_minus, n_plus);
    const double a = std::sqrt(n_plus.z() / (-beta * n_minus.z()));
    const double b = a * n_minus.z() / n_plus.z();
    f.x_minus = a * n_minus;
    f.x_plus = b * n_plus;

    MVec axis = kernel_direction(shift(g, 1.0));
    axis = axis / std::sqrt(lorentz_square(axis));
    if (orientation_det(f.x_minus, f.x_plus, axis) < 0) axis = -axis;
    f.x_null_axis = axis;
    return f;
}

double margulis_alpha(const Isometry& g) {
    const EigenFrame f = eigenframe(g.linear());
    const double alpha = bilinear(g.translation(), f.x_null_axis);

    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    const double tol = 1e-9 * (1.0 + g.translation().norm() + 10.0 * g.linear().max_abs() * f.x_null_axis.norm());
    for (int i = 0; i < 3; ++i) {
        const MPoint p(coord(rng), coord(rng), coord(rng));
        const double at_p = bilinear(g(p) - p, f.x_null_axis);
        if (std::abs(at_p - alpha) > tol) {
            throw std::logic_error("margulis_alpha: value depends on the base point");
        }
    }
    return alpha;
}

InvariantLine invariant_line(const Isometry& g) {
    const EigenFrame f = eigenframe(g.linear());
    const MVec v = f.coordinates(g.translation());
    const double q_minus = v.x() / (1.0 - f.lambda);
    const double q_plus = -v.y() / (1.0 / f.lambda - 1.0);
    return InvariantLine{MPoint::from_vector(q_minus * f.x_minus + q_plus * f.x_plus), f.x_null_axis};
}

double line_distance(const InvariantLine& a, const InvariantLine& b) noexcept {
    const auto point_to_line = [](const MPoint& p, const InvariantLine& l) {
        const MVec d = l.direction / l.direction.norm();
        const MVec w = p - l.base;
        return (w - dot(w, d) * d).norm();
    };
    const MVec da = a.direction / a.direction.norm();
    const MVec db = b.direction / b.direction.norm();
    const double dir = std::min((da - db).norm(), (da + db).norm());
    return std::max({point_to_line(a.base, b), point_to_line(b.base, a), dir});
}

AffineMap hyperbolic_canonical(double lambda, double alpha) noexcept {
    return AffineMap{Mat3{{lambda, 0, 0, 0, 1.0 / lambda, 0, 0, 0, 1}}, MVec::unchecked(0, 0, alpha)};
}

AffineMap parabolic_canonical(double tau) noexcept {
    return AffineMap{Mat3{{1, kSqrt2, 1, 0, 1, kSqrt2, 0, 0, 1}}, MVec::unchecked(0, 0, tau)};
}

AffineMap elliptic_canonical(double theta, double t) noexcept {
    return AffineMap{rotation_xy(theta), MVec::unchecked(0, 0, t)};
}

AffineMap NormalForm::canonical() const {
    return std::visit(
        [](const auto& p) -> AffineMap {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, HyperbolicForm>) {
                return hyperbolic_canonical(p.lambda, p.alpha);
            } else if constexpr (std::is_same_v<T, ParabolicForm>) {
                return parabolic_canonical(p.tau);
            } else {
                return elliptic_canonical(p.theta, p.t);
            }
        },
        params);
}

namespace {

// Standard -> adapted coordinates given the coordinate functional rows and
// the adapted origin.
AffineMap make_chart(const Mat3& functional, const MPoint& origin) {
    return AffineMap{functional, -(functional * origin.from_origin())};
}

NormalForm hyperbolic_normal_form(const Isometry& g) {
    const EigenFrame f = eigenframe(g.linear());
    const InvariantLine line = invariant_line(g);
    const Mat3 j = Mat3::lorentz_metric();
    // Rows: -J x+, -J x-, J x0 (see EigenFrame::coordinates).
    const Mat3 functional = Mat3::from_columns(-(j * f.x_plus), -(j * f.x_minus), j * f.x_null_axis).transpose();
    NormalForm nf{HyperbolicForm{f.lambda, margulis_alpha(g)}, make_chart(functional, line.base)};
    return nf;
}

NormalForm parabolic_normal_form(const Isometry& g) {
    const Mat3& lin = g.linear();
    const Mat3 n = shift(lin, 1.0);
    const Mat3 n2 = n * n;

    // The image of (g - I)^2 is the fixed null line.
    MVec x0 = n2.column(0);
    for (int c = 1; c < 3; ++c) {
        if (n2.column(c).norm() > x0.norm()) x0 = n2.column(c);
    }
    x0 = future(x0 / x0.norm());

    const MVec w = MVec::unchecked(-x0.x(), -x0.y(), x0.z());
    MVec x2 = w / (-bilinear(x0, w));

    const Mat3 j = Mat3::lorentz_metric();
    MVec x1 = cross(j * x0, j * x2);
    x1 = x1 / std::sqrt(lorentz_square(x1));
    if (orientation_det(x0, x1, x2) < 0) x1 = -x1;

    // g x1 = x1 + a x0; the x0-coordinate of u is -B(u, x2).
    bool positive = true;
    double a = -bilinear(lin * x1, x2);
    if (a < 0.0) {
        x1 = -x1;
        a = -a;
        positive = false;
    }
    const double k = a / kSqrt2;
    x0 = k * x0;
    x2 = x2 / k;

    const Mat3 functional = Mat3::from_columns(-(j * x2), j * x1, -(j * x0)).transpose();
    const MVec v = functional * g.translation();
    const double o2 = -v.y() / kSqrt2;
    const double o1 = (-v.x() - o2) / kSqrt2;
    const MPoint origin = MPoint::from_vector(o1 * x1 + o2 * x2);

    NormalForm nf{ParabolicForm{v.z()}, make_chart(functional, origin)};
    nf.positively_oriented = positive;
    return nf;
}

NormalForm elliptic_normal_form(const Isometry& g) {
    const Mat3& lin = g.linear();
    const Mat3 j = Mat3::lorentz_metric();

    MVec e3 = kernel_direction(shift(lin, 1.0));
    e3 = future(e3 / std::sqrt(-lorentz_square(e3)));

    const auto project = [&](const MVec& u) { return u + bilinear(u, e3) * e3; };
    MVec e1 = project(MVec::unchecked(1, 0, 0));
    const MVec alt = project(MVec::unchecked(0, 1, 0));
    if (lorentz_square(alt) > lorentz_square(e1)) e1 = alt;
    e1 = e1 / std::sqrt(lorentz_square(e1));

    MVec e2 = cross(j * e1, j * e3);
    e2 = e2 / std::sqrt(lorentz_square(e2));
    if (orientation_det(e1, e2, e3) < 0) e2 = -e2;

    const Mat3 functional = Mat3::from_columns(j * e1, j * e2, -(j * e3)).transpose();
    const Mat3 basis = Mat3::from_columns(e1, e2, e3);
    const Mat3 m = functional * lin * basis;
    double theta = std::atan2(m(0, 1), m(0, 0));
    if (theta <= -std::numbers::pi) theta = std::numbers::pi;

    const MVec v = functional * g.translation();
    // (R - I) o = -(v1, v2) on the rotation plane.
    const double c = std::cos(theta) - 1.0, s = std::sin(theta);
    const double det = c * c + s * s;
    const double o1 = (-c * v.x() + s * v.y()) / det;
    const double o2 = (-s * v.x() - c * v.y()) / det;
    const MPoint origin = MPoint::from_vector(o1 * e1 + o2 * e2);

    return NormalForm{EllipticForm{theta, v.z()}, make_chart(functional, origin)};
}

}  // namespace

NormalForm normal_form(const Isometry& g, double tol_tr) {
    switch (classify(g, tol_tr).kind) {
        case IsometryKind::Identity: throw IdentityInputError();
        case IsometryKind::Hyperbolic: return hyperbolic_normal_form(g);
        case IsometryKind::Parabolic: return parabolic_normal_form(g);
        case IsometryKind::Elliptic: return elliptic_normal_form(g);
    }
    throw std::logic_error("normal_form: unreachable");
}

Mat3 boost_yz(double r) noexcept {
    const double c = std::cosh(r), s = std::sinh(r);
    return Mat3{{1, 0, 0, 0, c, s, 0, s, c}};
}

Mat3 boost_xz(double r) noexcept {
    const double c = std::cosh(r), s = std::sinh(r);
    return Mat3{{c, 0, s, 0, 1, 0, s, 0, c}};
}

Mat3 rotation_xy(double theta) noexcept {
    const double c = std::cos(theta), s = std::sin(theta);
    return Mat3{{c, s, 0, -s, c, 0, 0, 0, 1}};
}

Mat3 random_lorentz(std::mt19937_64& rng, double max_rapidity) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> rapidity(0.0, max_rapidity);
    return rotation_xy(angle(rng)) * boost_xz(rapidity(rng)) * rotation_xy(angle(rng));
}

}  // namespace flatctc
