#include "flatctc/minkowski.hpp"

#include <algorithm>
#include <stdexcept>

#include "flatctc/errors.hpp"

namespace flatctc {

namespace {

void require_finite(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::domain_error("non-finite coordinate");
    }
}

}  // namespace

MVec::MVec(double x, double y, double z) : c_{x, y, z} { require_finite(x, y, z); }

double MVec::max_abs() const noexcept {
    return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
}

MVec& MVec::operator+=(const MVec& o) noexcept {
    for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
}

MVec& MVec::operator-=(const MVec& o) noexcept {
    for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
}

MVec& MVec::operator*=(double s) noexcept {
    for (auto& x : c_) x *= s;
    return *this;
}

MPoint::MPoint(double x, double y, double z) : c_{x, y, z} { require_finite(x, y, z); }

Mat3 Mat3::from_columns(const MVec& c0, const MVec& c1, const MVec& c2) noexcept {
    return Mat3{{c0.x(), c1.x(), c2.x(), c0.y(), c1.y(), c2.y(), c0.z(), c1.z(), c2.z()}};
}

Mat3 Mat3::from_rows(const std::array<std::array<double, 3>, 3>& rows) {
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (!std::isfinite(rows[r][c])) throw std::domain_error("non-finite matrix entry");
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

double Mat3::det() const noexcept {
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Mat3 Mat3::transpose() const noexcept {
    return Mat3{{a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]}};
}

Mat3 Mat3::inverse() const {
    const double d = det();
    const double scale = std::max(max_abs(), 1e-300);
    if (!std::isfinite(d) || std::abs(d) <= 1e-14 * scale * scale * scale) throw SingularMapError();
    Mat3 adj{{
        a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
        a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
        a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3],
    }};
    return (1.0 / d) * adj;
}

double Mat3::max_abs() const noexcept {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

Mat3 operator*(const Mat3& l, const Mat3& r) noexcept {
    Mat3 out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j) + l(i, 2) * r(2, j);
        }
    }
    return out;
}

MVec operator*(const Mat3& m, const MVec& v) noexcept {
    return MVec::unchecked(m(0, 0) * v.x() + m(0, 1) * v.y() + m(0, 2) * v.z(),
                           m(1, 0) * v.x() + m(1, 1) * v.y() + m(1, 2) * v.z(),
                           m(2, 0) * v.x() + m(2, 1) * v.y() + m(2, 2) * v.z());
}

Mat3 operator+(const Mat3& l, const Mat3& r) noexcept {
    Mat3 out;
    for (int i = 0; i < 9; ++i) out.a[i] = l.a[i] + r.a[i];
    return out;
}

Mat3 operator-(const Mat3& l, const Mat3& r) noexcept {
    Mat3 out;
    for (int i = 0; i < 9; ++i) out.a[i] = l.a[i] - r.a[i];
    return out;
}

Mat3 operator*(double s, const Mat3& m) noexcept {
    Mat3 out;
    for (int i = 0; i < 9; ++i) out.a[i] = s * m.a[i];
    return out;
}

std::string_view to_string(CausalKind k) noexcept {
    switch (k) {
        case CausalKind::Timelike: return "timelike";
        case CausalKind::Lightlike: return "lightlike";
        case CausalKind::Spacelike: return "spacelike";
        case CausalKind::Zero: return "zero";
    }
    return "unknown";
}

std::string_view to_string(TimeOrientation o) noexcept {
    switch (o) {
        case TimeOrientation::Future: return "future";
        case TimeOrientation::Past: return "past";
        case TimeOrientation::None: return "none";
    }
    return "unknown";
}

CausalClass causal_class(const MVec& v, double tol) {
    if (tol < 0.0) throw std::invalid_argument("causal_class: negative tolerance");
    if (v.max_abs() <= tol) return {CausalKind::Zero, TimeOrientation::None};

    const double b = lorentz_square(v);
    CausalClass out;
    if (b < -tol) {
        out.kind = CausalKind::Timelike;
    } else if (b > tol) {
        return {CausalKind::Spacelike, TimeOrientation::None};
    } else {
        out.kind = CausalKind::Lightlike;
    }
    if (v.z() > 0.0) {
        out.orientation = TimeOrientation::Future;
    } else if (v.z() < 0.0) {
        out.orientation = TimeOrientation::Past;
    } else {
        // Only reachable for near-null vectors with z == 0, i.e. inside the band.
        out.orientation = TimeOrientation::None;
    }
    return out;
}

int orientation_det(const MVec& a, const MVec& b, const MVec& c) noexcept {
    const double d = Mat3::from_columns(a, b, c).det();
    return (d > 0.0) - (d < 0.0);
}

MVec cross(const MVec& a, const MVec& b) noexcept {
    return MVec::unchecked(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
                           a.x() * b.y() - a.y() * b.x());
}

double lorentz_residual(const Mat3& g) noexcept {
    const Mat3 j = Mat3::lorentz_metric();
    return (g.transpose() * j * g - j).max_abs();
}

}  // namespace flatctc
