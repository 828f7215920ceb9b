#pragma once

// Vectors, points and 3x3 matrices over R^{2,1}, with the signature (2,1)
// form B(v,w) = v.x*w.x + v.y*w.y - v.z*w.z. The third coordinate is the
// timelike one; positive z is the future.

#include <array>
#include <cmath>
#include <string_view>

namespace flatctc {

inline constexpr double kDefaultTol = 1e-9;

/// A translation vector of Minkowski space. Components are always finite.
class MVec {
public:
    constexpr MVec() = default;
    MVec(double x, double y, double z);

    constexpr double x() const noexcept { return c_[0]; }
    constexpr double y() const noexcept { return c_[1]; }
    constexpr double z() const noexcept { return c_[2]; }
    constexpr double operator[](int i) const noexcept { return c_[i]; }

    /// Euclidean norm of the coordinate triple.
    double norm() const noexcept { return std::sqrt(c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2]); }
    double max_abs() const noexcept;

    MVec& operator+=(const MVec& o) noexcept;
    MVec& operator-=(const MVec& o) noexcept;
    MVec& operator*=(double s) noexcept;

    friend MVec operator+(MVec a, const MVec& b) noexcept { return a += b; }
    friend MVec operator-(MVec a, const MVec& b) noexcept { return a -= b; }
    friend MVec operator-(const MVec& a) noexcept { return unchecked(-a.c_[0], -a.c_[1], -a.c_[2]); }
    friend MVec operator*(double s, MVec a) noexcept { return a *= s; }
    friend MVec operator*(MVec a, double s) noexcept { return a *= s; }
    friend MVec operator/(MVec a, double s) noexcept { return a *= 1.0 / s; }
    friend bool operator==(const MVec&, const MVec&) = default;

    /// Builds a vector without the finiteness check; for results of
    /// arithmetic on values that were already validated.
    static constexpr MVec unchecked(double x, double y, double z) noexcept {
        MVec v;
        v.c_ = {x, y, z};
        return v;
    }

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
};

/// An affine point of Minkowski space. Only point - point and
/// point +/- vector are defined.
class MPoint {
public:
    constexpr MPoint() = default;
    MPoint(double x, double y, double z);
    static MPoint origin() noexcept { return MPoint(); }
    static MPoint from_vector(const MVec& v) noexcept { return MPoint::unchecked(v.x(), v.y(), v.z()); }

    constexpr double x() const noexcept { return c_[0]; }
    constexpr double y() const noexcept { return c_[1]; }
    constexpr double z() const noexcept { return c_[2]; }
    constexpr double operator[](int i) const noexcept { return c_[i]; }

    /// Position relative to the coordinate origin.
    MVec from_origin() const noexcept { return MVec::unchecked(c_[0], c_[1], c_[2]); }

    friend MVec operator-(const MPoint& a, const MPoint& b) noexcept {
        return MVec::unchecked(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]);
    }
    friend MPoint operator+(const MPoint& p, const MVec& v) noexcept {
        return unchecked(p.c_[0] + v.x(), p.c_[1] + v.y(), p.c_[2] + v.z());
    }
    friend MPoint operator-(const MPoint& p, const MVec& v) noexcept {
        return unchecked(p.c_[0] - v.x(), p.c_[1] - v.y(), p.c_[2] - v.z());
    }
    friend bool operator==(const MPoint&, const MPoint&) = default;

    static constexpr MPoint unchecked(double x, double y, double z) noexcept {
        MPoint p;
        p.c_ = {x, y, z};
        return p;
    }

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
};

/// Row-major 3x3 real matrix.
struct Mat3 {
    std::array<double, 9> a{};

    static constexpr Mat3 identity() noexcept { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
    static constexpr Mat3 zero() noexcept { return Mat3{}; }
    /// Signature matrix diag(1, 1, -1).
    static constexpr Mat3 lorentz_metric() noexcept { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, -1}}; }
    static Mat3 from_columns(const MVec& c0, const MVec& c1, const MVec& c2) noexcept;
    static Mat3 from_rows(const std::array<std::array<double, 3>, 3>& rows);

    constexpr double operator()(int r, int c) const noexcept { return a[3 * r + c]; }
    constexpr double& operator()(int r, int c) noexcept { return a[3 * r + c]; }

    MVec column(int c) const noexcept { return MVec::unchecked(a[c], a[3 + c], a[6 + c]); }
    MVec row(int r) const noexcept { return MVec::unchecked(a[3 * r], a[3 * r + 1], a[3 * r + 2]); }

    double trace() const noexcept { return a[0] + a[4] + a[8]; }
    double det() const noexcept;
    Mat3 transpose() const noexcept;
    /// Inverse by adjugate; throws SingularMapError if |det| is below
    /// 1e-14 relative to the entry scale.
    Mat3 inverse() const;
    double max_abs() const noexcept;

    friend Mat3 operator*(const Mat3& l, const Mat3& r) noexcept;
    friend MVec operator*(const Mat3& m, const MVec& v) noexcept;
    friend Mat3 operator+(const Mat3& l, const Mat3& r) noexcept;
    friend Mat3 operator-(const Mat3& l, const Mat3& r) noexcept;
    friend Mat3 operator*(double s, const Mat3& m) noexcept;
    friend bool operator==(const Mat3&, const Mat3&) = default;
};

enum class CausalKind { Timelike, Lightlike, Spacelike, Zero };
enum class TimeOrientation { Future, Past, None };

struct CausalClass {
    CausalKind kind = CausalKind::Zero;
    TimeOrientation orientation = TimeOrientation::None;

    friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

std::string_view to_string(CausalKind k) noexcept;
std::string_view to_string(TimeOrientation o) noexcept;

/// The Lorentzian form x*u + y*v - z*w.
constexpr double bilinear(const MVec& v, const MVec& w) noexcept {
    return v.x() * w.x() + v.y() * w.y() - v.z() * w.z();
}

constexpr double lorentz_square(const MVec& v) noexcept { return bilinear(v, v); }

/// Causal class with an absolute band `tol` on B(v,v). A vector whose
/// components all lie within `tol` of zero is Zero.
CausalClass causal_class(const MVec& v, double tol = kDefaultTol);

/// Sign (-1, 0, +1) of det[a b c] with a, b, c as columns.
int orientation_det(const MVec& a, const MVec& b, const MVec& c) noexcept;

/// Euclidean cross product.
MVec cross(const MVec& a, const MVec& b) noexcept;

constexpr double dot(const MVec& a, const MVec& b) noexcept {
    return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

/// max |g^T J g - J|; zero exactly when g is in O(2,1).
double lorentz_residual(const Mat3& g) noexcept;

}  // namespace flatctc
