#pragma once

// Affine isometries of Minkowski space: p -> g (p - 0) + v + 0.
//
// Classification follows the trace of the linear part: hyperbolic above 3,
// parabolic at 3 (non-identity), elliptic below 3. Hyperbolic elements carry
// an eigenframe {x-, x+, x0}, a Margulis invariant alpha, and an invariant
// line C parallel to x0 that the isometry translates by alpha * x0.

#include <optional>
#include <random>
#include <string_view>
#include <variant>

#include "flatctc/minkowski.hpp"

namespace flatctc {

inline constexpr double kLorentzTol = 1e-9;
inline constexpr double kTraceTol = 1e-8;

/// A general affine map x -> linear * x + translation. Used for conjugating
/// maps and canonical forms, which need not be Lorentzian.
struct AffineMap {
    Mat3 linear = Mat3::identity();
    MVec translation;

    MPoint apply(const MPoint& p) const noexcept {
        return MPoint::from_vector(linear * p.from_origin() + translation);
    }
    MVec apply_vector(const MVec& v) const noexcept { return linear * v; }
    AffineMap inverse() const;
    friend AffineMap compose(const AffineMap& outer, const AffineMap& inner) noexcept;
};

/// Whether an Isometry constructor accepts elements outside the identity
/// component G (orientation or time-orientation reversing).
enum class Admit { IdentityComponent, FullPoincare };

class Isometry {
public:
    Isometry() = default;
    /// Throws NotLorentzError when |g^T J g - J| > 1e-9 (times the entry
    /// scale), or when g leaves G and `admit` does not allow it.
    Isometry(const Mat3& linear, const MVec& translation, Admit admit = Admit::IdentityComponent);

    static Isometry identity() noexcept { return Isometry(); }
    static Isometry translation_by(const MVec& v) noexcept {
        return unchecked(Mat3::identity(), v);
    }
    /// Skips validation. For products and conjugates of validated elements.
    static Isometry unchecked(const Mat3& linear, const MVec& translation) noexcept {
        Isometry g;
        g.map_ = AffineMap{linear, translation};
        return g;
    }

    const Mat3& linear() const noexcept { return map_.linear; }
    const MVec& translation() const noexcept { return map_.translation; }
    const AffineMap& as_affine() const noexcept { return map_; }

    MPoint operator()(const MPoint& p) const noexcept { return map_.apply(p); }

private:
    AffineMap map_;
};

MPoint apply(const Isometry& g, const MPoint& p) noexcept;
/// apply(compose(a, b), p) == apply(a, apply(b, p)).
Isometry compose(const Isometry& a, const Isometry& b) noexcept;
Isometry inverse(const Isometry& g) noexcept;
/// Repeated squaring; negative n uses the inverse.
Isometry power(const Isometry& g, long n) noexcept;

/// h g h^{-1} for h in the Poincare group. Classification and alpha are
/// preserved.
Isometry conjugate(const Isometry& g, const Isometry& h) noexcept;
/// h g h^{-1} for a general invertible affine map (change of basis and
/// origin). Throws SingularMapError.
AffineMap conjugate(const AffineMap& g, const AffineMap& h);

enum class IsometryKind { Identity, Hyperbolic, Parabolic, Elliptic };
enum class FixedSet { None, Line, All };

std::string_view to_string(IsometryKind k) noexcept;

struct IsometryClass {
    IsometryKind kind = IsometryKind::Identity;
    bool has_fixed_point = true;
    FixedSet fixed_set = FixedSet::All;
    double trace = 3.0;
    /// |tr - 3| lies in (tol_tr / 100, 100 tol_tr]: close enough to the band
    /// edge that the kind could flip under a small perturbation.
    bool marginal = false;
};

IsometryClass classify(const Isometry& g, double tol_tr = kTraceTol);

/// A point solving g x + v = x when one exists, by full-pivot elimination
/// on (g - I) x = -v with residual threshold 1e-8 (1 + |v|).
std::optional<MPoint> fixed_point(const Isometry& g);

struct EigenFrame {
    MVec x_minus;      ///< future null, eigenvalue lambda
    MVec x_plus;       ///< future null, eigenvalue 1/lambda
    MVec x_null_axis;  ///< unit spacelike, eigenvalue 1
    double lambda = 1.0;

    /// Coordinates (c-, c+, c0) of v in the frame.
    MVec coordinates(const MVec& v) const noexcept {
        return MVec::unchecked(-bilinear(v, x_plus), -bilinear(v, x_minus), bilinear(v, x_null_axis));
    }
    Mat3 basis() const noexcept { return Mat3::from_columns(x_minus, x_plus, x_null_axis); }
};

/// Closed-form eigenframe of a hyperbolic linear part.
/// Throws NotHyperbolicError if tr(g) <= 3 + tol_tr.
EigenFrame eigenframe(const Mat3& g, double tol_tr = kTraceTol);

/// B(g(p) - p, x0), checked for agreement at three random points.
double margulis_alpha(const Isometry& g);

struct InvariantLine {
    MPoint base;
    MVec direction;

    MPoint at(double s) const noexcept { return base + s * direction; }
};

InvariantLine invariant_line(const Isometry& g);

/// Euclidean distance between two lines, taken as the larger of the two
/// point-to-line distances of the base points, plus the direction mismatch.
double line_distance(const InvariantLine& a, const InvariantLine& b) noexcept;

struct HyperbolicForm {
    double lambda;
    double alpha;
};
struct ParabolicForm {
    double tau;
};
struct EllipticForm {
    double theta;  ///< in (-pi, pi]
    double t;
};

/// Canonical parameters plus the change of coordinates `to_canonical`
/// (standard coordinates -> adapted coordinates) such that
/// to_canonical * g * to_canonical^{-1} == canonical().
struct NormalForm {
    std::variant<HyperbolicForm, ParabolicForm, EllipticForm> params;
    AffineMap to_canonical;
    /// Parabolic only: false when the adapted basis had to be taken with
    /// negative orientation to bring the off-diagonal entry to +sqrt(2).
    bool positively_oriented = true;

    AffineMap canonical() const;
    AffineMap from_canonical() const { return to_canonical.inverse(); }
};

/// Throws IdentityInputError for an identity linear part.
NormalForm normal_form(const Isometry& g, double tol_tr = kTraceTol);

/// Canonical matrices in adapted coordinates.
AffineMap hyperbolic_canonical(double lambda, double alpha) noexcept;
AffineMap parabolic_canonical(double tau) noexcept;
AffineMap elliptic_canonical(double theta, double t) noexcept;

/// Lorentz boost in the (y, z) plane with rapidity `rapidity`.
Mat3 boost_yz(double rapidity) noexcept;
/// Lorentz boost in the (x, z) plane.
Mat3 boost_xz(double rapidity) noexcept;
/// Rotation of the (x, y) plane in the convention (x, y) -> (x cos + y sin, -x sin + y cos).
Mat3 rotation_xy(double theta) noexcept;

/// Uniformly-ish random element of G: rotation * boost * rotation with
/// rapidity in [0, max_rapidity].
Mat3 random_lorentz(std::mt19937_64& rng, double max_rapidity = 1.5);

}  // namespace flatctc
