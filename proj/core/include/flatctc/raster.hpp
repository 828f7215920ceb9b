#pragma once

// Cross-section rasters of T/L/S labels over a planar grid.

#include <iosfwd>
#include <string>
#include <vector>

#include "flatctc/groups.hpp"
#include "flatctc/regions.hpp"

namespace flatctc {

/// An affine plane base + u * u_axis + v * v_axis.
struct Plane {
    MPoint base;
    MVec u_axis = MVec::unchecked(1, 0, 0);
    MVec v_axis = MVec::unchecked(0, 1, 0);

    MPoint at(double u, double v) const noexcept { return base + u * u_axis + v * v_axis; }
};

/// Plane through the invariant line of a hyperbolic element spanned by
/// x-, x+, so that (u, v) are the eigenframe coordinates (p-, p+).
Plane eigenplane(const Isometry& hyperbolic);

struct GridSpec {
    Plane plane;
    double u_min = -1.0, u_max = 1.0;
    double v_min = -1.0, v_max = 1.0;
    int res_u = 2, res_v = 2;
    long max_power = 1;
    int max_word_len = 1;

    /// Throws std::invalid_argument: resolution below 2, empty range, or
    /// bounds below 1.
    void validate() const;
    double u_at(int i) const noexcept { return u_min + (u_max - u_min) * i / (res_u - 1); }
    double v_at(int j) const noexcept { return v_min + (v_max - v_min) * j / (res_v - 1); }
};

struct RasterCell {
    int i = 0, j = 0;
    double u = 0.0, v = 0.0;
    Region label = Region::S;
    bool fixed_point = false;
    /// Least timelike power (cyclic) or witness word (group); empty unless T.
    std::string witness;
};

struct Raster {
    GridSpec grid;
    /// Row-major in j, then i: cells[j * res_u + i].
    std::vector<RasterCell> cells;

    const RasterCell& at(int i, int j) const { return cells.at(static_cast<std::size_t>(j) * grid.res_u + i); }
    std::size_t count(Region r) const noexcept;
};

/// Cyclic group: for each node, the least n in [1, max_power] with the node
/// in T(g^n); otherwise L if some power is lightlike there, else S. The
/// result does not depend on `threads`.
Raster cross_section_raster(const Isometry& g, const GridSpec& grid, double tol = kDefaultTol, int threads = 1);

/// Group: first witness over reduced words up to max_word_len and powers up
/// to max_power, in search order.
Raster cross_section_raster(const GroupPresentation& group, const GridSpec& grid, double tol = kDefaultTol,
                            int threads = 1);

struct SvgStyle {
    std::string color_t = "#d62728";
    std::string color_l = "#7f7f7f";
    std::string color_s = "#1f77b4";
    int cell_size = 8;
};

/// Header "i,j,u,v,label,witness".
void write_raster_csv(std::ostream& out, const Raster& raster);
/// One rect per cell; v grows upward.
void write_raster_svg(std::ostream& out, const Raster& raster, const SvgStyle& style = {});

}  // namespace flatctc
