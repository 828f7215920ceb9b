#include "flatctc/raster.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace flatctc {

Plane eigenplane(const Isometry& hyperbolic) {
    const EigenFrame f = eigenframe(hyperbolic.linear());
    return Plane{invariant_line(hyperbolic).base, f.x_minus, f.x_plus};
}

void GridSpec::validate() const {
    if (res_u < 2 || res_v < 2) throw std::invalid_argument("grid resolution must be at least 2 in each direction");
    if (!(u_max > u_min) || !(v_max > v_min)) throw std::invalid_argument("grid range is empty");
    if (max_power < 1) throw std::invalid_argument("max power must be >= 1");
    if (max_word_len < 1) throw std::invalid_argument("max word length must be >= 1");
}

std::size_t Raster::count(Region r) const noexcept {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.label == r;
    return n;
}

namespace {

// Fills every cell with `eval`, striding rows across threads. Each cell is
// written exactly once, so the output does not depend on scheduling.
Raster fill(const GridSpec& grid, int threads, const std::function<void(RasterCell&, const MPoint&)>& eval) {
    grid.validate();
    Raster out{grid, {}};
    out.cells.resize(static_cast<std::size_t>(grid.res_u) * grid.res_v);
    for (int j = 0; j < grid.res_v; ++j) {
        for (int i = 0; i < grid.res_u; ++i) {
            RasterCell& c = out.cells[static_cast<std::size_t>(j) * grid.res_u + i];
            c.i = i;
            c.j = j;
            c.u = grid.u_at(i);
            c.v = grid.v_at(j);
        }
    }

    const auto run_rows = [&](int first, int stride) {
        for (int j = first; j < grid.res_v; j += stride) {
            for (int i = 0; i < grid.res_u; ++i) {
                RasterCell& c = out.cells[static_cast<std::size_t>(j) * grid.res_u + i];
                eval(c, grid.plane.at(c.u, c.v));
            }
        }
    };

    threads = std::max(1, std::min(threads, grid.res_v));
    if (threads == 1) {
        run_rows(0, 1);
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                run_rows(t, threads);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace

Raster cross_section_raster(const Isometry& g, const GridSpec& grid, double tol, int threads) {
    std::vector<Isometry> powers;
    for (long n = 1; n <= grid.max_power; ++n) powers.push_back(power(g, n));

    return fill(grid, threads, [&](RasterCell& cell, const MPoint& p) {
        bool lightlike = false;
        bool fixed = false;
        for (std::size_t k = 0; k < powers.size(); ++k) {
            const CausalClass c = causal_class(displacement(powers[k], p), tol);
            if (c.kind == CausalKind::Timelike) {
                cell.label = Region::T;
                cell.witness = std::to_string(k + 1);
                return;
            }
            if (c.kind == CausalKind::Lightlike || c.kind == CausalKind::Zero) {
                if (!lightlike) fixed = c.kind == CausalKind::Zero;
                lightlike = true;
            }
        }
        cell.label = lightlike ? Region::L : Region::S;
        cell.fixed_point = fixed;
    });
}

Raster cross_section_raster(const GroupPresentation& group, const GridSpec& grid, double tol, int threads) {
    grid.validate();
    const std::vector<WordElement> words = enumerate_words(group, grid.max_word_len);
    std::vector<WordTester> testers;
    testers.reserve(words.size());
    for (const auto& w : words) testers.emplace_back(w.element);

    return fill(grid, threads, [&](RasterCell& cell, const MPoint& p) {
        if (auto w = group_ctc_search(words, testers, p, grid.max_power)) {
            cell.label = Region::T;
            cell.witness = w->to_string(&group);
            return;
        }
        cell.label = Region::S;
        for (const auto& we : words) {
            const CausalClass c = causal_class(displacement(we.element, p), tol);
            if (c.kind == CausalKind::Lightlike || c.kind == CausalKind::Zero) {
                cell.label = Region::L;
                cell.fixed_point = c.kind == CausalKind::Zero;
                break;
            }
        }
    });
}

namespace {

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

void write_raster_csv(std::ostream& out, const Raster& raster) {
    out << "i,j,u,v,label,witness\n";
    for (const auto& c : raster.cells) {
        out << c.i << ',' << c.j << ',' << fmt_double(c.u) << ',' << fmt_double(c.v) << ',' << to_string(c.label)
            << ',' << c.witness << '\n';
    }
}

void write_raster_svg(std::ostream& out, const Raster& raster, const SvgStyle& style) {
    const int w = raster.grid.res_u * style.cell_size;
    const int h = raster.grid.res_v * style.cell_size;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << ' ' << h << "\" shape-rendering=\"crispEdges\">\n";
    for (const auto& c : raster.cells) {
        const std::string& fill = c.label == Region::T   ? style.color_t
                                  : c.label == Region::L ? style.color_l
                                                         : style.color_s;
        const int x = c.i * style.cell_size;
        const int y = (raster.grid.res_v - 1 - c.j) * style.cell_size;
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << style.cell_size << "\" height=\""
            << style.cell_size << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace flatctc
