// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Reference values come from the oracles in oracles.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flatctc/curves.hpp"
#include "flatctc/groups.hpp"
#include "flatctc/raster.hpp"
#include "flatctc/regions.hpp"
#include "oracles.hpp"

#ifdef FLATCTC_HAVE_CLI
#include "cli.hpp"
#endif

using namespace flatctc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Region label_from_b(double b, double band) {
    if (b < -band) return Region::T;
    if (b > band) return Region::S;
    return Region::L;
}

const GroupPresentation kTorus = torus_example();
const Isometry& g1() { return kTorus.generators[0].element; }
const Isometry& g2() { return kTorus.generators[1].element; }

// 1. Classification fixture.
Outcome classification_fixture() {
    const auto t0 = Clock::now();
    const IsometryClass c1 = classify(g1());
    const IsometryClass c2 = classify(g2());
    const double elapsed = ms_since(t0);
    const double square = (g2().linear() - g1().linear() * g1().linear()).max_abs();
    Outcome o;
    o.pass = c1.kind == IsometryKind::Hyperbolic && c2.kind == IsometryKind::Hyperbolic &&
             std::abs(c1.trace - 4) <= 1e-12 && std::abs(c2.trace - 8) <= 1e-12 && square <= 1e-12 && elapsed < 1.0;
    o.detail = fmt("tr = %.15g, %.15g; |g2 - g1^2| = %.1e; %.3f ms", c1.trace, c2.trace, square, elapsed);
    return o;
}

// 2. Eigenframe and Margulis invariant against brute force.
Outcome eigenframe_alpha() {
    const double lambda = eigenframe(g1().linear()).lambda;
    const double root = oracle::smallest_root_below_one(g1().linear()).value_or(-1);
    const double alpha = margulis_alpha(g1());
    std::mt19937_64 rng(2024);
    double spread = 0.0;
    for (int i = 0; i < 3; ++i) {
        const MPoint p = oracle::random_point(rng, 10);
        const oracle::V d = oracle::iterate_displacement(g1(), oracle::to_v(p), 1);
        spread = std::max(spread, std::abs(oracle::B(d, {1, 0, 0}) - alpha));
    }
    const double exact = (3 - std::sqrt(5.0)) / 2;
    Outcome o;
    o.pass = std::abs(lambda - exact) <= 1e-9 && std::abs(lambda - root) <= 1e-9 && std::abs(alpha - 1) <= 1e-9 &&
             spread <= 1e-9;
    o.detail = fmt("lambda = %.15g (char poly %.15g), alpha = %.15g, oracle spread %.1e", lambda, root, alpha, spread);
    return o;
}

// 3. Hyperbolic threshold values and limit.
Outcome hyperbolic_threshold_values() {
    const HyperbolicRegionData d(g1());
    double worst_tail = 0.0;
    for (long n = 40; n <= 2000; ++n) worst_tail = std::max(worst_tail, std::abs(d.threshold(n)));
    const double t1 = d.threshold(1), t2 = d.threshold(2);
    Outcome o;
    o.pass = std::abs(t1 + 0.5) <= 1e-12 && std::abs(t2 + 0.4) <= 1e-12 && worst_tail < 1e-6;
    o.detail = fmt("threshold(1) = %.15g, threshold(2) = %.15g, max |threshold(n)| for 40 <= n <= 2000 = %.2e", t1,
                   t2, worst_tail);
    return o;
}

// 4. Closed forms against direct evaluation, 1e4 samples per class.
Outcome closed_form_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> power(1, 10);
    long mismatches[3] = {0, 0, 0}, skipped[3] = {0, 0, 0};
    constexpr int kSamples = 10000;
    for (int cls = 0; cls < 3; ++cls) {
        for (int i = 0; i < kSamples; ++i) {
            const long n = power(rng);
            const MPoint p = oracle::random_point(rng, 5);
            Isometry g;
            Region closed = Region::L;
            if (cls == 0) {
                g = fixtures::random_hyperbolic(rng);
                closed = hyperbolic_region_closed_form(g, p, n).region;
            } else if (cls == 1) {
                g = fixtures::random_parabolic(rng);
                const NormalForm nf = normal_form(g);
                const MPoint q = nf.to_canonical.apply(p);
                closed = parabolic_region_closed_form(std::get<ParabolicForm>(nf.params).tau, n, {q.x(), q.y(), q.z()})
                             .region;
            } else {
                g = fixtures::random_elliptic(rng);
                closed = elliptic_region_closed_form(g, p, n).region;
            }
            const oracle::V d = oracle::iterate_displacement(g, oracle::to_v(p), n);
            const double b = oracle::B(d, d);
            const double band = 1e-9 * (1 + d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            if (std::abs(b) <= band) {
                ++skipped[cls];
                continue;
            }
            mismatches[cls] += closed != label_from_b(b, band);
        }
    }
    const double elapsed = ms_since(t0);
    Outcome o;
    o.pass = mismatches[0] == 0 && mismatches[1] == 0 && mismatches[2] == 0 && elapsed < 5000;
    o.detail = fmt("mismatches hyperbolic/parabolic/elliptic = %g/%g/%g of 1e4 each; %.0f ms",
                   static_cast<double>(mismatches[0]), static_cast<double>(mismatches[1]),
                   static_cast<double>(mismatches[2]), elapsed);
    o.detail += fmt(" (in band: %g)", static_cast<double>(skipped[0] + skipped[1] + skipped[2]));
    return o;
}

// 5. Points placed on the n-th parabolic sheet are lightlike for rho^n.
Outcome parabolic_sheet_law() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-10, 10);
    long double worst = 0;
    for (double tau : {1.0, -1.0, 0.5, -0.5}) {
        const Isometry rho = fixtures::canonical_parabolic(tau);
        const NormalForm nf = normal_form(rho);
        const AffineMap back = nf.from_canonical();
        for (long n = 1; n <= 50; ++n) {
            const ParabolicSheet sheet = parabolic_sheet(std::get<ParabolicForm>(nf.params).tau, n);
            for (int i = 0; i < 100; ++i) {
                const double p2 = coord(rng), p0 = coord(rng);
                const MPoint adapted(p0, sheet.p1_on_sheet(p2), p2);
                const MPoint p = back.apply(adapted);
                const long double b = oracle::iterate_b_extended(rho, oracle::to_v(p), n);
                worst = std::max(worst, std::abs(b));
            }
        }
    }
    Outcome o;
    o.pass = worst < 1e-7L;
    o.detail = fmt("max |B(rho^n(p) - p)| on sheets = %.2e over 4 x 50 x 100 points", static_cast<double>(worst));
    return o;
}

// 6. Nesting of parabolic timelike regions.
Outcome parabolic_nesting() {
    std::mt19937_64 rng(6);
    const Isometry rho = fixtures::canonical_parabolic(1.0);
    long violations = 0, timelike = 0;
    for (int i = 0; i < 10000; ++i) {
        const MPoint p = oracle::random_point(rng, 10);
        bool prev = false;
        for (long n = 1; n <= 30; ++n) {
            const bool t = region_of(rho, p, n).region == Region::T;
            violations += prev && !t;
            timelike += t;
            prev = t;
        }
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = fmt("%g violations of T(rho^n) in T(rho^(n+1)); %g timelike labels seen", static_cast<double>(violations),
                   static_cast<double>(timelike));
    return o;
}

// 7. Every point gets a finite parabolic witness, predicted exactly.
Outcome parabolic_totality() {
    std::mt19937_64 rng(7);
    const Isometry rho = fixtures::canonical_parabolic(1.0);
    long exact = 0, largest = 0;
    for (int i = 0; i < 1000; ++i) {
        const MPoint p = oracle::random_point(rng, 10);
        const ParabolicWitness w = parabolic_witness(rho, p);
        const auto iter = oracle::least_timelike_power(rho, oracle::to_v(p), 1000000);
        exact += iter.has_value() && *iter == w.predicted && *iter == w.power;
        largest = std::max(largest, w.power);
    }
    Outcome o;
    o.pass = exact == 1000;
    o.detail = fmt("%g of 1000 predictions equal the iteration minimum; largest n = %g", static_cast<double>(exact),
                   static_cast<double>(largest));
    return o;
}

// 8. No timelike labels for a parabolic with a fixed point or a rotation.
Outcome fixed_point_emptiness() {
    std::mt19937_64 rng(8);
    const Isometry rho = conjugate(fixtures::canonical_parabolic(0.0), fixtures::random_conjugator(rng));
    const Isometry psi(rotation_xy(2 * std::numbers::pi * 3.0 / 7.0), MVec());
    long t_labels = 0;
    for (const Isometry* g : {&rho, &psi}) {
        for (int i = 0; i < 1000; ++i) {
            const MPoint p = oracle::random_point(rng, 10);
            for (long n = 1; n <= 1000; ++n) t_labels += region_of(*g, p, n).region == Region::T;
        }
    }
    Outcome o;
    o.pass = t_labels == 0;
    o.detail = fmt("%g T labels over 2 x 1000 points x n <= 1000", static_cast<double>(t_labels));
    return o;
}

// 9. Elliptic witnesses.
Outcome elliptic_witnesses() {
    const Isometry psi(rotation_xy(std::numbers::pi / 2), MVec(0, 0, 1));
    const auto k = elliptic_min_timelike_power(psi, MPoint(10, 0, 0));
    const auto oracle_k = oracle::least_timelike_power(psi, {10, 0, 0}, 1000);
    std::mt19937_64 rng(9);
    long within = 0;
    for (int i = 0; i < 1000; ++i) {
        const MPoint p = oracle::random_point(rng, 10);
        const long bound = elliptic_witness_bound(psi, p);
        const auto w = elliptic_min_timelike_power(psi, p);
        within += w.has_value() && *w <= bound && oracle::least_timelike_power(psi, oracle::to_v(p), bound) == w;
    }
    Outcome o;
    o.pass = k == 4L && oracle_k == 4L && within == 1000;
    o.detail = fmt("k(10,0,0) = %g (oracle %g); %g of 1000 random points within the bound", k ? *k : -1.0,
                   oracle_k ? *oracle_k : -1.0, static_cast<double>(within));
    return o;
}

// 10. The group example on the eigenplane.
Outcome group_example() {
    const auto t0 = Clock::now();
    GridSpec grid;
    grid.plane = eigenplane(g1());
    grid.u_min = grid.v_min = -5;
    grid.u_max = grid.v_max = 5;
    grid.res_u = grid.res_v = 64;
    grid.max_power = 50;
    std::vector<std::size_t> coverage;
    bool monotone = true;
    for (int len = 1; len <= 5; ++len) {
        grid.max_word_len = len;
        coverage.push_back(cross_section_raster(kTorus, grid).count(Region::T));
        if (len > 1 && coverage[len - 1] < coverage[len - 2]) monotone = false;
    }

    // (p-, p+) = (sqrt2, sqrt2) is the point (0, 0, 2).
    const MPoint p = grid.plane.at(std::numbers::sqrt2, std::numbers::sqrt2);
    bool cyclic_miss = true;
    for (const auto& gen : kTorus.generators) {
        GroupPresentation cyclic;
        cyclic.generators.push_back(gen);
        cyclic_miss = cyclic_miss && !group_ctc_search(cyclic, p, 1, 1000);
    }
    std::optional<CtcWitness> found;
    int found_len = 0;
    for (int len = 1; len <= 6 && !found; ++len) {
        found = group_ctc_search(kTorus, p, len, grid.max_power);
        found_len = len;
    }
    // Golden value, recorded after the first run.
    const std::string golden = "(g1*g2^-1)^3";
    const std::string word = found ? found->to_string(&kTorus) : "none";
    const double elapsed = ms_since(t0);

    Outcome o;
    o.pass = monotone && cyclic_miss && found && word == golden && elapsed < 60000;
    std::ostringstream s;
    s << "T cells for L=1..5:";
    for (auto c : coverage) s << ' ' << c;
    s << "; (sqrt2, sqrt2) cyclic miss " << (cyclic_miss ? "yes" : "no") << ", witness " << word << " at L=" << found_len
      << fmt("; %.0f ms", elapsed);
    o.detail = s.str();
    return o;
}

// 11. The smooth closed timelike curve.
Outcome smooth_closed_curve() {
    const MPoint p(0, std::numbers::sqrt2, 0);
    Outcome o;
    try {
        const auto samples = smooth_orbit_curve(g1(), p, 0.1, 200);
        double worst_b = -1e300;
        for (const auto& s : samples) worst_b = std::max(worst_b, lorentz_square(s.tangent));
        const ClosureReport r = certify_closed_in_quotient(g1(), samples);

        const BumpPair bump(0.1);
        const auto at = [&](double t) { return smooth_orbit_point(g1(), p, bump, t).position; };
        const double h = 1e-4;
        double worst_c2 = 0.0;
        for (double j : {0.0, 0.1, 1.0}) {
            const MVec left = ((at(j) - at(j - h)) - (at(j - h) - at(j - 2 * h))) / (h * h);
            const MVec right = ((at(j + 2 * h) - at(j + h)) - (at(j + h) - at(j))) / (h * h);
            const double scale = std::max(1.0, smooth_orbit_point(g1(), p, bump, j).tangent.norm());
            worst_c2 = std::max(worst_c2, (left - right).norm() / scale);
        }
        o.pass = worst_b < 0 && r.position_residual < 1e-9 && r.tangent_residual < 1e-9 && worst_c2 < 1e-4;
        o.detail = fmt("max B(tangent) = %.4g, closure residuals %.1e / %.1e, junction C2 mismatch %.1e", worst_b,
                       r.position_residual, r.tangent_residual, worst_c2);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = e.what();
    }
    return o;
}

// 12. Determinism of CLI output and of parallel rasters.
Outcome determinism() {
    Outcome o;
    GridSpec grid;
    grid.plane = eigenplane(g1());
    grid.u_min = grid.v_min = -5;
    grid.u_max = grid.v_max = 5;
    grid.res_u = grid.res_v = 48;
    grid.max_power = 10;
    grid.max_word_len = 3;
    const auto csv = [](const Raster& r) {
        std::ostringstream out;
        write_raster_csv(out, r);
        return out.str();
    };
    const std::string serial = csv(cross_section_raster(kTorus, grid, kDefaultTol, 1));
    bool parallel_same = true;
    for (int threads : {2, 3, 8}) parallel_same = parallel_same && csv(cross_section_raster(kTorus, grid, kDefaultTol, threads)) == serial;
#ifdef FLATCTC_HAVE_CLI
    const auto invoke = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        cli::run(args, out, err);
        return out.str();
    };
    const std::vector<std::vector<std::string>> commands{
        {"cross-section", "--builtin", "torus", "--res", "24,24", "--max-word-len", "3", "--max-power", "10"},
        {"cross-section", "--builtin", "torus-gamma1", "--res", "32,32", "--max-power", "5", "--threads", "4"},
        {"curve", "--builtin", "torus-gamma1", "--point", "0,1.41421356,0", "--samples", "50"},
    };
    bool cli_same = true;
    for (const auto& c : commands) {
        const std::string first = invoke(c);
        for (int rep = 0; rep < 3; ++rep) cli_same = cli_same && !first.empty() && invoke(c) == first;
    }
#else
    const bool cli_same = false;
#endif
    o.pass = parallel_same && cli_same;
    o.detail = std::string("raster identical for 1/2/3/8 threads: ") + (parallel_same ? "yes" : "no") +
               "; repeated CLI CSV byte-identical: " + (cli_same ? "yes" : "no");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"classification fixture", classification_fixture},
        {"eigenframe and alpha", eigenframe_alpha},
        {"hyperbolic threshold", hyperbolic_threshold_values},
        {"closed form vs oracle", closed_form_equivalence},
        {"parabolic sheet law", parabolic_sheet_law},
        {"parabolic nesting", parabolic_nesting},
        {"parabolic totality", parabolic_totality},
        {"fixed-point emptiness", fixed_point_emptiness},
        {"elliptic witnesses", elliptic_witnesses},
        {"group example", group_example},
        {"smooth closed timelike curve", smooth_closed_curve},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
