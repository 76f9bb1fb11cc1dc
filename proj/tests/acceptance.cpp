// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <vector>

#include "mubx/eig.hpp"
#include "mubx/explorer.hpp"
#include "support.hpp"

using namespace mubx;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& text) {
    std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, text.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_mub_validity() {
    const auto t0 = Clock::now();
    bool pass = true;
    double worst = 0.0;
    for (int d : {2, 3, 4, 5, 7, 8, 9}) {
        const MubSet set = build_complete_mub(d);
        const MubReport rep = verify_mub(set, 1e-10);
        pass = pass && static_cast<int>(set.bases.size()) == d + 1 && rep.pass;
        worst = std::max({worst, rep.max_orthonormality_dev, rep.max_unbiasedness_dev});
    }
    const MubSet six = build_partial_mub_6();
    const MubReport rep6 = verify_mub(six, 1e-10);
    pass = pass && six.bases.size() == 3 && rep6.pass;
    worst = std::max({worst, rep6.max_orthonormality_dev, rep6.max_unbiasedness_dev});
    const double elapsed = seconds_since(t0);
    pass = pass && elapsed < 10.0;
    report(1, pass,
           fmt("MUB validity for d in {2..9}: worst deviation %.2e (tol 1e-10), d+1 bases each, "
               "3 for d=6, %.1f s (< 10 s)",
               worst, elapsed));
}

std::map<int, OptimizeResult> criterion_2_minima() {
    const std::map<int, double> paper = {{3, -0.15}, {4, -0.125}, {5, -0.106},
                                         {7, -0.081}, {8, -0.073}, {9, -0.067}};
    const auto t0 = Clock::now();
    std::map<int, OptimizeResult> results;
    bool pass = true;
    std::string detail;
    for (const auto& [d, target] : paper) {
        const OptimizeResult res = optimize_extreme(d);
        results[d] = res;
        const bool ok = std::abs(res.value - target) <= 0.005;
        pass = pass && ok;
        detail += fmt("d=%d: %.4f vs %.3f%s  ", d, res.value, target, ok ? "" : " (FAIL)");
    }
    const double elapsed = seconds_since(t0);
    pass = pass && elapsed <= 1800.0;
    report(2, pass, fmt("extremal 2-I_{d+1} within +-0.005 of the source table: %s(%.0f s <= 1800 s)",
                        detail.c_str(), elapsed));
    return results;
}

void criterion_3_d2_negative(const OptimizeResult& opt2) {
    bool pass = true;
    long bad = 0;

    ScanConfig cfg;
    cfg.grid = 200;
    const auto records = scan_slice(2, opt2.argmin.q3, opt2.argmin.q, cfg);
    for (const ScanRecord& r : records)
        if (r.positive && r.ppt && r.detected) ++bad;

    const WitnessEvaluator witness(build_complete_mub(2));
    const auto tuples = sample_positive_params(2, 100000, 424242);
    for (const FamilyParams& p : tuples) {
        const Classification c = classify_family(p, witness);
        if (c.positive && c.ppt && c.detected) ++bad;
    }
    pass = bad == 0;
    report(3, pass,
           fmt("d=2 negative result: 200x200 slice at q3=%.4f plus 10^5 positive tuples, "
               "%ld states positive&PPT&I_3>2 (expected 0)",
               opt2.argmin.q3, bad));
}

void criterion_4_d3_witness(const OptimizeResult& opt3) {
    const bool pass = opt3.min_coefficient >= -1e-9 && opt3.min_pt_eigenvalue >= -1e-9 &&
                      opt3.i_value >= 2.14;
    report(4, pass,
           fmt("d=3 argmin state: min c = %.1e (>= -1e-9), min PT eig = %.1e (>= -1e-9), "
               "I_4 = %.4f (>= 2.14)",
               opt3.min_coefficient, opt3.min_pt_eigenvalue, opt3.i_value));
}

void criterion_5_separable_bound() {
    bool pass = true;
    std::string detail;
    for (int d : {2, 3, 5}) {
        const MubSet mubs = build_complete_mub(d);
        auto gen = test::rng(5000 + d);
        double worst = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            const Matrix sep = test::random_separable_state(d, gen);
            worst = std::max(worst, mub_witness(sep, mubs).i_value);
        }
        pass = pass && worst <= 2.0 + 1e-9;
        detail += fmt("d=%d max I=%.6f  ", d, worst);
    }
    report(5, pass, fmt("separable bound I_{d+1} <= 2+1e-9 on 10^4 samples each: %s", detail.c_str()));
}

void criterion_6_incomplete(const OptimizeResult& opt3) {
    bool pass = true;
    std::string detail;
    const std::vector<std::array<double, 2>> settings3 = {{opt3.argmin.q3, opt3.argmin.q},
                                                          {0.0, 0.0},
                                                          {opt3.argmin.q3 / 2.0, 0.0}};
    for (int m : {2, 3}) {
        const IncompleteScanReport rep = incomplete_mub_scan(3, m, 200, settings3);
        pass = pass && rep.max_excess <= 1e-9 && rep.feasible_points > 0;
        detail += fmt("d=3,m=%d: excess %.2e  ", m, rep.max_excess);
    }
    const double q36 = 1.0 / std::sqrt(6.0);
    const std::vector<std::array<double, 2>> settings6 = {{q36, 0.0}, {0.0, 0.0}, {q36 / 2.0, 0.0}};
    const IncompleteScanReport rep6 = incomplete_mub_scan(6, 3, 200, settings6);
    pass = pass && rep6.max_excess <= 1e-9 && rep6.feasible_points > 0;
    detail += fmt("d=6,m=3: excess %.2e", rep6.max_excess);
    report(6, pass,
           fmt("incomplete sets detect nothing on positive&PPT grid points "
               "(200x200, three settings): %s",
               detail.c_str()));
}

void criterion_7_multipartite() {
    bool pass = true;
    std::string detail;
    for (int d : {2, 3}) {
        const MultiCompareReport rep = multi_compare(d, 2, 1000, false, 777000 + d);
        const bool ok =
            rep.positivity_agreements == rep.samples && rep.ppt_agreements == rep.samples;
        pass = pass && ok;
        detail += fmt("d=%d: pos %ld/%ld ppt %ld/%ld  ", d, rep.positivity_agreements,
                      rep.samples, rep.ppt_agreements, rep.samples);
        for (const MultiCompareRecord& r : rep.disagreements)
            std::printf("  disagreement at d=%d q=(%.6f,%.6f,%.6f,%.6f): bi(pos=%d,ppt=%d) "
                        "multi(pos=%d,ppt=%d)\n",
                        d, r.params.q1, r.params.q2, r.params.q3, r.params.q, r.positive_bi,
                        r.ppt_bi, r.positive_multi, r.ppt_multi);
    }
    // Smolin vertex PPT across all three 2:2 bipartitions of A1 B1 A2 B2
    const Matrix smolin = multipartite_vertex(2, 2, {0, 0});
    const TensorShape shape = multipartite_shape(2, 2);
    const std::vector<std::vector<int>> smolin_cuts = {{0, 1}, {0, 2}, {0, 3}};
    for (const std::vector<int>& cut : smolin_cuts) {
        const double mineig = min_eigenvalue(partial_transpose(smolin, shape, cut));
        pass = pass && mineig >= -1e-10;
        detail += fmt("smolin cut{%d%d}: %.1e  ", cut[0], cut[1], mineig);
    }
    report(7, pass, fmt("multipartite geometry equivalence and Smolin PPT: %s", detail.c_str()));
}

void criterion_8_oracle_linear_algebra() {
    bool pass = true;
    auto gen = test::rng(88);
    double worst_recon = 0.0;
    std::uniform_int_distribution<int> dims(2, 81);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = dims(gen);
        const Matrix m = test::random_hermitian(dim, gen);
        const EigenSystem es = hermitian_eigensystem(m);
        Matrix rebuilt(dim);
        for (int j = 0; j < dim; ++j) {
            std::vector<cplx> col(dim);
            for (int i = 0; i < dim; ++i) col[i] = es.vectors(i, j);
            rebuilt += es.values[j] * outer(col, col);
        }
        worst_recon = std::max(worst_recon, rebuilt.max_abs_diff(m));
    }
    pass = pass && worst_recon <= 1e-10;

    double worst_pt = 0.0;
    for (int d = 2; d <= 9; ++d) {
        const Matrix pt = partial_transpose(bell_projector(d, {0, 0}), TensorShape{d, d}, 1);
        worst_pt = std::max(worst_pt, std::abs(min_eigenvalue(pt) + 1.0 / d));
    }
    pass = pass && worst_pt <= 1e-12;

    double worst_spec = 0.0;
    for (int d = 2; d <= 9; ++d) {
        const SimplexCoefficients c = test::random_coefficients(d, gen);
        std::vector<double> expected = c.c;
        std::sort(expected.begin(), expected.end());
        const std::vector<double> eig = hermitian_eigenvalues(simplex_state(c));
        for (size_t i = 0; i < expected.size(); ++i)
            worst_spec = std::max(worst_spec, std::abs(eig[i] - expected[i]));
    }
    pass = pass && worst_spec <= 1e-10;

    report(8, pass,
           fmt("oracle linear algebra: reconstruction %.2e (<=1e-10 over 100 matrices to dim 81), "
               "PT(P00) min-eig error %.2e (<=1e-12, d<=9), Bell spectra error %.2e (<=1e-10)",
               worst_recon, worst_pt, worst_spec));
}

void criterion_9_geometry(const OptimizeResult& opt3) {
    const int grid = 200;
    const double q3 = opt3.argmin.q3, q = opt3.argmin.q;
    ScanConfig cfg;
    cfg.grid = grid;
    const auto records = scan_slice(3, q3, q, cfg);
    const auto box = positivity_bounding_box(3, q3, q);
    bool pass = box.has_value();

    auto rec = [&](int i, int j) -> const ScanRecord& { return records[i * grid + j]; };

    // positivity region is an intersection of half-planes: the positive flag
    // must match the sign of the minimum family coefficient, which is affine
    // along every grid line, so the region is row/column convex
    bool contiguous = true;
    for (int i = 0; i < grid && contiguous; ++i) {
        int first = -1, last = -1;
        for (int j = 0; j < grid; ++j)
            if (rec(i, j).positive) {
                if (first < 0) first = j;
                last = j;
            }
        for (int j = first; j >= 0 && j <= last; ++j)
            if (!rec(i, j).positive) contiguous = false;
    }
    for (int j = 0; j < grid && contiguous; ++j) {
        int first = -1, last = -1;
        for (int i = 0; i < grid; ++i)
            if (rec(i, j).positive) {
                if (first < 0) first = i;
                last = i;
            }
        for (int i = first; i >= 0 && i <= last; ++i)
            if (!rec(i, j).positive) contiguous = false;
    }
    pass = pass && contiguous;

    // PPT region: midpoint convexity on sampled pairs of PPT grid points
    std::vector<std::pair<double, double>> ppt_points;
    for (const ScanRecord& r : records)
        if (r.ppt && r.positive) ppt_points.push_back({r.q1, r.q2});
    auto gen = test::rng(99);
    std::uniform_int_distribution<size_t> pick(0, ppt_points.size() - 1);
    const WitnessEvaluator witness(build_complete_mub(3));
    long midpoint_failures = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto [a1, a2] = ppt_points[pick(gen)];
        const auto [b1, b2] = ppt_points[pick(gen)];
        const FamilyParams mid{3, 0.5 * (a1 + b1), 0.5 * (a2 + b2), q3, q};
        const SimplexCoefficients c = family_coefficients(mid);
        if (simplex_pt_spectrum(c).front() < -1e-10) ++midpoint_failures;
    }
    pass = pass && midpoint_failures == 0;

    // the I = 2 boundary adjacent to the positive region fits a straight line
    std::vector<std::pair<double, double>> crossings;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j + 1 < grid; ++j) {
            const ScanRecord &a = rec(i, j), &b = rec(i, j + 1);
            if (a.detected != b.detected && (a.positive || b.positive))
                crossings.push_back({0.5 * (a.q1 + b.q1), 0.5 * (a.q2 + b.q2)});
        }
    for (int j = 0; j < grid; ++j)
        for (int i = 0; i + 1 < grid; ++i) {
            const ScanRecord &a = rec(i, j), &b = rec(i + 1, j);
            if (a.detected != b.detected && (a.positive || b.positive))
                crossings.push_back({0.5 * (a.q1 + b.q1), 0.5 * (a.q2 + b.q2)});
        }
    double max_dev = 0.0;
    const double step = std::max((box->q1_hi - box->q1_lo) / (grid - 1),
                                 (box->q2_hi - box->q2_lo) / (grid - 1));
    if (crossings.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : crossings) {
            mx += x;
            my += y;
        }
        mx /= crossings.size();
        my /= crossings.size();
        // total least squares via the 2x2 scatter matrix
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (const auto& [x, y] : crossings) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
            syy += (y - my) * (y - my);
        }
        const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
        const double lam_min = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
        double nx, ny;  // eigenvector of the smaller eigenvalue = line normal
        if (std::abs(sxy) > 1e-15) {
            nx = lam_min - syy;
            ny = sxy;
        } else if (sxx < syy) {
            nx = 1.0;
            ny = 0.0;
        } else {
            nx = 0.0;
            ny = 1.0;
        }
        const double nn = std::hypot(nx, ny);
        for (const auto& [x, y] : crossings)
            max_dev = std::max(max_dev, std::abs((x - mx) * nx / nn + (y - my) * ny / nn));
    }
    const bool line_ok = crossings.size() >= 2 && max_dev <= step;
    pass = pass && line_ok;

    report(9, pass,
           fmt("d=3 slice geometry: positivity region row/column convex = %s, PPT midpoint "
               "failures %ld/2000, I=2 boundary line fit: %zu crossings, max deviation %.4f "
               "vs grid step %.4f",
               contiguous ? "yes" : "no", midpoint_failures, crossings.size(), max_dev, step));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_1_mub_validity();
    const std::map<int, OptimizeResult> minima = criterion_2_minima();

    OptimizeConfig cfg2;
    const OptimizeResult opt2 = optimize_extreme(2, cfg2);
    criterion_3_d2_negative(opt2);
    criterion_4_d3_witness(minima.at(3));
    criterion_5_separable_bound();
    criterion_6_incomplete(minima.at(3));
    criterion_7_multipartite();
    criterion_8_oracle_linear_algebra();
    criterion_9_geometry(minima.at(3));

    std::printf("%s: %d criterion(s) failed, total %.0f s\n", failures == 0 ? "ALL PASS" : "FAILED",
                failures, seconds_since(t0));
    return failures;
}
