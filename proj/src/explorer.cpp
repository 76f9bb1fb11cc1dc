#include "mubx/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "mubx/eig.hpp"

namespace mubx {

MubSet mub_set_for(int d) {
    if (d == 6) return build_partial_mub_6();
    return build_complete_mub(d);
}

ParamBox ParamBox::for_dimension(int d) {
    ParamBox box;
    box.q1_hi = static_cast<double>(d);
    return box;
}

// ---------------------------------------------------------------------------
// positivity polygon in a (q1,q2) slice
// ---------------------------------------------------------------------------

namespace {

struct AffineConstraint {
    double gx = 0.0, gy = 0.0, g0 = 0.0;  // gx*q1 + gy*q2 + g0 >= 0
};

std::vector<AffineConstraint> slice_constraints(int d, double q3, double q) {
    // the coefficients are affine in (q1,q2); read the maps off three probes
    const SimplexCoefficients c00 = family_coefficients({d, 0.0, 0.0, q3, q});
    const SimplexCoefficients c10 = family_coefficients({d, 1.0, 0.0, q3, q});
    const SimplexCoefficients c01 = family_coefficients({d, 0.0, 1.0, q3, q});
    std::vector<AffineConstraint> out;
    for (size_t i = 0; i < c00.c.size(); ++i) {
        AffineConstraint a{c10.c[i] - c00.c[i], c01.c[i] - c00.c[i], c00.c[i]};
        const bool dup = std::any_of(out.begin(), out.end(), [&](const AffineConstraint& b) {
            return std::abs(a.gx - b.gx) < 1e-14 && std::abs(a.gy - b.gy) < 1e-14 &&
                   std::abs(a.g0 - b.g0) < 1e-14;
        });
        if (!dup) out.push_back(a);
    }
    return out;
}

}  // namespace

std::optional<SliceBox> positivity_bounding_box(int d, double q3, double q) {
    const std::vector<AffineConstraint> cons = slice_constraints(d, q3, q);
    std::vector<std::array<double, 2>> vertices;
    for (size_t i = 0; i < cons.size(); ++i)
        for (size_t j = i + 1; j < cons.size(); ++j) {
            const double det = cons[i].gx * cons[j].gy - cons[i].gy * cons[j].gx;
            if (std::abs(det) < 1e-14) continue;
            const double x = (-cons[i].g0 * cons[j].gy + cons[j].g0 * cons[i].gy) / det;
            const double y = (-cons[i].gx * cons[j].g0 + cons[j].gx * cons[i].g0) / det;
            const bool inside = std::all_of(cons.begin(), cons.end(), [&](const AffineConstraint& c) {
                return c.gx * x + c.gy * y + c.g0 >= -1e-9;
            });
            if (inside) vertices.push_back({x, y});
        }
    if (vertices.empty()) return std::nullopt;
    SliceBox box{vertices[0][0], vertices[0][0], vertices[0][1], vertices[0][1]};
    for (const auto& v : vertices) {
        box.q1_lo = std::min(box.q1_lo, v[0]);
        box.q1_hi = std::max(box.q1_hi, v[0]);
        box.q2_lo = std::min(box.q2_lo, v[1]);
        box.q2_hi = std::max(box.q2_hi, v[1]);
    }
    const double padx = 0.1 * std::max(box.q1_hi - box.q1_lo, 1e-6);
    const double pady = 0.1 * std::max(box.q2_hi - box.q2_lo, 1e-6);
    box.q1_lo -= padx;
    box.q1_hi += padx;
    box.q2_lo -= pady;
    box.q2_hi += pady;
    return box;
}

// ---------------------------------------------------------------------------
// slice scan
// ---------------------------------------------------------------------------

std::vector<ScanRecord> scan_slice(int d, double q3, double q, const ScanConfig& config) {
    if (config.grid < 2) throw std::invalid_argument("scan_slice: grid must be >= 2");
    SliceBox box;
    if (config.box) {
        box = *config.box;
    } else {
        const auto auto_box = positivity_bounding_box(d, q3, q);
        if (!auto_box)
            throw std::invalid_argument("scan_slice: slice has no positive states; pass a box");
        box = *auto_box;
    }
    const WitnessEvaluator witness(mub_set_for(d), config.witness);
    std::vector<ScanRecord> records;
    records.reserve(static_cast<size_t>(config.grid) * config.grid);
    for (int i = 0; i < config.grid; ++i) {
        const double q1 = box.q1_lo + (box.q1_hi - box.q1_lo) * i / (config.grid - 1);
        for (int j = 0; j < config.grid; ++j) {
            const double q2 = box.q2_lo + (box.q2_hi - box.q2_lo) * j / (config.grid - 1);
            const Classification c = classify_family({d, q1, q2, q3, q}, witness, config.tol);
            records.push_back(
                {q1, q2, c.positive, c.ppt, c.detected, c.bound_entangled, c.i_value});
        }
    }
    return records;
}

// ---------------------------------------------------------------------------
// extremization
// ---------------------------------------------------------------------------

namespace {

struct FamilyObjective {
    int d;
    int dims;  // 3 for d <= 3 (q inactive), else 4
    const WitnessEvaluator& witness;
    // when set, the witness is evaluated with these relabelings frozen and
    // the objective is globally affine in x
    const std::vector<Labeling>* fixed_labelings = nullptr;

    FamilyParams params(const std::vector<double>& x) const {
        FamilyParams p;
        p.d = d;
        p.q1 = x[0];
        p.q2 = x[1];
        p.q3 = x[2];
        p.q = dims == 4 ? x[3] : 0.0;
        return p;
    }

    bool feasible(const std::vector<double>& x) const {
        const SimplexCoefficients c = family_coefficients(params(x));
        if (c.min() < -1e-12) return false;
        return simplex_pt_spectrum(c).front() >= -1e-12;
    }

    double value(const std::vector<double>& x) const {
        const SimplexCoefficients c = family_coefficients(params(x));
        if (fixed_labelings) return 2.0 - witness.i_value_with_labelings(c, *fixed_labelings);
        return 2.0 - witness.i_value(c);
    }
};

// largest step toward x keeping feasibility, assuming anchor is feasible;
// the feasible set is convex so bisection on the segment is exact
std::vector<double> project_toward(const FamilyObjective& f, const std::vector<double>& anchor,
                                   const std::vector<double>& x) {
    if (f.feasible(x)) return x;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> probe(anchor.size());
        for (size_t i = 0; i < anchor.size(); ++i)
            probe[i] = anchor[i] + mid * (x[i] - anchor[i]);
        if (f.feasible(probe))
            lo = mid;
        else
            hi = mid;
    }
    std::vector<double> out(anchor.size());
    for (size_t i = 0; i < anchor.size(); ++i) out[i] = anchor[i] + lo * (x[i] - anchor[i]);
    return out;
}

struct SimplexVertex {
    std::vector<double> x;
    double f = 0.0;
};

// Nelder-Mead constrained to the feasible set by projecting proposals onto
// the segment toward the feasible simplex centroid
SimplexVertex nelder_mead(const FamilyObjective& obj, const std::vector<double>& start,
                          double scale, double step_tol, int max_iter) {
    const size_t k = start.size();
    std::vector<SimplexVertex> simplex;
    simplex.push_back({start, obj.value(start)});
    for (size_t i = 0; i < k; ++i) {
        std::vector<double> plus = start, minus = start;
        plus[i] += scale;
        minus[i] -= scale;
        std::vector<double> vp = project_toward(obj, start, plus);
        std::vector<double> vm = project_toward(obj, start, minus);
        auto dist = [&](const std::vector<double>& v) {
            double s = 0.0;
            for (size_t t = 0; t < k; ++t) s += (v[t] - start[t]) * (v[t] - start[t]);
            return s;
        };
        std::vector<double> v = dist(vp) >= dist(vm) ? vp : vm;
        if (dist(v) < 1e-18) v[i] = start[i] + 1e-9;  // degenerate axis, keep the simplex full
        if (!obj.feasible(v)) v = start;
        simplex.push_back({v, obj.value(v)});
    }

    auto order = [&]() {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const SimplexVertex& a, const SimplexVertex& b) { return a.f < b.f; });
    };
    order();

    for (int iter = 0; iter < max_iter; ++iter) {
        double diameter = 0.0;
        for (size_t v = 1; v <= k; ++v)
            for (size_t t = 0; t < k; ++t)
                diameter = std::max(diameter, std::abs(simplex[v].x[t] - simplex[0].x[t]));
        if (diameter < step_tol) break;

        std::vector<double> centroid(k, 0.0);
        for (size_t v = 0; v < k; ++v)
            for (size_t t = 0; t < k; ++t) centroid[t] += simplex[v].x[t] / k;
        // all vertices are feasible and the set is convex, so the centroid is
        // a feasible projection anchor that keeps the simplex spread out
        std::vector<double> anchor = centroid;
        if (!obj.feasible(anchor)) anchor = simplex[0].x;

        auto blend = [&](double coeff) {
            std::vector<double> x(k);
            for (size_t t = 0; t < k; ++t)
                x[t] = centroid[t] + coeff * (centroid[t] - simplex[k].x[t]);
            return project_toward(obj, anchor, x);
        };

        const std::vector<double> xr = blend(1.0);
        const double fr = obj.value(xr);
        if (fr < simplex[0].f) {
            const std::vector<double> xe = blend(2.0);
            const double fe = obj.value(xe);
            simplex[k] = fe < fr ? SimplexVertex{xe, fe} : SimplexVertex{xr, fr};
        } else if (fr < simplex[k - 1].f) {
            simplex[k] = {xr, fr};
        } else {
            const std::vector<double> xc = blend(-0.5);
            const double fc = obj.value(xc);
            if (fc < simplex[k].f) {
                simplex[k] = {xc, fc};
            } else {
                for (size_t v = 1; v <= k; ++v) {
                    for (size_t t = 0; t < k; ++t)
                        simplex[v].x[t] = 0.5 * (simplex[v].x[t] + simplex[0].x[t]);
                    simplex[v].f = obj.value(simplex[v].x);
                }
            }
        }
        order();
    }
    return simplex[0];
}

// The witness with per-basis label maximization is convex in the state, so
// its maximum along any feasible chord sits at a chord endpoint. Hopping to
// the far endpoints of chords through the current iterate can only improve
// and crawls along the curved boundary where Nelder-Mead stalls.
std::vector<std::vector<double>> chord_directions(size_t k, bool rich) {
    std::vector<std::vector<double>> directions;
    std::vector<int> digits(k, -1);
    while (true) {
        std::vector<double> u(k);
        double norm = 0.0;
        int nonzero = 0;
        for (size_t i = 0; i < k; ++i) {
            u[i] = digits[i];
            norm += u[i] * u[i];
            if (digits[i] != 0) ++nonzero;
        }
        if (nonzero > 0 && (rich || nonzero <= 2)) {
            const double inv = 1.0 / std::sqrt(norm);
            for (double& c : u) c *= inv;
            directions.push_back(std::move(u));
        }
        size_t pos = 0;
        while (pos < k && digits[pos] == 1) digits[pos++] = -1;
        if (pos == k) break;
        ++digits[pos];
    }
    if (rich) {
        std::mt19937_64 gen(0xC0FFEEull);
        std::normal_distribution<double> n(0.0, 1.0);
        for (int extra = 0; extra < 64; ++extra) {
            std::vector<double> u(k);
            double norm = 0.0;
            for (double& c : u) {
                c = n(gen);
                norm += c * c;
            }
            const double inv = 1.0 / std::sqrt(norm);
            for (double& c : u) c *= inv;
            directions.push_back(std::move(u));
        }
    }
    return directions;
}

SimplexVertex chord_polish(const FamilyObjective& obj, SimplexVertex current, double reach,
                           int sweeps, bool rich,
                           const std::vector<std::vector<double>>& anchors = {},
                           const std::vector<std::vector<double>>& extra_dirs = {}) {
    const size_t k = current.x.size();
    std::vector<std::vector<double>> static_dirs = extra_dirs;
    for (auto& u : chord_directions(k, rich)) static_dirs.push_back(std::move(u));
    const std::vector<double> reaches = rich ? std::vector<double>{reach, reach / 8.0}
                                             : std::vector<double>{reach};
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        bool improved = false;
        // rays through feasible anchor points always have positive extent
        // from a boundary iterate, unlike most fixed directions whose
        // feasible wedge can be vanishingly thin
        std::vector<std::vector<double>> directions = static_dirs;
        for (const std::vector<double>& a : anchors) {
            std::vector<double> u(k);
            double norm = 0.0;
            for (size_t i = 0; i < k; ++i) {
                u[i] = a[i] - current.x[i];
                norm += u[i] * u[i];
            }
            if (norm < 1e-20) continue;
            const double inv = 1.0 / std::sqrt(norm);
            for (double& c : u) c *= inv;
            directions.push_back(std::move(u));
        }
        for (const double r : reaches) {
            for (const std::vector<double>& u : directions) {
                std::vector<double> far(k);
                for (size_t i = 0; i < k; ++i) far[i] = current.x[i] + r * u[i];
                const std::vector<double> endpoint = project_toward(obj, current.x, far);
                double moved = 0.0;
                for (size_t i = 0; i < k; ++i)
                    moved = std::max(moved, std::abs(endpoint[i] - current.x[i]));
                if (moved < 1e-12) continue;
                const double f = obj.value(endpoint);
                if (f < current.f - 1e-13) {
                    current = {endpoint, f};
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return current;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

// Boundary seeding: every extreme point of the feasible set is the exit of a
// ray from the (strictly interior) maximally mixed center, so shooting a
// deterministic direction sample and zooming the promising cones finds narrow
// optima that a coarse parameter grid steps over.
struct RayExit {
    double f;
    std::vector<double> x;
};

std::vector<double> ray_exit(const FamilyObjective& obj, const std::vector<double>& center,
                             const std::vector<double>& dir, double reach) {
    std::vector<double> far(center.size());
    for (size_t i = 0; i < center.size(); ++i) far[i] = center[i] + reach * dir[i];
    return project_toward(obj, center, far);
}

std::vector<RayExit> ray_seed_exits(const FamilyObjective& obj, double reach) {
    const size_t k = static_cast<size_t>(obj.dims);
    const std::vector<double> center(k, 0.0);
    std::mt19937_64 gen(0x5eedull);
    std::normal_distribution<double> n(0.0, 1.0);

    auto random_unit = [&]() {
        std::vector<double> u(k);
        double norm = 0.0;
        for (double& c : u) {
            c = n(gen);
            norm += c * c;
        }
        const double inv = 1.0 / std::sqrt(norm);
        for (double& c : u) c *= inv;
        return u;
    };

    std::vector<std::vector<double>> dirs = chord_directions(k, true);
    for (int extra = 0; extra < 2500; ++extra) dirs.push_back(random_unit());

    std::vector<RayExit> exits;
    exits.reserve(dirs.size());
    std::vector<std::vector<double>> exit_dirs = dirs;
    for (const auto& u : dirs) {
        std::vector<double> p = ray_exit(obj, center, u, reach);
        exits.push_back({obj.value(p), std::move(p)});
    }

    std::vector<size_t> order(exits.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return exits[a].f < exits[b].f; });

    // representatives of distinct boundary regions: greedy by direction angle
    std::vector<size_t> reps;
    for (size_t idx : order) {
        if (reps.size() >= 12) break;
        bool distinct = true;
        for (size_t r : reps) {
            double dot = 0.0;
            for (size_t i = 0; i < k; ++i) dot += exit_dirs[idx][i] * exit_dirs[r][i];
            if (dot > 0.97) { distinct = false; break; }
        }
        if (distinct) reps.push_back(idx);
    }

    std::vector<RayExit> out;
    for (size_t r : reps) {
        std::vector<double> u = exit_dirs[r];
        RayExit best = exits[r];
        for (double sigma : {0.12, 0.04, 0.012}) {
            for (int trial = 0; trial < 80; ++trial) {
                std::vector<double> pert = random_unit();
                std::vector<double> v(k);
                double norm = 0.0;
                for (size_t i = 0; i < k; ++i) {
                    v[i] = u[i] + sigma * pert[i];
                    norm += v[i] * v[i];
                }
                const double inv = 1.0 / std::sqrt(norm);
                for (double& c : v) c *= inv;
                std::vector<double> p = ray_exit(obj, center, v, reach);
                const double f = obj.value(p);
                if (f < best.f - 1e-14) {
                    best = {f, std::move(p)};
                    u = v;
                }
            }
        }
        out.push_back(std::move(best));
    }
    return out;
}

// Alternate between freezing the relabelings (which makes the witness affine,
// so the inner chord maximization has no spurious local maxima) and
// re-optimizing the labels at the new point. Monotone in the true objective.
SimplexVertex labeling_rounds(const FamilyObjective& obj, SimplexVertex current, double reach,
                              const std::vector<std::vector<double>>& anchors) {
    const size_t k = current.x.size();
    for (int round = 0; round < 30; ++round) {
        const std::vector<Labeling> labelings =
            obj.witness.evaluate(family_coefficients(obj.params(current.x))).labelings;
        FamilyObjective frozen = obj;
        frozen.fixed_labelings = &labelings;

        // exact affine gradient of the frozen objective (unit steps suffice)
        std::vector<double> grad(k);
        const double f0 = frozen.value(current.x);
        double norm = 0.0;
        for (size_t i = 0; i < k; ++i) {
            std::vector<double> xe = current.x;
            xe[i] += 1.0;
            grad[i] = frozen.value(xe) - f0;
            norm += grad[i] * grad[i];
        }
        std::vector<std::vector<double>> extra;
        if (norm > 0.0) {
            std::vector<double> descent(k);
            for (size_t i = 0; i < k; ++i) descent[i] = -grad[i] / std::sqrt(norm);
            extra.push_back(descent);
        }

        const SimplexVertex sub =
            chord_polish(frozen, {current.x, f0}, reach, 200, true, anchors, extra);
        const double true_value = obj.value(sub.x);
        if (true_value < current.f - 1e-13) {
            current = {sub.x, true_value};
        } else {
            break;
        }
    }
    return current;
}

}  // namespace

OptimizeResult optimize_extreme(int d, const OptimizeConfig& config) {
    if (d == 6 || d < 2 || d > 9)
        throw std::invalid_argument(
            "optimize_extreme: requires a complete MUB set (d in {2,3,4,5,7,8,9})");
    const WitnessOptions wopts{true, config.mode == LabelingMode::maximized};
    const WitnessEvaluator witness(build_complete_mub(d), wopts);
    const int dims = d <= 3 ? 3 : 4;
    const FamilyObjective obj{d, dims, witness};
    const ParamBox box = config.box.value_or(ParamBox::for_dimension(d));

    const int n = std::max(2, config.coarse_points);
    std::vector<std::array<double, 2>> axes = {{box.q1_lo, box.q1_hi},
                                               {box.q2_lo, box.q2_hi},
                                               {box.q3_lo, box.q3_hi},
                                               {box.q_lo, box.q_hi}};
    auto axis_value = [&](int axis, int step) {
        return axes[axis][0] + (axes[axis][1] - axes[axis][0]) * step / (n - 1);
    };

    // coarse stage: keep the best few feasible grid points
    struct Candidate {
        double f;
        std::vector<double> x;
    };
    std::vector<Candidate> best;
    const size_t keep = 40;
    auto consider = [&](std::vector<double> x) {
        if (!obj.feasible(x)) return;
        const double f = obj.value(x);
        const auto pos = std::find_if(best.begin(), best.end(), [&](const Candidate& c) {
            return f < c.f || (f == c.f && lex_less(x, c.x));
        });
        best.insert(pos, {f, std::move(x)});
        if (best.size() > keep) best.pop_back();
    };
    std::vector<double> x(dims);
    for (int i1 = 0; i1 < n; ++i1) {
        x[0] = axis_value(0, i1);
        for (int i2 = 0; i2 < n; ++i2) {
            x[1] = axis_value(1, i2);
            for (int i3 = 0; i3 < n; ++i3) {
                x[2] = axis_value(2, i3);
                if (dims == 3) {
                    consider(x);
                    continue;
                }
                for (int i4 = 0; i4 < n; ++i4) {
                    x[3] = axis_value(3, i4);
                    consider(x);
                }
            }
        }
    }
    if (best.empty())
        throw numerical_error("optimize_extreme: no feasible point found on the coarse grid");

    // refinement in three stages: a cheap chord polish over the wide
    // candidate pool, then full Nelder-Mead plus rich chord hopping from the
    // surviving basins
    const double scale0 = (axes[0][1] - axes[0][0]) / (n - 1);
    const double reach = 2.0 * (axes[0][1] - axes[0][0]);

    // boundary exits of rays from the maximally mixed center catch optima on
    // features narrower than the coarse grid step
    for (const RayExit& e : ray_seed_exits(obj, reach)) best.push_back({e.f, e.x});

    // feasible anchors for the boundary crawl: all candidates plus the center
    std::vector<std::vector<double>> anchors;
    anchors.push_back(std::vector<double>(dims, 0.0));
    for (const Candidate& c : best) anchors.push_back(c.x);

    std::vector<Candidate> pool;
    for (const Candidate& seed : best) {
        const SimplexVertex v = chord_polish(obj, {seed.x, seed.f}, reach, 4, false, anchors);
        pool.push_back({v.f, v.x});
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        return a.f < b.f || (a.f == b.f && lex_less(a.x, b.x));
    });
    // keep the best pairwise-distant survivors (distinct basins), at most two
    // per sign quadrant of (q3, q) so mirror basins cannot crowd out the rest
    std::vector<Candidate> seeds;
    std::array<int, 4> per_quadrant{0, 0, 0, 0};
    for (const Candidate& c : pool) {
        if (seeds.size() >= 8) break;
        const bool near = std::any_of(seeds.begin(), seeds.end(), [&](const Candidate& s) {
            double dist = 0.0;
            for (size_t i = 0; i < c.x.size(); ++i)
                dist = std::max(dist, std::abs(c.x[i] - s.x[i]));
            return dist < 0.05;
        });
        if (near) continue;
        const int quadrant = (c.x[2] >= 0.0 ? 0 : 1) + (dims == 4 && c.x[3] < 0.0 ? 2 : 0);
        if (per_quadrant[quadrant] >= 2) continue;
        ++per_quadrant[quadrant];
        seeds.push_back(c);
    }

    SimplexVertex champion{seeds.front().x, seeds.front().f};
    for (const Candidate& seed : seeds) {
        SimplexVertex cur{seed.x, seed.f};
        for (int restart = 0; restart < 3; ++restart) {
            const double scale = scale0 / std::pow(10.0, restart);
            cur = nelder_mead(obj, cur.x, scale, config.step_tol, 400 * dims);
            cur = chord_polish(obj, cur, reach, 120, true, anchors);
        }
        cur = labeling_rounds(obj, cur, reach, anchors);
        if (cur.f < champion.f || (cur.f == champion.f && lex_less(cur.x, champion.x)))
            champion = cur;
    }

    OptimizeResult result;
    result.d = d;
    result.argmin = obj.params(champion.x);
    result.value = champion.f;
    result.mode = config.mode;
    const SimplexCoefficients coeffs = family_coefficients(result.argmin);
    result.min_coefficient = coeffs.min();
    result.min_pt_eigenvalue = simplex_pt_spectrum(coeffs).front();
    result.i_value = witness.i_value(coeffs);
    const WitnessEvaluator identity_witness(build_complete_mub(d), WitnessOptions{true, false});
    result.i_value_identity = identity_witness.i_value(coeffs);
    return result;
}

// ---------------------------------------------------------------------------
// incomplete-set scan
// ---------------------------------------------------------------------------

IncompleteScanReport incomplete_mub_scan(int d, int m, int grid,
                                         std::optional<std::vector<std::array<double, 2>>> settings) {
    MubSet set = mub_set_for(d);
    if (m < 1 || m > static_cast<int>(set.bases.size()))
        throw std::invalid_argument("incomplete_mub_scan: m exceeds the available bases");
    set.bases.resize(m);
    const WitnessEvaluator witness(std::move(set));

    IncompleteScanReport rep;
    rep.d = d;
    rep.m = m;
    rep.grid = grid;
    rep.bound = witness.bound();
    rep.max_excess = -std::numeric_limits<double>::infinity();

    if (settings) {
        rep.settings = *settings;
    } else {
        double q3star, qstar;
        if (d == 6) {
            q3star = 1.0 / std::sqrt(6.0);
            qstar = 0.0;
        } else {
            const OptimizeResult opt = optimize_extreme(d);
            q3star = opt.argmin.q3;
            qstar = opt.argmin.q;
        }
        rep.settings = {{q3star, qstar}, {0.0, 0.0}, {q3star / 2.0, 0.0}};
    }

    for (const auto& [q3, q] : rep.settings) {
        const auto box = positivity_bounding_box(d, q3, q);
        if (!box) continue;
        for (int i = 0; i < grid; ++i) {
            const double q1 = box->q1_lo + (box->q1_hi - box->q1_lo) * i / (grid - 1);
            for (int j = 0; j < grid; ++j) {
                const double q2 = box->q2_lo + (box->q2_hi - box->q2_lo) * j / (grid - 1);
                const SimplexCoefficients c = family_coefficients({d, q1, q2, q3, q});
                if (c.min() < -1e-10) continue;
                if (simplex_pt_spectrum(c).front() < -1e-10) continue;
                ++rep.feasible_points;
                rep.max_excess = std::max(rep.max_excess, witness.i_value(c) - rep.bound);
            }
        }
    }
    if (rep.feasible_points == 0) rep.max_excess = 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// multipartite comparison
// ---------------------------------------------------------------------------

std::vector<FamilyParams> sample_positive_params(int d, int count, std::uint64_t seed,
                                                 std::optional<ParamBox> box_opt) {
    const ParamBox box = box_opt.value_or(ParamBox::for_dimension(d));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u1(box.q1_lo, box.q1_hi), u2(box.q2_lo, box.q2_hi),
        u3(box.q3_lo, box.q3_hi), uq(box.q_lo, box.q_hi);
    std::vector<FamilyParams> out;
    out.reserve(count);
    long guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 4000L * count)
            throw numerical_error("sample_positive_params: rejection sampling stalled");
        FamilyParams p{d, u1(rng), u2(rng), u3(rng), uq(rng)};
        if (family_coefficients(p).min() >= 0.0) out.push_back(p);
    }
    return out;
}

MultiCompareReport multi_compare(int d, int n, int samples, bool all_cuts, std::uint64_t seed) {
    MultiCompareReport rep;
    rep.d = d;
    rep.n = n;
    rep.all_cuts = all_cuts;
    rep.default_cut = {1};  // the Weyl-carrying factor of the first pair

    const MultipartiteVertices vertices(d, n);
    const TensorShape shape = multipartite_shape(d, n);
    const double tol = 1e-10;

    // sample uniformly from the box (not conditioned on positivity: the
    // positivity verdicts themselves are being compared)
    const ParamBox box = ParamBox::for_dimension(d);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u1(box.q1_lo, box.q1_hi), u2(box.q2_lo, box.q2_hi),
        u3(box.q3_lo, box.q3_hi), uq(box.q_lo, box.q_hi);

    std::vector<std::vector<int>> cuts;
    if (all_cuts) {
        // every bipartition of the 2n factors, as the subsets containing
        // factor 0's complement... enumerate nonempty proper subsets not
        // containing factor 0 (PT over S and its complement agree in spectrum)
        const int factors = 2 * n;
        for (unsigned mask = 1; mask < (1u << factors); ++mask) {
            if (mask & 1u) continue;  // fix factor 0 on the untransposed side
            std::vector<int> cut;
            for (int f = 0; f < factors; ++f)
                if (mask & (1u << f)) cut.push_back(f);
            cuts.push_back(std::move(cut));
        }
    } else {
        cuts.push_back(rep.default_cut);
    }

    for (int s = 0; s < samples; ++s) {
        FamilyParams p{d, u1(rng), u2(rng), u3(rng), uq(rng)};
        const SimplexCoefficients coeffs = family_coefficients(p);
        MultiCompareRecord rec;
        rec.params = p;
        rec.positive_bi = coeffs.min() >= -tol;
        rec.ppt_bi = simplex_pt_spectrum(coeffs).front() >= -tol;

        const Matrix rho = vertices.mix(coeffs);
        rec.positive_multi = hermitian_eigenvalues(rho).front() >= -tol;
        rec.ppt_multi = true;
        for (const std::vector<int>& cut : cuts) {
            if (min_eigenvalue(partial_transpose(rho, shape, cut)) < -tol) {
                rec.ppt_multi = false;
                break;
            }
        }

        ++rep.samples;
        if (rec.positive_bi == rec.positive_multi) ++rep.positivity_agreements;
        if (rec.ppt_bi == rec.ppt_multi) ++rep.ppt_agreements;
        if (rec.positive_bi != rec.positive_multi || rec.ppt_bi != rec.ppt_multi)
            rep.disagreements.push_back(rec);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_csv(const std::vector<ScanRecord>& records, std::ostream& os) {
    os << "q1,q2,positive,ppt,I,detected,bound_entangled\n";
    for (const ScanRecord& r : records) {
        os << format_double(r.q1) << ',' << format_double(r.q2) << ',' << (r.positive ? 1 : 0)
           << ',' << (r.ppt ? 1 : 0) << ',' << format_double(r.i_value) << ','
           << (r.detected ? 1 : 0) << ',' << (r.bound_entangled ? 1 : 0) << '\n';
    }
}

void write_csv(const std::vector<ScanRecord>& records, const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary: keep LF endings everywhere
    if (!os) throw std::invalid_argument("write_csv: cannot open " + path);
    write_csv(records, os);
    if (!os) throw std::invalid_argument("write_csv: write failed for " + path);
}

nlohmann::json records_to_json(const std::vector<ScanRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ScanRecord& r : records)
        arr.push_back({{"q1", r.q1},
                       {"q2", r.q2},
                       {"positive", r.positive},
                       {"ppt", r.ppt},
                       {"I", r.i_value},
                       {"detected", r.detected},
                       {"bound_entangled", r.bound_entangled}});
    return arr;
}

void to_json(nlohmann::json& j, const OptimizeResult& r) {
    j = nlohmann::json{{"d", r.d},
                       {"argmin", r.argmin},
                       {"value", r.value},
                       {"i_value", r.i_value},
                       {"i_value_identity", r.i_value_identity},
                       {"min_coefficient", r.min_coefficient},
                       {"min_pt_eigenvalue", r.min_pt_eigenvalue},
                       {"labels", r.mode == LabelingMode::maximized ? "max" : "identity"}};
}

void to_json(nlohmann::json& j, const IncompleteScanReport& r) {
    j = nlohmann::json{{"d", r.d},
                       {"m", r.m},
                       {"grid", r.grid},
                       {"bound", r.bound},
                       {"max_excess", r.max_excess},
                       {"feasible_points", r.feasible_points},
                       {"settings", r.settings}};
}

void to_json(nlohmann::json& j, const MultiCompareReport& r) {
    nlohmann::json disagreements = nlohmann::json::array();
    for (const MultiCompareRecord& rec : r.disagreements)
        disagreements.push_back({{"params", rec.params},
                                 {"positive_bipartite", rec.positive_bi},
                                 {"ppt_bipartite", rec.ppt_bi},
                                 {"positive_multipartite", rec.positive_multi},
                                 {"ppt_multipartite", rec.ppt_multi}});
    j = nlohmann::json{{"d", r.d},
                       {"n", r.n},
                       {"samples", r.samples},
                       {"positivity_agreements", r.positivity_agreements},
                       {"ppt_agreements", r.ppt_agreements},
                       {"all_cuts", r.all_cuts},
                       {"default_cut", r.default_cut},
                       {"disagreements", disagreements}};
}

}  // namespace mubx
