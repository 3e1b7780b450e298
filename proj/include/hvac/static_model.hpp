#ifndef HVAC_STATIC_MODEL_HPP
#define HVAC_STATIC_MODEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hvac/dynamics.hpp"
#include "hvac/errors.hpp"
#include "hvac/rng.hpp"

namespace hvac {

/// A (satisfaction, energy) pair: the coordinate system of the static model.
struct OperatingPoint {
    double satisfaction = 0.0;  // S
    double energy = 0.0;        // E
};

/// Rectangular cell lattice over [s_lo, s_hi] x [e_lo, e_hi]. Values live at
/// cell centers; cell (i, j) has center (s_center(i), e_center(j)).
struct Grid2D {
    double s_lo = 0.0, s_hi = 1.0;
    double e_lo = 0.0, e_hi = 1.0;
    int n_s = 0, n_e = 0;

    double ds() const { return (s_hi - s_lo) / n_s; }
    double de() const { return (e_hi - e_lo) / n_e; }
    double s_center(int i) const { return s_lo + (i + 0.5) * ds(); }
    double e_center(int j) const { return e_lo + (j + 0.5) * de(); }
    int cells() const { return n_s * n_e; }
    int index(int i, int j) const { return i * n_e + j; }

    /// Cell containing p; false if p is outside the grid.
    bool locate(const OperatingPoint& p, int& i, int& j) const {
        i = static_cast<int>(std::floor((p.satisfaction - s_lo) / ds()));
        j = static_cast<int>(std::floor((p.energy - e_lo) / de()));
        // Points exactly on the upper edges belong to the last cell.
        if (i == n_s && p.satisfaction <= s_hi + 1e-12 * (s_hi - s_lo)) i = n_s - 1;
        if (j == n_e && p.energy <= e_hi + 1e-12 * (e_hi - e_lo)) j = n_e - 1;
        return i >= 0 && i < n_s && j >= 0 && j < n_e;
    }

    /// Grid whose first and last cell centers sit exactly on the given extents.
    static Grid2D spanning_centers(double s_min, double s_max, double e_min,
                                   double e_max, int n_s, int n_e) {
        if (n_s < 2 || n_e < 2)
            throw ArgumentError("grid: need at least 2 cells per axis");
        if (!(s_max > s_min) || !(e_max > e_min))
            throw ArgumentError("grid: extents must have positive span");
        Grid2D g;
        g.n_s = n_s;
        g.n_e = n_e;
        double ds = (s_max - s_min) / (n_s - 1);
        double de = (e_max - e_min) / (n_e - 1);
        g.s_lo = s_min - 0.5 * ds;
        g.s_hi = s_max + 0.5 * ds;
        g.e_lo = e_min - 0.5 * de;
        g.e_hi = e_max + 0.5 * de;
        return g;
    }
};

/// Uniform sampling ranges for the Monte Carlo reduction. The mode range is
/// integer-valued; all other ranges are continuous. Quantities drawn once per
/// sample are held constant over the period.
struct Bounds {
    double lo = 0.0, hi = 0.0;
};

struct SampleSpec {
    Bounds flow_min;       // per-zone F_min draw
    Bounds flow_max;       // per-zone F_max draw
    Bounds mode;           // integer endpoints in {1,2,3}
    Bounds outside_temp;   // o_k
    Bounds load;           // per-zone Q_k
    int count = 0;         // N
    std::uint64_t seed = 0;
    HvacConfiguration base;  // fields not sampled (setpoints, gains, caps)

    void validate() const {
        auto check = [](const Bounds& b, const char* name) {
            if (!(b.lo <= b.hi))
                throw ArgumentError(std::string("sample spec: lower bound above upper for ") + name);
        };
        check(flow_min, "flow_min");
        check(flow_max, "flow_max");
        check(mode, "mode");
        check(outside_temp, "outside_temp");
        check(load, "load");
        if (count < 1) throw ArgumentError("sample spec: sample count must be >= 1");
        if (mode.lo < 1 || mode.hi > kModeCount)
            throw ArgumentError("sample spec: mode range must lie in {1,2,3}");
    }
};

/// Structural landmarks of the static model.
struct KeyPoints {
    OperatingPoint alpha;  // lower-satisfaction work minimum
    OperatingPoint omega;  // higher-satisfaction work minimum
    double s_min = 0.0, s_max = 0.0, s_4 = 0.0;
    double e_min = 0.0, e_max = 0.0, e_opt = 0.0, e_3 = 0.0;
};

struct StaticModel {
    Grid2D grid;
    std::vector<std::uint8_t> feasible;  // mask over grid cells
    std::vector<double> work;            // W in [0,1] on feasible cells
    KeyPoints key_points;
};

/// Mask lookup of the containing cell.
inline bool membership(const StaticModel& model, const OperatingPoint& p) {
    int i, j;
    if (!model.grid.locate(p, i, j)) return false;
    return model.feasible[model.grid.index(i, j)] != 0;
}

/// Bilinear interpolation of the work surface between cell centers.
/// Corners falling outside the feasible mask borrow the containing cell's
/// value so evaluation stays defined up to the region boundary.
inline double work_at(const StaticModel& model, const OperatingPoint& p) {
    if (!membership(model, p))
        throw DomainError("work_at: point outside the feasible region");
    const Grid2D& g = model.grid;
    int ci, cj;
    g.locate(p, ci, cj);
    double fallback = model.work[g.index(ci, cj)];

    double u = (p.satisfaction - g.s_lo) / g.ds() - 0.5;
    double v = (p.energy - g.e_lo) / g.de() - 0.5;
    int i0 = static_cast<int>(std::floor(u));
    int j0 = static_cast<int>(std::floor(v));
    double fu = u - i0, fv = v - j0;

    auto corner = [&](int i, int j) {
        if (i < 0 || i >= g.n_s || j < 0 || j >= g.n_e) return fallback;
        int idx = g.index(i, j);
        return model.feasible[idx] ? model.work[idx] : fallback;
    };
    double w00 = corner(i0, j0), w10 = corner(i0 + 1, j0);
    double w01 = corner(i0, j0 + 1), w11 = corner(i0 + 1, j0 + 1);
    return (1 - fu) * (1 - fv) * w00 + fu * (1 - fv) * w10 +
           (1 - fu) * fv * w01 + fu * fv * w11;
}

/// Result of the Monte Carlo reduction, with the diverged-sample count.
struct Cloud {
    std::vector<OperatingPoint> points;
    int diverged = 0;
};

/// N closed-loop simulations with independently drawn configurations and
/// disturbances. Sample k uses its own RNG stream derived from (seed, k), so
/// the cloud is identical regardless of evaluation order.
inline Cloud monte_carlo_cloud(const BuildingModel& model, const SampleSpec& spec) {
    spec.validate();
    model.validate();
    Cloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(spec.count));
    for (int s = 0; s < spec.count; ++s) {
        Rng rng = Rng::for_sample(spec.seed, static_cast<std::uint64_t>(s));
        HvacConfiguration cfg = spec.base;
        cfg.mode = rng.uniform_int(static_cast<int>(spec.mode.lo),
                                   static_cast<int>(spec.mode.hi));
        for (int i = 0; i < model.zones; ++i) {
            cfg.flow_min[i] = rng.uniform(spec.flow_min.lo, spec.flow_min.hi);
            cfg.flow_max[i] = std::max(cfg.flow_min[i],
                                       rng.uniform(spec.flow_max.lo, spec.flow_max.hi));
        }
        double outside = rng.uniform(spec.outside_temp.lo, spec.outside_temp.hi);
        std::vector<double> load(static_cast<std::size_t>(model.zones));
        for (int i = 0; i < model.zones; ++i)
            load[i] = rng.uniform(spec.load.lo, spec.load.hi);

        DisturbanceTrace dist;
        dist.outside_temp.assign(static_cast<std::size_t>(model.steps_per_period), outside);
        dist.load.assign(static_cast<std::size_t>(model.steps_per_period), load);
        try {
            auto out = simulate_period(model, cfg, dist, cfg.desired_temp);
            cloud.points.push_back({out.satisfaction, out.energy});
        } catch (const SimulationDivergedError&) {
            ++cloud.diverged;
        }
    }
    if (2 * cloud.diverged > spec.count)
        throw SamplingError("monte carlo: more than half of the samples diverged (" +
                            std::to_string(cloud.diverged) + " of " +
                            std::to_string(spec.count) + ")");
    return cloud;
}

/// Binned histogram smoothed by a truncated Gaussian kernel (bandwidth in
/// grid cells, kernel cut at three bandwidths). Normalized so that
/// sum(cell value) * cell area = 1.
inline std::vector<double> estimate_density(const std::vector<OperatingPoint>& points,
                                            const Grid2D& grid, double bandwidth) {
    if (points.empty()) throw ArgumentError("estimate_density: no points");
    if (!(bandwidth > 0.0)) throw ArgumentError("estimate_density: bandwidth must be positive");

    std::vector<double> counts(static_cast<std::size_t>(grid.cells()), 0.0);
    int inside = 0;
    for (const auto& p : points) {
        int i, j;
        if (grid.locate(p, i, j)) {
            counts[static_cast<std::size_t>(grid.index(i, j))] += 1.0;
            ++inside;
        }
    }
    if (inside == 0) throw ArgumentError("estimate_density: all points fall outside the grid");

    // Separable smoothing.
    int radius = static_cast<int>(std::ceil(3.0 * bandwidth));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    for (int t = -radius; t <= radius; ++t)
        kernel[static_cast<std::size_t>(t + radius)] =
            std::exp(-0.5 * (t / bandwidth) * (t / bandwidth));

    std::vector<double> tmp(counts.size(), 0.0), density(counts.size(), 0.0);
    for (int i = 0; i < grid.n_s; ++i)
        for (int j = 0; j < grid.n_e; ++j) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                int ii = i + t;
                if (ii < 0 || ii >= grid.n_s) continue;
                acc += kernel[static_cast<std::size_t>(t + radius)] *
                       counts[static_cast<std::size_t>(grid.index(ii, j))];
            }
            tmp[static_cast<std::size_t>(grid.index(i, j))] = acc;
        }
    for (int i = 0; i < grid.n_s; ++i)
        for (int j = 0; j < grid.n_e; ++j) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                int jj = j + t;
                if (jj < 0 || jj >= grid.n_e) continue;
                acc += kernel[static_cast<std::size_t>(t + radius)] *
                       tmp[static_cast<std::size_t>(grid.index(i, jj))];
            }
            density[static_cast<std::size_t>(grid.index(i, j))] = acc;
        }

    double mass = 0.0;
    for (double d : density) mass += d;
    mass *= grid.ds() * grid.de();
    for (double& d : density) d /= mass;
    return density;
}

/// Occupied cells dilated `dilation` times (4-neighborhood), then the largest
/// 4-connected component.
inline std::vector<std::uint8_t> extract_feasible(const std::vector<OperatingPoint>& points,
                                                  const Grid2D& grid, int dilation) {
    if (points.empty()) throw ArgumentError("extract_feasible: no points");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.cells()), 0);
    for (const auto& p : points) {
        int i, j;
        if (grid.locate(p, i, j)) mask[static_cast<std::size_t>(grid.index(i, j))] = 1;
    }
    for (int d = 0; d < dilation; ++d) {
        std::vector<std::uint8_t> grown = mask;
        for (int i = 0; i < grid.n_s; ++i)
            for (int j = 0; j < grid.n_e; ++j) {
                if (mask[static_cast<std::size_t>(grid.index(i, j))]) continue;
                bool neighbor = (i > 0 && mask[static_cast<std::size_t>(grid.index(i - 1, j))]) ||
                                (i + 1 < grid.n_s && mask[static_cast<std::size_t>(grid.index(i + 1, j))]) ||
                                (j > 0 && mask[static_cast<std::size_t>(grid.index(i, j - 1))]) ||
                                (j + 1 < grid.n_e && mask[static_cast<std::size_t>(grid.index(i, j + 1))]);
                if (neighbor) grown[static_cast<std::size_t>(grid.index(i, j))] = 1;
            }
        mask = std::move(grown);
    }

    // Largest 4-connected component; ties go to the component seen first in
    // scan order, which is deterministic.
    std::vector<int> label(mask.size(), -1);
    int best_label = -1, best_size = 0, next_label = 0;
    std::vector<int> stack;
    for (int start = 0; start < grid.cells(); ++start) {
        if (!mask[static_cast<std::size_t>(start)] || label[static_cast<std::size_t>(start)] >= 0)
            continue;
        int size = 0;
        stack.push_back(start);
        label[static_cast<std::size_t>(start)] = next_label;
        while (!stack.empty()) {
            int idx = stack.back();
            stack.pop_back();
            ++size;
            int i = idx / grid.n_e, j = idx % grid.n_e;
            int neighbors[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (auto& nb : neighbors) {
                if (nb[0] < 0 || nb[0] >= grid.n_s || nb[1] < 0 || nb[1] >= grid.n_e) continue;
                int nidx = grid.index(nb[0], nb[1]);
                if (mask[static_cast<std::size_t>(nidx)] && label[static_cast<std::size_t>(nidx)] < 0) {
                    label[static_cast<std::size_t>(nidx)] = next_label;
                    stack.push_back(nidx);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = next_label;
        }
        ++next_label;
    }
    for (std::size_t idx = 0; idx < mask.size(); ++idx)
        mask[idx] = label[idx] == best_label ? 1 : 0;
    return mask;
}

/// W = 1/(density + floor) on feasible cells, affinely rescaled to [0,1].
inline std::vector<double> work_surface(const std::vector<double>& density,
                                        const std::vector<std::uint8_t>& feasible,
                                        double floor) {
    if (!(floor > 0.0)) throw ArgumentError("work_surface: floor must be positive");
    if (density.size() != feasible.size())
        throw ArgumentError("work_surface: density and mask sizes differ");
    std::vector<double> work(density.size(), 0.0);
    double w_min = std::numeric_limits<double>::infinity();
    double w_max = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < density.size(); ++idx) {
        if (!feasible[idx]) continue;
        double w = 1.0 / (density[idx] + floor);
        work[idx] = w;
        w_min = std::min(w_min, w);
        w_max = std::max(w_max, w);
    }
    if (!(w_max > w_min))
        throw ModelShapeError("work_surface: constant density gives a degenerate surface");
    for (std::size_t idx = 0; idx < density.size(); ++idx)
        work[idx] = feasible[idx] ? (work[idx] - w_min) / (w_max - w_min) : 0.0;
    return work;
}

namespace detail {

/// Strict 8-neighbor local minima of the work surface over feasible cells.
inline std::vector<int> strict_local_minima(const Grid2D& grid,
                                            const std::vector<std::uint8_t>& feasible,
                                            const std::vector<double>& work) {
    std::vector<int> minima;
    for (int i = 0; i < grid.n_s; ++i)
        for (int j = 0; j < grid.n_e; ++j) {
            int idx = grid.index(i, j);
            if (!feasible[static_cast<std::size_t>(idx)]) continue;
            bool strict = true;
            int compared = 0;
            for (int di = -1; di <= 1 && strict; ++di)
                for (int dj = -1; dj <= 1 && strict; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= grid.n_s || jj < 0 || jj >= grid.n_e) continue;
                    int nidx = grid.index(ii, jj);
                    if (!feasible[static_cast<std::size_t>(nidx)]) continue;
                    ++compared;
                    if (!(work[static_cast<std::size_t>(nidx)] >
                          work[static_cast<std::size_t>(idx)]))
                        strict = false;
                }
            if (strict && compared > 0) minima.push_back(idx);
        }
    return minima;
}

inline bool is_boundary_cell(const Grid2D& grid, const std::vector<std::uint8_t>& feasible,
                             int i, int j) {
    if (!feasible[static_cast<std::size_t>(grid.index(i, j))]) return false;
    int neighbors[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    for (auto& nb : neighbors) {
        if (nb[0] < 0 || nb[0] >= grid.n_s || nb[1] < 0 || nb[1] >= grid.n_e) return true;
        if (!feasible[static_cast<std::size_t>(grid.index(nb[0], nb[1]))]) return true;
    }
    return false;
}

}  // namespace detail

/// Landmarks from a gridded mask/work pair: the two lowest strict local
/// minima of W (ordered by satisfaction), mask extremes, and the
/// right-boundary energies at maximum satisfaction.
inline KeyPoints extract_key_points(const Grid2D& grid,
                                    const std::vector<std::uint8_t>& feasible,
                                    const std::vector<double>& work) {
    auto minima = detail::strict_local_minima(grid, feasible, work);
    if (minima.size() < 2)
        throw ModelShapeError("extract_key_points: fewer than two strict local minima");
    // Two smallest work values; ties broken by lower satisfaction.
    auto cmp = [&](int a, int b) {
        if (work[static_cast<std::size_t>(a)] != work[static_cast<std::size_t>(b)])
            return work[static_cast<std::size_t>(a)] < work[static_cast<std::size_t>(b)];
        return a < b;  // scan order == increasing satisfaction index
    };
    std::sort(minima.begin(), minima.end(), cmp);
    int pit_a = minima[0], pit_b = minima[1];

    auto cell_point = [&](int idx) {
        return OperatingPoint{grid.s_center(idx / grid.n_e), grid.e_center(idx % grid.n_e)};
    };
    OperatingPoint first = cell_point(pit_a), second = cell_point(pit_b);
    KeyPoints kp;
    if (first.satisfaction < second.satisfaction) {
        kp.alpha = first;
        kp.omega = second;
    } else if (second.satisfaction < first.satisfaction) {
        kp.alpha = second;
        kp.omega = first;
    } else {
        throw ModelShapeError("extract_key_points: the two minima share a satisfaction value");
    }

    int i_min = grid.n_s, i_max = -1, j_min = grid.n_e, j_max = -1;
    for (int i = 0; i < grid.n_s; ++i)
        for (int j = 0; j < grid.n_e; ++j)
            if (feasible[static_cast<std::size_t>(grid.index(i, j))]) {
                i_min = std::min(i_min, i);
                i_max = std::max(i_max, i);
                j_min = std::min(j_min, j);
                j_max = std::max(j_max, j);
            }
    if (i_max < 0) throw ModelShapeError("extract_key_points: empty feasible mask");
    kp.s_min = grid.s_center(i_min);
    kp.s_max = grid.s_center(i_max);
    kp.e_min = grid.e_center(j_min);
    kp.e_max = grid.e_center(j_max);

    int j_opt = grid.n_e, j_3 = -1;
    for (int j = 0; j < grid.n_e; ++j)
        if (feasible[static_cast<std::size_t>(grid.index(i_max, j))]) {
            j_opt = std::min(j_opt, j);
            j_3 = std::max(j_3, j);
        }
    kp.e_opt = grid.e_center(j_opt);
    kp.e_3 = grid.e_center(j_3);

    int i_4 = -1;
    for (int i = 0; i < grid.n_s; ++i)
        if (feasible[static_cast<std::size_t>(grid.index(i, j_max))]) i_4 = i;
    kp.s_4 = grid.s_center(i_4);
    return kp;
}

/// Tolerances for the structural checks below.
struct KeyPointTolerances {
    double depth = 0.05;             // |W(alpha) - W(omega)|
    double isolation_margin = 0.01;  // other strict local minima must clear this
};

inline int extract_feasible_component_size(const StaticModel& model);

/// Throws ModelShapeError naming the violated clause if the model's key
/// points break any structural requirement: minima ordering, equal-depth
/// isolated minima, boundary placement of the extreme points, connectivity,
/// and the work range.
inline void validate_static_model(const StaticModel& model,
                                  const KeyPointTolerances& tol = {}) {
    const Grid2D& g = model.grid;
    const KeyPoints& kp = model.key_points;

    for (int idx = 0; idx < g.cells(); ++idx)
        if (model.feasible[static_cast<std::size_t>(idx)]) {
            double w = model.work[static_cast<std::size_t>(idx)];
            if (!(w >= 0.0 && w <= 1.0))
                throw ModelShapeError("static model: work value outside [0,1]");
        }

    if (!(kp.alpha.satisfaction < kp.omega.satisfaction))
        throw ModelShapeError("key points: minima ordering S^alpha < S^omega violated");
    if (!(kp.alpha.energy < kp.omega.energy))
        throw ModelShapeError("key points: minima ordering E^alpha < E^omega violated");

    int ia, ja, io, jo;
    if (!g.locate(kp.alpha, ia, ja) || !g.locate(kp.omega, io, jo))
        throw ModelShapeError("key points: minima fall outside the grid");
    double w_alpha = model.work[static_cast<std::size_t>(g.index(ia, ja))];
    double w_omega = model.work[static_cast<std::size_t>(g.index(io, jo))];
    if (std::abs(w_alpha - w_omega) > tol.depth)
        throw ModelShapeError("key points: minima depths differ beyond tolerance");

    auto minima = detail::strict_local_minima(g, model.feasible, model.work);
    double pit_top = std::max(w_alpha, w_omega);
    for (int idx : minima) {
        if (idx == g.index(ia, ja) || idx == g.index(io, jo)) continue;
        if (model.work[static_cast<std::size_t>(idx)] < pit_top + tol.isolation_margin)
            throw ModelShapeError("key points: a third local minimum violates the isolation margin");
    }

    auto on_boundary = [&](double s, double e, const char* name) {
        int i, j;
        if (!g.locate({s, e}, i, j) ||
            !detail::is_boundary_cell(g, model.feasible, i, j))
            throw ModelShapeError(std::string("key points: ") + name +
                                  " does not lie on the feasible boundary");
    };
    on_boundary(kp.s_min, kp.e_min, "(S_min, E_min)");
    on_boundary(kp.s_max, kp.e_opt, "(S_max, E_opt)");
    on_boundary(kp.s_max, kp.e_3, "(S_max, E_3)");
    on_boundary(kp.s_4, kp.e_max, "(S_4, E_max)");
    if (!(kp.e_opt <= kp.e_3))
        throw ModelShapeError("key points: E_opt <= E_3 violated");

    // Single 4-connected component.
    auto component = extract_feasible_component_size(model);
    int total = 0;
    for (auto f : model.feasible) total += f;
    if (component != total)
        throw ModelShapeError("static model: feasible mask is not a single connected component");
}

/// Size of the 4-connected component containing the first feasible cell.
inline int extract_feasible_component_size(const StaticModel& model) {
    const Grid2D& g = model.grid;
    int start = -1;
    for (int idx = 0; idx < g.cells(); ++idx)
        if (model.feasible[static_cast<std::size_t>(idx)]) {
            start = idx;
            break;
        }
    if (start < 0) return 0;
    std::vector<std::uint8_t> seen(model.feasible.size(), 0);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    int size = 0;
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        ++size;
        int i = idx / g.n_e, j = idx % g.n_e;
        int neighbors[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
        for (auto& nb : neighbors) {
            if (nb[0] < 0 || nb[0] >= g.n_s || nb[1] < 0 || nb[1] >= g.n_e) continue;
            int nidx = g.index(nb[0], nb[1]);
            if (model.feasible[static_cast<std::size_t>(nidx)] && !seen[static_cast<std::size_t>(nidx)]) {
                seen[static_cast<std::size_t>(nidx)] = 1;
                stack.push_back(nidx);
            }
        }
    }
    return size;
}

/// Options for the full Monte Carlo reduction pipeline.
struct ExtractionOptions {
    int n_s = 200;
    int n_e = 200;
    double bandwidth = 2.0;    // kernel bandwidth in grid cells
    int dilation = 1;
    double floor_fraction = 1e-3;  // work floor as a fraction of peak density
};

namespace detail {

/// Point-in-polygon, boundary-inclusive. Vertices in order, implicitly closed.
inline bool polygon_contains(const std::vector<std::array<double, 2>>& poly,
                             double x, double y, double eps) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t a = 0, b = n - 1; a < n; b = a++) {
        double ax = poly[a][0], ay = poly[a][1];
        double bx = poly[b][0], by = poly[b][1];
        // On-segment check.
        double cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
        double len = std::hypot(bx - ax, by - ay);
        if (len > 0.0 && std::abs(cross) <= eps * len) {
            double dot = (x - ax) * (bx - ax) + (y - ay) * (by - ay);
            if (dot >= -eps * len && dot <= len * len + eps * len) return true;
        }
        if ((ay > y) != (by > y)) {
            double x_int = ax + (y - ay) / (by - ay) * (bx - ax);
            if (x < x_int) inside = !inside;
        }
    }
    return inside;
}

}  // namespace detail

/// Analytic stand-in with exactly the structural features of the extracted
/// model: a polygon whose right boundary is the polyline
/// (S_min,E_min) -> (S_max,E_opt) -> (S_max,E_3) -> (S_4,E_max), closed on
/// the left through (S_min, .), and a work surface given by the normalized
/// minimum of two equal-depth radial bowls centered at alpha and omega.
/// Requested key points are snapped to cell centers so that extraction
/// recovers them exactly; the snapped values are stored on the result.
inline StaticModel canonical_model(const KeyPoints& requested, int n_s, int n_e,
                                   double left_top_fraction = 0.5) {
    const KeyPoints& r = requested;
    if (!(r.s_min < r.s_max) || !(r.e_min < r.e_max))
        throw ArgumentError("canonical_model: degenerate extents");
    if (!(r.alpha.satisfaction < r.omega.satisfaction) || !(r.alpha.energy < r.omega.energy))
        throw ArgumentError("canonical_model: minima ordering violated");
    if (!(r.e_min <= r.e_opt && r.e_opt <= r.e_3 && r.e_3 <= r.e_max))
        throw ArgumentError("canonical_model: need E_min <= E_opt <= E_3 <= E_max");
    if (!(r.s_min <= r.s_4 && r.s_4 <= r.s_max))
        throw ArgumentError("canonical_model: need S_min <= S_4 <= S_max");
    if (!(left_top_fraction > 0.0 && left_top_fraction < 1.0))
        throw ArgumentError("canonical_model: left_top_fraction must be in (0,1)");

    StaticModel model;
    model.grid = Grid2D::spanning_centers(r.s_min, r.s_max, r.e_min, r.e_max, n_s, n_e);
    const Grid2D& g = model.grid;

    auto snap_s = [&](double s) {
        int i = std::clamp(static_cast<int>(std::llround((s - g.s_lo) / g.ds() - 0.5)),
                           0, g.n_s - 1);
        return g.s_center(i);
    };
    auto snap_e = [&](double e) {
        int j = std::clamp(static_cast<int>(std::llround((e - g.e_lo) / g.de() - 0.5)),
                           0, g.n_e - 1);
        return g.e_center(j);
    };
    KeyPoints kp;
    kp.s_min = snap_s(r.s_min);
    kp.s_max = snap_s(r.s_max);
    kp.s_4 = snap_s(r.s_4);
    kp.e_min = snap_e(r.e_min);
    kp.e_max = snap_e(r.e_max);
    kp.e_opt = snap_e(r.e_opt);
    kp.e_3 = snap_e(r.e_3);
    kp.alpha = {snap_s(r.alpha.satisfaction), snap_e(r.alpha.energy)};
    kp.omega = {snap_s(r.omega.satisfaction), snap_e(r.omega.energy)};

    double e_left_top = kp.e_min + left_top_fraction * (kp.e_max - kp.e_min);
    std::vector<std::array<double, 2>> poly = {
        {kp.s_min, kp.e_min}, {kp.s_max, kp.e_opt}, {kp.s_max, kp.e_3},
        {kp.s_4, kp.e_max},   {kp.s_min, e_left_top}};
    double eps = 1e-9 * std::max(kp.s_max - kp.s_min, kp.e_max - kp.e_min);

    model.feasible.assign(static_cast<std::size_t>(g.cells()), 0);
    for (int i = 0; i < g.n_s; ++i)
        for (int j = 0; j < g.n_e; ++j)
            if (detail::polygon_contains(poly, g.s_center(i), g.e_center(j), eps))
                model.feasible[static_cast<std::size_t>(g.index(i, j))] = 1;

    auto inside = [&](const OperatingPoint& p, const char* name) {
        int i, j;
        if (!g.locate(p, i, j) || !model.feasible[static_cast<std::size_t>(g.index(i, j))])
            throw ArgumentError(std::string("canonical_model: ") + name +
                                " falls outside the constructed region");
    };
    inside(kp.alpha, "alpha");
    inside(kp.omega, "omega");

    // Work: min of two cones with vertices at the snapped minima, distances
    // measured in span-normalized coordinates, rescaled to [0,1].
    double s_span = kp.s_max - kp.s_min, e_span = kp.e_max - kp.e_min;
    model.work.assign(static_cast<std::size_t>(g.cells()), 0.0);
    double w_max = 0.0;
    for (int i = 0; i < g.n_s; ++i)
        for (int j = 0; j < g.n_e; ++j) {
            int idx = g.index(i, j);
            if (!model.feasible[static_cast<std::size_t>(idx)]) continue;
            double s = g.s_center(i), e = g.e_center(j);
            double da = std::hypot((s - kp.alpha.satisfaction) / s_span,
                                   (e - kp.alpha.energy) / e_span);
            double dw = std::hypot((s - kp.omega.satisfaction) / s_span,
                                   (e - kp.omega.energy) / e_span);
            double w = std::min(da, dw);
            model.work[static_cast<std::size_t>(idx)] = w;
            w_max = std::max(w_max, w);
        }
    if (!(w_max > 0.0)) throw ArgumentError("canonical_model: degenerate work surface");
    for (int idx = 0; idx < g.cells(); ++idx)
        if (model.feasible[static_cast<std::size_t>(idx)])
            model.work[static_cast<std::size_t>(idx)] /= w_max;

    model.key_points = kp;
    return model;
}

/// Cloud -> density -> mask -> work -> key points. Throws ModelShapeError if
/// the result violates the structural requirements.
inline StaticModel build_static_model(const std::vector<OperatingPoint>& points,
                                      const ExtractionOptions& opt = {},
                                      const KeyPointTolerances& tol = {}) {
    if (points.empty()) throw ArgumentError("build_static_model: no points");
    double s_min = std::numeric_limits<double>::infinity(), s_max = -s_min;
    double e_min = s_min, e_max = -s_min;
    for (const auto& p : points) {
        s_min = std::min(s_min, p.satisfaction);
        s_max = std::max(s_max, p.satisfaction);
        e_min = std::min(e_min, p.energy);
        e_max = std::max(e_max, p.energy);
    }
    StaticModel model;
    model.grid = Grid2D::spanning_centers(s_min, s_max, e_min, e_max, opt.n_s, opt.n_e);
    model.feasible = extract_feasible(points, model.grid, opt.dilation);
    auto density = estimate_density(points, model.grid, opt.bandwidth);
    double peak = *std::max_element(density.begin(), density.end());
    model.work = work_surface(density, model.feasible, opt.floor_fraction * peak);
    model.key_points = extract_key_points(model.grid, model.feasible, model.work);
    validate_static_model(model, tol);
    return model;
}

}  // namespace hvac

#endif
