#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "normshell/error.hpp"
#include "normshell/geometry.hpp"
#include "normshell/norm.hpp"
#include "normshell/shell.hpp"
#include "normshell/vector.hpp"

namespace normshell {

using Rng = std::mt19937_64;

/// Norms ||P_a(cos t_i, sin t_i) + P_b(cos s_j, sin s_j)|| over a
/// steps x steps grid of angles, P_r being radial projection onto the
/// r-sphere. Exhaustive check of the two-sphere sum in the plane.
inline std::vector<double> grid_sum_norms_2d(const Norm& norm, double a, double b, std::size_t steps) {
    if (steps < 8) throw Error(Errc::invalid_argument, "grid needs at least 8 steps");
    std::vector<Vector> xs;
    std::vector<Vector> ys;
    xs.reserve(steps);
    ys.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(steps);
        const Vector dir{std::cos(angle), std::sin(angle)};
        xs.push_back(radial_project(norm, dir, a));
        ys.push_back(radial_project(norm, dir, b));
    }
    std::vector<double> out;
    out.reserve(steps * steps);
    for (const auto& x : xs) {
        for (const auto& y : ys) out.push_back(norm(x + y));
    }
    return out;
}

/// Point on the r-sphere in direction of a standard normal vector. Not
/// uniform on non-Euclidean spheres, but every open cone of directions has
/// positive probability.
inline Vector sample_sphere(const Norm& norm, double r, std::size_t dim, Rng& rng) {
    if (dim < 2) throw Error(Errc::dimension_too_small, "dimension must be at least 2");
    std::normal_distribution<double> coord(0.0, 1.0);
    std::vector<double> c(dim);
    for (;;) {
        for (auto& v : c) v = coord(rng);
        const Vector dir(c);
        if (!dir.is_zero()) return radial_project(norm, dir, r);
    }
}

/// Sums of independent sphere samples, one sphere per radius.
struct SampleBatch {
    std::vector<Vector> points;
    std::vector<double> achieved_sum_norms;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t sample_batch_size = 4096;

/// `trials` sums split into fixed batches of `sample_batch_size`; batch k
/// draws from an engine seeded with seed + k, so the output depends only
/// on the seed, never on `jobs`.
inline SampleBatch sample_sphere_sums(const Norm& norm, const RadiusList& radii, std::size_t dim,
                                      std::size_t trials, std::uint64_t seed, unsigned jobs = 1) {
    if (dim < 2) throw Error(Errc::dimension_too_small, "dimension must be at least 2");
    SampleBatch batch;
    batch.seed = seed;
    batch.points.assign(trials, Vector::zeros(dim));
    batch.achieved_sum_norms.assign(trials, 0.0);
    const std::size_t n_batches = (trials + sample_batch_size - 1) / sample_batch_size;

    auto run_batch = [&](std::size_t k) {
        Rng rng(seed + k);
        const std::size_t end = std::min(trials, (k + 1) * sample_batch_size);
        for (std::size_t t = k * sample_batch_size; t < end; ++t) {
            Vector s = Vector::zeros(dim);
            for (double a : radii.values()) s = s + sample_sphere(norm, a, dim, rng);
            batch.achieved_sum_norms[t] = norm(s);
            batch.points[t] = std::move(s);
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n_batches, 1))));
    if (jobs == 1) {
        for (std::size_t k = 0; k < n_batches; ++k) run_batch(k);
        return batch;
    }
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t k = w; k < n_batches; k += jobs) run_batch(k);
        });
    }
    workers.clear();
    return batch;
}

/// Counts of `values` in `bins` equal-width bins over [lo, hi]; values
/// outside are clamped to the end bins.
inline std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
    if (bins == 0) throw Error(Errc::invalid_argument, "histogram needs at least one bin");
    std::vector<std::size_t> counts(bins, 0);
    const double width = hi - lo;
    for (double v : values) {
        std::size_t idx = 0;
        if (width > 0.0) {
            const double pos = std::floor((v - lo) / width * static_cast<double>(bins));
            idx = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
        }
        ++counts[idx];
    }
    return counts;
}

struct CoverageReport {
    Shell shell;
    std::vector<std::size_t> histogram;
    std::size_t trials = 0;
    std::size_t out_of_shell = 0;
    std::size_t empty_bins = 0;
    bool coverage_checked = false; // bin occupancy is only asserted with enough trials
    bool pass = false;
};

/// Monte Carlo surjectivity check: sampled sums must stay inside the
/// shell (up to 1e-9 relative), and, for two or more spheres with
/// trials >= 1000 * bins, every bin over [inner, outer] must be hit.
inline CoverageReport shell_coverage_check(const Norm& norm, const RadiusList& radii, std::size_t dim,
                                           std::size_t trials, std::size_t bins, std::uint64_t seed,
                                           unsigned jobs = 1) {
    if (bins == 0 || trials < bins) throw Error(Errc::invalid_argument, "need trials >= bins >= 1");
    CoverageReport rep;
    rep.shell = shell_of_radii(radii);
    rep.trials = trials;
    const auto batch = sample_sphere_sums(norm, radii, dim, trials, seed, jobs);
    const double slack = 1e-9 * (1.0 + rep.shell.outer);
    for (double v : batch.achieved_sum_norms) {
        if (v < rep.shell.inner - slack || v > rep.shell.outer + slack) ++rep.out_of_shell;
    }
    rep.histogram = histogram(batch.achieved_sum_norms, rep.shell.inner, rep.shell.outer, bins);
    rep.empty_bins = static_cast<std::size_t>(std::count(rep.histogram.begin(), rep.histogram.end(), 0u));
    rep.coverage_checked = radii.size() >= 2 && trials >= 1000 * bins && rep.shell.outer > rep.shell.inner;
    rep.pass = rep.out_of_shell == 0 && (!rep.coverage_checked || rep.empty_bins == 0);
    return rep;
}

} // namespace normshell
