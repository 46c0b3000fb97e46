#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "normshell/bisection.hpp"
#include "normshell/error.hpp"
#include "normshell/geometry.hpp"
#include "normshell/norm.hpp"
#include "normshell/shell.hpp"
#include "normshell/vector.hpp"

namespace normshell {

struct SolverConfig {
    double tol = 1e-10; // absolute norm error, scaled by (1 + target radius)
    int max_iter = 200;

    void validate() const {
        if (!(tol > 0.0) || !std::isfinite(tol)) {
            throw Error(Errc::invalid_argument, "solver tolerance must be positive");
        }
        if (max_iter < 1) throw Error(Errc::invalid_argument, "max_iter must be at least 1");
    }
};

/// Result of splitting z into x + y with ||x|| = a and ||y|| ~ b.
struct TwoSplit {
    Vector x;
    Vector y;
    double t = 0.0;     // path parameter of x on the a-sphere
    int iterations = 0; // bisection steps taken
};

/// Splits z into x + y with ||x|| = a and ||y|| = b, which is possible
/// exactly when |a - b| <= ||z|| <= a + b (dimension >= 2).
///
/// x walks the path from a*u to -a*u on the a-sphere, u = z / ||z||. Along
/// it g(t) = ||z - x(t)|| - b starts at | ||z|| - a | - b <= 0 and ends at
/// ||z|| + a - b >= 0, so bisection on t finds a root. y is always z - x,
/// so the sum is exact and the norm error sits in y alone. Inputs up to
/// tol * (1 + a + b) outside the feasible range are clamped to the nearer
/// path endpoint.
///
/// The observer receives every bisection bracket (lo, hi, g(lo), g(hi)).
template <class Observer = NoBracketObserver>
TwoSplit solve_two(const Norm& norm, const Vector& z, double a, double b, const SolverConfig& cfg = {},
                   Observer&& observe = {}) {
    cfg.validate();
    if (z.dim() < 2) throw Error(Errc::dimension_too_small, "dimension must be at least 2");
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(Errc::invalid_argument, "radii must be finite and nonnegative");
    }
    const double eps = cfg.tol * (1.0 + a + b);
    const double zn = norm(z);
    if (zn < std::abs(a - b) - eps || zn > a + b + eps) {
        throw Error(Errc::infeasible, "no split exists: |a - b| <= ||z|| <= a + b fails");
    }
    if (a == 0.0) return {Vector::zeros(z.dim()), z, 0.0, 0};

    const Vector u = zn > 0.0 ? (1.0 / zn) * z : independent_unit(norm, Vector::zeros(z.dim()));
    if (b == 0.0) {
        Vector x = radial_project(norm, u, a);
        Vector y = z - x;
        return {std::move(x), std::move(y), 0.0, 0};
    }

    const SpherePath path(norm, a, u);
    auto g = [&](double t) { return norm(z - path(t)) - b; };
    const double g0 = g(0.0);
    const double g1 = g(1.0);
    const double tol_y = cfg.tol * (1.0 + b);

    double t = 0.0;
    int iterations = 0;
    if (g0 > tol_y) {
        t = 0.0; // ||z|| marginally above a + b
    } else if (g1 < -tol_y) {
        t = 1.0; // ||z|| marginally below b - a
    } else {
        const auto root = bisect(g, 0.0, 1.0, std::min(g0, 0.0), std::max(g1, 0.0), tol_y, cfg.max_iter,
                                 std::forward<Observer>(observe));
        if (!root.converged) {
            throw Error(Errc::tolerance_not_reached,
                        "bisection stopped after " + std::to_string(root.iterations) +
                            " iterations with |g| = " + std::to_string(std::abs(root.value)));
        }
        t = root.t;
        iterations = root.iterations;
    }
    Vector x = path(t);
    Vector y = z - x;
    return {std::move(x), std::move(y), t, iterations};
}

/// Summands x_1..x_n of a vector z with ||x_i|| = a_i (to tolerance).
struct Decomposition {
    std::vector<Vector> summands;
    std::vector<double> target_radii;
    std::vector<double> achieved_norms;
    double max_norm_error = 0.0;
};

/// Writes z as a sum of n vectors with prescribed norms a_1..a_n. Works
/// for every z in shell_of_radii(a) when the dimension is at least 2.
///
/// Zero radii get zero summands. The remaining radii are peeled off from
/// the back: with residual w and prefix shell s of the radii still to be
/// placed, pick r as the midpoint of feasible_r_interval(s, a_i, ||w||),
/// split w into an r-sphere part and an a_i-sphere part, keep the latter
/// as x_i and continue with the former. The final residual is x_1.
inline Decomposition decompose(const Norm& norm, const Vector& z, const RadiusList& a,
                               const SolverConfig& cfg = {}) {
    cfg.validate();
    if (z.dim() < 2) throw Error(Errc::dimension_too_small, "dimension must be at least 2");
    const Shell full = shell_of_radii(a);
    if (!membership(norm, z, full, cfg.tol)) {
        throw Error(Errc::not_in_shell, "target norm " + std::to_string(norm(z)) + " lies outside [" +
                                            std::to_string(full.inner) + ", " +
                                            std::to_string(full.outer) + "]");
    }

    const std::size_t n = a.size();
    std::vector<Vector> summands(n, Vector::zeros(z.dim()));
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] > 0.0) positive.push_back(i);
    }

    if (positive.empty()) {
        summands[0] = z;
    } else {
        Vector w = z;
        std::vector<double> prefix;
        for (std::size_t k = positive.size() - 1; k >= 1; --k) {
            const std::size_t i = positive[k];
            prefix.clear();
            for (std::size_t j = 0; j < k; ++j) prefix.push_back(a[positive[j]]);
            const Shell s = shell_of_radii(RadiusList(prefix));
            try {
                const Interval feasible = feasible_r_interval(s, a[i], norm(w), cfg.tol);
                const double r = std::clamp(feasible.midpoint(), s.inner, s.outer);
                TwoSplit split = solve_two(norm, w, r, a[i], cfg);
                summands[i] = std::move(split.y);
                w = std::move(split.x);
            } catch (const Error& e) {
                throw Error(e.code(), std::string(e.what()) + " (summand " + std::to_string(i + 1) + ")", i);
            }
        }
        summands[positive.front()] = std::move(w);
    }

    Decomposition d;
    d.target_radii.assign(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < n; ++i) {
        const double achieved = norm(summands[i]);
        d.achieved_norms.push_back(achieved);
        d.max_norm_error = std::max(d.max_norm_error, std::abs(achieved - a[i]));
    }
    d.summands = std::move(summands);
    return d;
}

} // namespace normshell
