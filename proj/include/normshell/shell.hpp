#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "normshell/error.hpp"
#include "normshell/norm.hpp"
#include "normshell/vector.hpp"

namespace normshell {

/// Non-empty list of finite, nonnegative sphere radii.
class RadiusList {
public:
    RadiusList(std::initializer_list<double> radii) : radii_(radii) { validate(); }
    explicit RadiusList(std::vector<double> radii) : radii_(std::move(radii)) { validate(); }

    std::size_t size() const noexcept { return radii_.size(); }
    double operator[](std::size_t i) const { return radii_[i]; }
    std::span<const double> values() const noexcept { return radii_; }

    double sum() const noexcept {
        double s = 0.0;
        for (double a : radii_) s += a;
        return s;
    }

    double max() const noexcept { return *std::max_element(radii_.begin(), radii_.end()); }

    RadiusList prefix(std::size_t count) const {
        return RadiusList(std::vector<double>(radii_.begin(), radii_.begin() + count));
    }

private:
    void validate() const {
        if (radii_.empty()) throw Error(Errc::invalid_argument, "radius list must not be empty");
        for (double a : radii_) {
            if (!(a >= 0.0) || !std::isfinite(a)) {
                throw Error(Errc::invalid_argument, "radii must be finite and nonnegative");
            }
        }
    }

    std::vector<double> radii_;
};

/// Closed shell {z : inner <= ||z|| <= outer} around the origin.
struct Shell {
    double inner = 0.0;
    double outer = 0.0;

    Shell() = default;
    Shell(double inner_radius, double outer_radius) : inner(inner_radius), outer(outer_radius) {
        if (!(inner >= 0.0) || !(inner <= outer) || !std::isfinite(outer)) {
            throw Error(Errc::invalid_argument, "shell needs 0 <= inner <= outer < inf");
        }
    }

    friend bool operator==(const Shell&, const Shell&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
    double width() const noexcept { return hi - lo; }
};

/// Set of norms of sums x_1 + ... + x_n with ||x_i|| = a_i:
/// outer = sum a_i, inner = (2 max a - sum a)_+ (or a_1 for a single radius).
inline Shell shell_of_radii(const RadiusList& a) {
    const double total = a.sum();
    if (a.size() == 1) return Shell(a[0], a[0]);
    const double inner = std::min(std::max(0.0, 2.0 * a.max() - total), total);
    return Shell(inner, total);
}

/// Shell of the sums {r-sphere + a-sphere : r in [s.inner, s.outer]}, i.e.
/// [min |r - a|, max (r + a)] over the radius interval.
inline Shell extend_shell(const Shell& s, double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw Error(Errc::invalid_argument, "radius must be finite and nonnegative");
    }
    double inner = 0.0;
    if (a <= s.inner) {
        inner = s.inner - a;
    } else if (a >= s.outer) {
        inner = a - s.outer;
    }
    return Shell(inner, s.outer + a);
}

inline bool membership(const Norm& norm, const Vector& z, const Shell& s, double rel_tol) {
    if (!(rel_tol >= 0.0)) throw Error(Errc::invalid_argument, "tolerance must be nonnegative");
    const double eps = rel_tol * (1.0 + s.outer);
    const double n = norm(z);
    return s.inner - eps <= n && n <= s.outer + eps;
}

/// Radii r in the prefix shell for which a vector of norm `w_norm` splits
/// into an r-sphere point plus an a-sphere point: [max(inner, |w - a|),
/// min(outer, w + a)]. An inversion of at most tol * (1 + outer + a + w)
/// is treated as rounding and collapsed to a single point inside the
/// prefix shell; anything larger throws Infeasible.
inline Interval feasible_r_interval(const Shell& s_prefix, double a, double w_norm, double tol = 1e-12) {
    if (!(a >= 0.0) || !(w_norm >= 0.0)) {
        throw Error(Errc::invalid_argument, "radius and residual norm must be nonnegative");
    }
    const double lo = std::max(s_prefix.inner, std::abs(w_norm - a));
    const double hi = std::min(s_prefix.outer, w_norm + a);
    if (lo <= hi) return {lo, hi};
    if (lo - hi > tol * (1.0 + s_prefix.outer + a + w_norm)) {
        throw Error(Errc::infeasible, "no intermediate radius splits the residual");
    }
    const double r = std::clamp(lo + 0.5 * (hi - lo), s_prefix.inner, s_prefix.outer);
    return {r, r};
}

} // namespace normshell
