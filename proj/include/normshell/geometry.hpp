#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "normshell/error.hpp"
#include "normshell/norm.hpp"
#include "normshell/vector.hpp"

namespace normshell {

/// r * x / ||x||. Returns the zero vector for r = 0 regardless of x.
inline Vector radial_project(const Norm& norm, const Vector& x, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw Error(Errc::invalid_argument, "projection radius must be finite and nonnegative");
    }
    if (r == 0.0) return Vector::zeros(x.dim());
    const double n = norm(x);
    if (n == 0.0) {
        throw Error(Errc::zero_vector, "cannot project the zero vector onto a sphere of positive radius");
    }
    return (r / n) * x;
}

/// Unit vector linearly independent of `u`: the projected basis vector e_j
/// with j the index of the smallest |u_j| (lowest index on ties). For the
/// zero vector this is the projected e_1.
inline Vector independent_unit(const Norm& norm, const Vector& u) {
    if (u.dim() < 2) {
        throw Error(Errc::dimension_too_small, "dimension must be at least 2");
    }
    std::size_t j = 0;
    if (!u.is_zero()) {
        for (std::size_t i = 1; i < u.dim(); ++i) {
            if (std::abs(u[i]) < std::abs(u[j])) j = i;
        }
    }
    return radial_project(norm, Vector::basis(u.dim(), j), 1.0);
}

/// Path on the sphere of radius a running from a*u (t = 0) to -a*u
/// (t = 1): the radial projection of the half circle
/// cos(pi t) u + sin(pi t) v in span{u, v}, where v is
/// `independent_unit(norm, u)`. The projected argument never vanishes
/// because u and v are linearly independent, so the path avoids the origin.
class SpherePath {
public:
    SpherePath(const Norm& norm, double a, const Vector& u) : norm_(norm), radius_(a), u_(u) {
        if (u.dim() < 2) {
            throw Error(Errc::dimension_too_small, "dimension must be at least 2");
        }
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw Error(Errc::invalid_argument, "sphere radius must be finite and nonnegative");
        }
        if (std::abs(norm(u) - 1.0) > 1e-12) {
            throw Error(Errc::invalid_argument, "sphere path needs a unit direction");
        }
        v_ = independent_unit(norm, u);
    }

    Vector operator()(double t) const {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw Error(Errc::invalid_argument, "path parameter must lie in [0, 1]");
        }
        if (t == 0.0) return radial_project(norm_, u_, radius_);
        if (t == 1.0) return radial_project(norm_, -u_, radius_);
        const double angle = std::numbers::pi * t;
        return radial_project(norm_, std::cos(angle) * u_ + std::sin(angle) * v_, radius_);
    }

    const Vector& start_direction() const noexcept { return u_; }
    const Vector& turn_direction() const noexcept { return v_; }

private:
    Norm norm_;
    double radius_;
    Vector u_;
    Vector v_;
};

inline Vector sphere_path(const Norm& norm, double a, const Vector& u, double t) {
    return SpherePath(norm, a, u)(t);
}

/// Largest observed violations of the norm axioms over random samples.
/// All fields are relative to the scale of the quantities involved, so a
/// genuine norm reports values near machine epsilon.
struct NormAudit {
    double homogeneity = 0.0;  // |N(lx) - |l| N(x)| / (1 + N(lx))
    double triangle = 0.0;     // (N(x+y) - N(x) - N(y))_+ / (1 + N(x) + N(y))
    double definiteness = 0.0; // 1 if some nonzero vector evaluated to <= 0
    std::size_t trials = 0;

    bool passes(double tol) const {
        return homogeneity <= tol && triangle <= tol && definiteness == 0.0;
    }
};

inline NormAudit audit_norm_axioms(const Norm& norm, std::size_t dim, std::size_t trials,
                                   std::uint64_t seed) {
    if (dim < 1) throw Error(Errc::invalid_argument, "audit dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> coord(0.0, 1.0);
    std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
    std::uniform_real_distribution<double> lambda(-10.0, 10.0);

    auto draw = [&] {
        std::vector<double> c(dim);
        const double s = std::pow(10.0, log_scale(rng));
        for (auto& v : c) v = s * coord(rng);
        return Vector(std::move(c));
    };

    NormAudit audit;
    audit.trials = trials;
    if (norm(Vector::zeros(dim)) != 0.0) audit.definiteness = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(norm(Vector::basis(dim, i)) > 0.0)) audit.definiteness = 1.0;
    }
    for (std::size_t k = 0; k < trials; ++k) {
        const Vector x = draw();
        const Vector y = draw();
        const double l = lambda(rng);
        const double nx = norm(x);
        const double ny = norm(y);
        if (!(nx > 0.0) || !(ny > 0.0)) audit.definiteness = 1.0;
        const double nlx = norm(l * x);
        audit.homogeneity = std::max(audit.homogeneity, std::abs(nlx - std::abs(l) * nx) / (1.0 + nlx));
        const double scale = 1.0 + nx + ny;
        audit.triangle = std::max(audit.triangle, std::max(0.0, norm(x + y) - nx - ny) / scale);
    }
    return audit;
}

} // namespace normshell
