#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normshell/error.hpp"

namespace normshell {

/// Dense real coordinate vector. Coordinates are always finite and the
/// dimension is at least 1.
class Vector {
public:
    Vector() = default;

    explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
    Vector(std::initializer_list<double> coords) : coords_(coords) { validate(); }

    static Vector zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

    static Vector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw Error(Errc::invalid_argument, "basis index out of range");
        }
        std::vector<double> c(dim, 0.0);
        c[index] = 1.0;
        return Vector(std::move(c));
    }

    std::size_t dim() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }

    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    bool is_zero() const noexcept {
        for (double c : coords_) {
            if (c != 0.0) return false;
        }
        return true;
    }

    friend Vector operator+(const Vector& x, const Vector& y) {
        check_same_dim(x, y);
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.coords_[i] + y.coords_[i];
        return Vector(std::move(out));
    }

    friend Vector operator-(const Vector& x, const Vector& y) {
        check_same_dim(x, y);
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.coords_[i] - y.coords_[i];
        return Vector(std::move(out));
    }

    friend Vector operator-(const Vector& x) { return -1.0 * x; }

    friend Vector operator*(double s, const Vector& x) {
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * x.coords_[i];
        return Vector(std::move(out));
    }

    friend Vector operator*(const Vector& x, double s) { return s * x; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    void validate() const {
        if (coords_.empty()) {
            throw Error(Errc::invalid_argument, "vector must have dimension at least 1");
        }
        for (double c : coords_) {
            if (!std::isfinite(c)) {
                throw Error(Errc::invalid_argument, "vector coordinates must be finite");
            }
        }
    }

    static void check_same_dim(const Vector& x, const Vector& y) {
        if (x.dim() != y.dim()) {
            throw Error(Errc::dimension_mismatch,
                        "dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                            std::to_string(y.dim()));
        }
    }

    std::vector<double> coords_;
};

/// Coordinatewise sum of a non-empty list of equal-dimension vectors.
inline Vector sum(std::span<const Vector> xs) {
    if (xs.empty()) {
        throw Error(Errc::invalid_argument, "cannot sum an empty list of vectors");
    }
    Vector total = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) total = total + xs[i];
    return total;
}

} // namespace normshell
