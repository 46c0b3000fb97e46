#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normshell/error.hpp"
#include "normshell/vector.hpp"

namespace normshell {

/// A norm on R^d. Built-in families are l_p and weighted l_p for
/// p in [1, inf]; p = inf is stored as +infinity and evaluates to the
/// (weighted) maximum absolute coordinate. Custom norms wrap a user
/// evaluator which is trusted to satisfy the norm axioms; use
/// `audit_norm_axioms` to spot-check one.
class Norm {
public:
    enum class Kind { lp, weighted_lp, custom };

    using Evaluator = std::function<double(std::span<const double>)>;

    static constexpr double infinity = std::numeric_limits<double>::infinity();

    static Norm lp(double p) {
        check_exponent(p);
        Norm n;
        n.kind_ = Kind::lp;
        n.p_ = p;
        return n;
    }

    static Norm l1() { return lp(1.0); }
    static Norm l2() { return lp(2.0); }
    static Norm linf() { return lp(infinity); }

    static Norm weighted_lp(double p, std::vector<double> weights) {
        check_exponent(p);
        if (weights.empty()) {
            throw Error(Errc::invalid_argument, "weighted norm needs at least one weight");
        }
        for (double w : weights) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw Error(Errc::invalid_argument, "norm weights must be positive and finite");
            }
        }
        Norm n;
        n.kind_ = Kind::weighted_lp;
        n.p_ = p;
        n.weights_ = std::make_shared<const std::vector<double>>(std::move(weights));
        return n;
    }

    static Norm custom(Evaluator evaluator, std::string name = "custom") {
        if (!evaluator) {
            throw Error(Errc::invalid_argument, "custom norm needs an evaluator");
        }
        Norm n;
        n.kind_ = Kind::custom;
        n.custom_ = std::make_shared<const Evaluator>(std::move(evaluator));
        n.custom_name_ = std::move(name);
        return n;
    }

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }

    std::span<const double> weights() const noexcept {
        if (!weights_) return {};
        return *weights_;
    }

    double operator()(const Vector& x) const { return eval(x.coords()); }

    double eval(std::span<const double> x) const {
        switch (kind_) {
            case Kind::lp:
                return eval_lp(x, {});
            case Kind::weighted_lp:
                if (weights_->size() != x.size()) {
                    throw Error(Errc::dimension_mismatch,
                                "norm has " + std::to_string(weights_->size()) +
                                    " weights but vector has dimension " +
                                    std::to_string(x.size()));
                }
                return eval_lp(x, *weights_);
            case Kind::custom:
                return (*custom_)(x);
        }
        return 0.0;
    }

    /// Canonical spec string, e.g. "l2", "linf", "l1:w=2,1".
    std::string name() const {
        if (kind_ == Kind::custom) return custom_name_;
        std::string out = "l" + format_exponent(p_);
        if (kind_ == Kind::weighted_lp) {
            out += ":w=";
            for (std::size_t i = 0; i < weights_->size(); ++i) {
                if (i) out += ',';
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", (*weights_)[i]);
                out += buf;
            }
        }
        return out;
    }

private:
    Norm() = default;

    static void check_exponent(double p) {
        if (std::isnan(p) || p < 1.0) {
            throw Error(Errc::invalid_argument, "norm exponent must lie in [1, inf]");
        }
    }

    static std::string format_exponent(double p) {
        if (std::isinf(p)) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", p);
        return buf;
    }

    // Weighted form is (sum w_i |x_i|^p)^(1/p), or max w_i |x_i| for p = inf.
    // For general p the terms are rescaled by their maximum so that
    // neither overflow nor underflow can turn a nonzero vector into 0.
    double eval_lp(std::span<const double> x, std::span<const double> w) const {
        auto weight = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
        if (std::isinf(p_)) {
            double m = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, weight(i) * std::abs(x[i]));
            return m;
        }
        if (p_ == 1.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += weight(i) * std::abs(x[i]);
            return s;
        }
        const bool squared = (p_ == 2.0);
        std::vector<double> scaled(x.size());
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double wi = w.empty() ? 1.0 : (squared ? std::sqrt(w[i]) : std::pow(w[i], 1.0 / p_));
            scaled[i] = wi * std::abs(x[i]);
            m = std::max(m, scaled[i]);
        }
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double c : scaled) {
            const double q = c / m;
            s += squared ? q * q : std::pow(q, p_);
        }
        return m * (squared ? std::sqrt(s) : std::pow(s, 1.0 / p_));
    }

    Kind kind_ = Kind::lp;
    double p_ = 2.0;
    std::shared_ptr<const std::vector<double>> weights_;
    std::shared_ptr<const Evaluator> custom_;
    std::string custom_name_;
};

inline double norm_eval(const Norm& norm, const Vector& x) { return norm(x); }

} // namespace normshell
