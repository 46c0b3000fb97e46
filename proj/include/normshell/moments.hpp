#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normshell/error.hpp"

namespace normshell {

namespace detail {

__extension__ typedef unsigned __int128 wide;

inline wide ipow(wide base, unsigned e) {
    wide r = 1;
    while (e--) r *= base; // 0^0 = 1
    return r;
}

inline wide choose(unsigned n, unsigned k) {
    k = std::min(k, n - k);
    wide c = 1;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline wide gcd(wide a, wide b) {
    while (b != 0) {
        const wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline double ratio(wide num, wide den) {
    const wide g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
inline double stirling_error(double n) {
    static constexpr std::array<double, 16> table = {
        0.0,
        0.08106146679532725821967026,
        0.04134069595540929409382208,
        0.02767792568499833914878929,
        0.02079067210376509311152277,
        0.01664469118982119216319487,
        0.01387612882307074799874573,
        0.01189670994589177009505572,
        0.01041126526197209649747857,
        0.009255462182712732917728637,
        0.008330563433362871256469319,
        0.007573675487951840794972024,
        0.006942840107209529865664153,
        0.006408994188004207068439631,
        0.005951370112758847735624416,
        0.00555473355196280137103869,
    };
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) return table[static_cast<std::size_t>(n)];
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x, accurate when x is close to np.
inline double deviance_term(double x, double np) {
    if (std::abs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

// Saddle-point evaluation of the binomial pmf in log space.
inline double binom_pmf_log_space(unsigned n, double p, unsigned k) {
    const double q = 1.0 - p;
    const double nd = n;
    const double kd = k;
    if (k == 0) {
        const double lc = p < 0.1 ? -deviance_term(nd, nd * q) - nd * p : nd * std::log(q);
        return std::exp(lc);
    }
    if (k == n) {
        const double lc = q < 0.1 ? -deviance_term(nd, nd * p) - nd * q : nd * std::log(p);
        return std::exp(lc);
    }
    const double lc = stirling_error(nd) - stirling_error(kd) - stirling_error(nd - kd) -
                      deviance_term(kd, nd * p) - deviance_term(nd - kd, nd * q);
    const double lf = std::log(2.0 * std::numbers::pi) + std::log(kd) + std::log1p(-kd / nd);
    return std::exp(lc - 0.5 * lf);
}

} // namespace detail

/// Largest n evaluated with exact integer arithmetic.
inline constexpr unsigned exact_binomial_limit = 20;

/// b(n, p; k) = C(n, k) p^k (1 - p)^(n - k), with 0^0 = 1. Exact
/// coefficient and direct products up to n = 20, saddle-point log-space
/// evaluation beyond.
inline double binom_pmf(unsigned n, double p, unsigned k) {
    if (k > n) throw Error(Errc::invalid_argument, "binomial outcome k must lie in [0, n]");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, "probability must lie in [0, 1]");
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    if (n <= exact_binomial_limit) {
        double value = static_cast<double>(detail::choose(n, k));
        const double q = 1.0 - p;
        for (unsigned i = 0; i < k; ++i) value *= p;
        for (unsigned i = 0; i < n - k; ++i) value *= q;
        return value;
    }
    return detail::binom_pmf_log_space(n, p, k);
}

/// c_n = n b(n, floor(n/2)/n; floor(n/2)), the sharp factor in
/// E|S_n| >= c_n E|X_1| for i.i.d. centred summands. Grows like sqrt(2n/pi).
inline double hornich_constant(unsigned n) {
    if (n == 0) throw Error(Errc::invalid_argument, "hornich constant needs n >= 1");
    const unsigned k = n / 2;
    if (n <= exact_binomial_limit) {
        // n C(n,k) k^k (n-k)^(n-k) / n^n
        const detail::wide num = detail::wide(n) * detail::choose(n, k) * detail::ipow(k, k) *
                                 detail::ipow(n - k, n - k);
        return detail::ratio(num, detail::ipow(n, n));
    }
    return n * binom_pmf(n, static_cast<double>(k) / n, k);
}

enum class Assumption { N, IIDC, IC, MG };

inline std::string_view to_string(Assumption a) {
    switch (a) {
        case Assumption::N: return "N";
        case Assumption::IIDC: return "IIDC";
        case Assumption::IC: return "IC";
        case Assumption::MG: return "MG";
    }
    return "?";
}

inline Assumption parse_assumption(std::string_view s) {
    if (s == "N") return Assumption::N;
    if (s == "IIDC") return Assumption::IIDC;
    if (s == "IC") return Assumption::IC;
    if (s == "MG") return Assumption::MG;
    throw Error(Errc::parse_error, "unknown assumption '" + std::string(s) + "' (expected N, IIDC, IC or MG)");
}

/// Individual moments E|X_1|^r, ..., E|X_n|^r of one common order.
class MomentProfile {
public:
    explicit MomentProfile(std::vector<double> e) : e_(std::move(e)) {
        if (e_.empty()) throw Error(Errc::invalid_argument, "moment profile must not be empty");
        for (double v : e_) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw Error(Errc::invalid_argument, "moments must be finite and nonnegative");
            }
        }
    }

    std::size_t size() const noexcept { return e_.size(); }
    double operator[](std::size_t i) const { return e_[i]; }
    std::span<const double> values() const noexcept { return e_; }

    double sum() const noexcept {
        double s = 0.0;
        for (double v : e_) s += v;
        return s;
    }

    double max() const noexcept { return *std::max_element(e_.begin(), e_.end()); }

private:
    std::vector<double> e_;
};

/// max of {e_k - sum_{i<k} e_i : k = 1..n} and {e_k / 2 : k = 3..n}:
/// the sharp lower bound on E|S_n| for martingales.
inline double mg_lower_bound(const MomentProfile& e) {
    double best = -std::numeric_limits<double>::infinity();
    double prefix = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        best = std::max(best, e[k] - prefix);
        if (k >= 2) best = std::max(best, e[k] / 2.0);
        prefix += e[k];
    }
    return best;
}

struct BoundReport {
    double lower = 0.0;
    double upper = 0.0;
    Assumption assumption = Assumption::N;
    int order = 1;
    bool optimal = true; // false where no sharp lower bound is known (IC, order 1)
};

/// Lower and upper bounds on E|S_n|^order given the individual moments of
/// that order. Order 2 is the identity E|S_n|^2 = sum E|X_i|^2. Order 1
/// always has upper bound sum E|X_i|; the lower bound is the shell inner
/// radius (N), c_n E|X_1| (IIDC), the martingale bound (MG) or the trivial
/// 0 (IC). For IIDC a single moment may be expanded to `n_for_iidc` copies.
inline BoundReport bounds_report(const MomentProfile& profile, Assumption assumption, int order,
                                 std::optional<std::size_t> n_for_iidc = std::nullopt) {
    if (order != 1 && order != 2) throw Error(Errc::invalid_argument, "order must be 1 or 2");

    std::vector<double> values(profile.values().begin(), profile.values().end());
    if (n_for_iidc) {
        if (*n_for_iidc == 0) throw Error(Errc::invalid_argument, "n must be positive");
        if (values.size() == 1) {
            values.assign(*n_for_iidc, values.front());
        } else if (values.size() != *n_for_iidc) {
            throw Error(Errc::invalid_argument, "n does not match the number of moments");
        }
    }
    const MomentProfile e(std::move(values));

    if (assumption == Assumption::IIDC) {
        const double ref = e[0];
        for (double v : e.values()) {
            if (std::abs(v - ref) > 1e-12 * std::max(1.0, ref)) {
                throw Error(Errc::invalid_argument, "IIDC requires all moments to be equal");
            }
        }
    }

    BoundReport r;
    r.assumption = assumption;
    r.order = order;
    r.upper = e.sum();
    if (order == 2) {
        r.lower = r.upper;
        return r;
    }
    switch (assumption) {
        case Assumption::N:
            r.lower = e.size() == 1 ? e[0] : std::max(0.0, 2.0 * e.max() - e.sum());
            break;
        case Assumption::IIDC:
            r.lower = hornich_constant(static_cast<unsigned>(e.size())) * e[0];
            break;
        case Assumption::IC:
            r.lower = 0.0;
            r.optimal = false;
            break;
        case Assumption::MG:
            r.lower = mg_lower_bound(e);
            break;
    }
    r.lower = std::min(r.lower, r.upper);
    return r;
}

/// Monte Carlo comparison of sampled |S_n| against the order-1 bounds
/// computed from the sampled |X_i| means.
struct EmpiricalReport {
    std::size_t paths = 0;
    std::size_t steps = 0;
    std::vector<double> mean_abs_increments;
    double mean_abs_sum = 0.0;
    double sd_abs_sum = 0.0;
    double delta = 0.0; // 3 sd / sqrt(paths)
    BoundReport bounds;
    bool below_lower = false;
    bool above_upper = false;

    bool within() const noexcept { return !below_lower && !above_upper; }
};

/// `paths` holds one sample path per row, one increment per column. Under
/// IIDC the per-column means are pooled into one common moment.
inline EmpiricalReport empirical_check(std::span<const std::vector<double>> paths, Assumption assumption) {
    if (paths.empty()) throw Error(Errc::invalid_argument, "need at least one sample path");
    const std::size_t n = paths.front().size();
    if (n == 0) throw Error(Errc::invalid_argument, "sample paths need at least one increment");
    for (std::size_t row = 0; row < paths.size(); ++row) {
        if (paths[row].size() != n) {
            throw Error(Errc::invalid_argument, "ragged path matrix: row " + std::to_string(row + 1) + " has " +
                                                    std::to_string(paths[row].size()) + " entries, expected " +
                                                    std::to_string(n));
        }
        for (double v : paths[row]) {
            if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "path entries must be finite");
        }
    }

    const double m = static_cast<double>(paths.size());
    EmpiricalReport rep;
    rep.paths = paths.size();
    rep.steps = n;
    rep.mean_abs_increments.assign(n, 0.0);
    std::vector<double> abs_sums;
    abs_sums.reserve(paths.size());
    for (const auto& row : paths) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rep.mean_abs_increments[i] += std::abs(row[i]);
            s += row[i];
        }
        abs_sums.push_back(std::abs(s));
    }
    for (double& v : rep.mean_abs_increments) v /= m;
    rep.mean_abs_sum = std::accumulate(abs_sums.begin(), abs_sums.end(), 0.0) / m;
    if (paths.size() > 1) {
        double ss = 0.0;
        for (double v : abs_sums) ss += (v - rep.mean_abs_sum) * (v - rep.mean_abs_sum);
        rep.sd_abs_sum = std::sqrt(ss / (m - 1.0));
    }
    rep.delta = 3.0 * rep.sd_abs_sum / std::sqrt(m);

    std::vector<double> profile = rep.mean_abs_increments;
    if (assumption == Assumption::IIDC) {
        const double pooled = std::accumulate(profile.begin(), profile.end(), 0.0) / static_cast<double>(n);
        profile.assign(n, pooled);
    }
    rep.bounds = bounds_report(MomentProfile(std::move(profile)), assumption, 1);
    rep.below_lower = rep.mean_abs_sum < rep.bounds.lower - rep.delta;
    rep.above_upper = rep.mean_abs_sum > rep.bounds.upper + rep.delta;
    return rep;
}

} // namespace normshell
