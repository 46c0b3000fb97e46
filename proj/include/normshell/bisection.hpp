#pragma once

#include <cmath>
#include <type_traits>

namespace normshell {

struct BisectionResult {
    double t = 0.0;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NoBracketObserver {
    void operator()(double, double, double, double) const noexcept {}
};

/// Root of a continuous g on [lo, hi] given g(lo) <= 0 <= g(hi), to the
/// point where |g(t)| <= tol. Monotonicity is not needed; only the sign
/// bracket is maintained. The observer sees (lo, hi, g(lo), g(hi)) before
/// every halving.
template <class F, class Observer = NoBracketObserver>
BisectionResult bisect(F&& g, double lo, double hi, double g_lo, double g_hi, double tol, int max_iter,
                       Observer&& observe = {}) {
    if (std::abs(g_lo) <= tol) return {lo, g_lo, 0, true};
    if (std::abs(g_hi) <= tol) return {hi, g_hi, 0, true};
    BisectionResult best{std::abs(g_lo) <= std::abs(g_hi) ? lo : hi,
                         std::abs(g_lo) <= std::abs(g_hi) ? g_lo : g_hi, 0, false};
    int it = 0;
    while (it < max_iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(lo < mid && mid < hi)) break;
        observe(lo, hi, g_lo, g_hi);
        ++it;
        const double g_mid = g(mid);
        if (std::abs(g_mid) <= tol) return {mid, g_mid, it, true};
        if (std::abs(g_mid) < std::abs(best.value)) best = {mid, g_mid, 0, false};
        if (g_mid < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    best.iterations = it;
    return best;
}

} // namespace normshell
