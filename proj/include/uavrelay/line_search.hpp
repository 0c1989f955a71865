#pragma once

// Derivative-free scalar maximization helpers shared by the solvers and the
// exhaustive-search oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace uavrelay {

struct ScalarMax {
    double arg = 0.0;
    double value = 0.0;
};

/// Golden-section maximization of a unimodal f on [lo, hi]. Stops when the
/// bracket is narrower than tol. The better of the golden point and the two
/// endpoints is returned, so monotone profiles resolve to the boundary.
template <class F>
ScalarMax golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    ScalarMax best = fc >= fd ? ScalarMax{c, fc} : ScalarMax{d, fd};
    // Endpoints last so that ties keep the interior point.
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo > best.value) best = {lo, f_lo};
    if (f_hi > best.value) best = {hi, f_hi};
    return best;
}

/// Golden-section minimization; thin wrapper over golden_section_max.
template <class F>
ScalarMax golden_section_min(F&& f, double lo, double hi, double tol) {
    auto r = golden_section_max([&](double t) { return -f(t); }, lo, hi, tol);
    return {r.arg, -r.value};
}

/// Bisection on the sign of a central finite-difference derivative. Assumes
/// f is unimodal on [lo, hi]; endpoints are compared at the end.
template <class F>
ScalarMax bisection_derivative_max(F&& f, double lo, double hi, double tol) {
    const double step = std::max(tol * 1e-2, (hi - lo) * 1e-9);
    double a = lo;
    double b = hi;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double slope = f(std::min(mid + step, hi)) - f(std::max(mid - step, lo));
        if (slope > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    ScalarMax best{0.5 * (a + b), f(0.5 * (a + b))};
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo > best.value) best = {lo, f_lo};
    if (f_hi > best.value) best = {hi, f_hi};
    return best;
}

/// Number of strict interior local maxima in a sampled profile. Plateaus
/// count once.
inline std::size_t count_local_maxima(const std::vector<double>& v) {
    std::size_t count = 0;
    std::size_t i = 1;
    while (i + 1 < v.size()) {
        if (v[i] > v[i - 1]) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
            if (j + 1 < v.size() && v[j + 1] < v[i]) ++count;
            i = j + 1;
        } else {
            ++i;
        }
    }
    return count;
}

/// Local maxima including the endpoints (an endpoint counts when it beats its
/// single neighbour). A unimodal profile has exactly one.
inline std::size_t count_peaks(const std::vector<double>& v) {
    if (v.size() < 2) return v.size();
    std::size_t count = count_local_maxima(v);
    if (v[0] > v[1]) ++count;
    if (v[v.size() - 1] > v[v.size() - 2]) ++count;
    return count;
}

}  // namespace uavrelay
