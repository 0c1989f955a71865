#include "uavrelay/high_snr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavrelay/freespace.hpp"
#include "uavrelay/line_search.hpp"

namespace uavrelay {

namespace {

constexpr double kEqualityTol = 1e-12;

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= kEqualityTol * std::max(std::abs(a), std::abs(b));
}

void finish(const FreeSpaceScenario& scn, HighSnrCaseReport& r) {
    r.powers.p2 = scn.power_budget - r.powers.p1;
    r.gamma_tilde = gamma_tilde(scn, r.x, r.powers);
    r.gamma_exact = freespace_gamma(scn, r.x, r.powers);
}

struct BoundaryTerms {
    double D1;     // H^2 + x^2
    double D2;     // H^2 + (D - x)^2
    double slope;  // beta1 D2 - beta2 D1
    double offset; // beta2 D1 P
};

BoundaryTerms boundary_terms(const FreeSpaceScenario& scn, double x) {
    const double H2 = scn.H * scn.H;
    const double rest = scn.D - x;
    const double D1 = H2 + x * x;
    const double D2 = H2 + rest * rest;
    return {D1, D2, scn.beta1 * D2 - scn.beta2 * D1, scn.beta2 * D1 * scn.power_budget};
}

// Maximizer of the boundary ratio on [lo, hi]. The ratio is concave in p1, so
// clamping its stationary point is exact.
double boundary_argmax(const FreeSpaceScenario& scn, double x, double lo, double hi,
                       HighSnrCase& case_tag) {
    const auto t = boundary_terms(scn, x);
    const double P = scn.power_budget;
    if (nearly_equal(scn.beta1 * t.D2, scn.beta2 * t.D1)) {
        case_tag = HighSnrCase::Equal;
        return std::clamp(0.5 * P, lo, hi);
    }
    case_tag = HighSnrCase::Unequal;
    if (t.offset * (t.offset + t.slope * P) < 0.0) {
        // Denominator changes sign on [0, P]; not reachable for valid
        // scenarios, fall back to the better endpoint.
        return boundary_gamma_tilde(scn, x, lo) >= boundary_gamma_tilde(scn, x, hi) ? lo : hi;
    }
    return std::clamp(ratio_peak(t.slope, t.offset, P), lo, hi);
}

}  // namespace

const char* to_string(HighSnrCondition c) {
    switch (c) {
        case HighSnrCondition::Interior: return "I";
        case HighSnrCondition::LowerBoundary: return "II";
        case HighSnrCondition::UpperBoundary: return "III";
    }
    return "?";
}

const char* to_string(HighSnrCase c) { return c == HighSnrCase::Equal ? "equal" : "unequal"; }

double gamma_tilde(const FreeSpaceScenario& scn, double x, const PowerSplit& powers) {
    const double H2 = scn.H * scn.H;
    const double rest = scn.D - x;
    const double num = scn.beta1 * scn.beta2 * powers.p1 * powers.p2;
    if (num == 0.0) return 0.0;
    return num / (scn.beta2 * powers.p2 * (H2 + x * x) + scn.beta1 * powers.p1 * (H2 + rest * rest));
}

UnconstrainedLocation unconstrained_location(const PowerSplit& powers, const FreeSpaceScenario& scn) {
    const double w1 = scn.beta1 * powers.p1;
    const double w = w1 + scn.beta2 * powers.p2;
    const double x0 = w > 0.0 ? scn.D * w1 / w : 0.5 * scn.D;
    return {x0, std::clamp(x0, scn.x_min, scn.x_max)};
}

double power_threshold_for_location(const FreeSpaceScenario& scn, double position) {
    return position * scn.beta2 * scn.power_budget /
           ((scn.D - position) * scn.beta1 + position * scn.beta2);
}

double ratio_peak(double slope, double offset, double power_budget) {
    return power_budget * offset /
           (offset + std::sqrt(offset * (offset + slope * power_budget)));
}

double interior_objective(const FreeSpaceScenario& scn, const PowerSplit& powers) {
    const double H2 = scn.H * scn.H;
    const double S = scn.beta1 * powers.p1 + scn.beta2 * powers.p2;
    return H2 * scn.beta1 / powers.p2 + H2 * scn.beta2 / powers.p1 +
           scn.beta1 * scn.beta2 * scn.D * scn.D / S;
}

Hessian2 interior_hessian(const FreeSpaceScenario& scn, const PowerSplit& powers) {
    const double H2 = scn.H * scn.H;
    const double b1 = scn.beta1;
    const double b2 = scn.beta2;
    const double S = b1 * powers.p1 + b2 * powers.p2;
    const double k = 2.0 * scn.D * scn.D / (S * S * S);
    return {2.0 * H2 * b2 / (powers.p1 * powers.p1 * powers.p1) + k * b1 * b1 * b1 * b2,
            k * b1 * b1 * b2 * b2,
            2.0 * H2 * b1 / (powers.p2 * powers.p2 * powers.p2) + k * b1 * b2 * b2 * b2};
}

double boundary_gamma_tilde(const FreeSpaceScenario& scn, double x_fixed, double p1) {
    return gamma_tilde(scn, x_fixed, {p1, scn.power_budget - p1});
}

HighSnrCaseReport solve_condition1(const FreeSpaceScenario& scn) {
    HighSnrCaseReport r;
    r.condition = HighSnrCondition::Interior;
    const double P = scn.power_budget;
    const double lo = power_threshold_for_location(scn, scn.x_min);
    const double hi = power_threshold_for_location(scn, scn.x_max);
    if (!(lo <= hi)) {
        r.feasible = false;
        return r;
    }
    r.feasible = true;
    if (nearly_equal(scn.beta1, scn.beta2)) {
        r.case_tag = HighSnrCase::Equal;
        if (2.0 * scn.x_max <= scn.D) {
            r.powers.p1 = scn.x_max * P / scn.D;
        } else if (2.0 * scn.x_min >= scn.D) {
            r.powers.p1 = scn.x_min * P / scn.D;
        } else {
            r.powers.p1 = 0.5 * P;
        }
    } else {
        r.case_tag = HighSnrCase::Unequal;
        const auto best = golden_section_min(
            [&](double p1) { return interior_objective(scn, {p1, P - p1}); }, lo, hi, 1e-10 * P);
        r.powers.p1 = best.arg;
    }
    r.powers.p2 = P - r.powers.p1;
    r.x = unconstrained_location(r.powers, scn).clamped;
    finish(scn, r);
    return r;
}

HighSnrCaseReport solve_condition2(const FreeSpaceScenario& scn) {
    HighSnrCaseReport r;
    r.condition = HighSnrCondition::LowerBoundary;
    r.feasible = true;
    r.x = scn.x_min;
    const double up = power_threshold_for_location(scn, scn.x_min);
    r.powers.p1 = boundary_argmax(scn, r.x, 0.0, up, r.case_tag);
    finish(scn, r);
    return r;
}

HighSnrCaseReport solve_condition3(const FreeSpaceScenario& scn) {
    HighSnrCaseReport r;
    r.condition = HighSnrCondition::UpperBoundary;
    r.feasible = true;
    r.x = scn.x_max;
    const double low = power_threshold_for_location(scn, scn.x_max);
    r.powers.p1 = boundary_argmax(scn, r.x, low, scn.power_budget, r.case_tag);
    finish(scn, r);
    return r;
}

std::array<HighSnrCaseReport, 3> high_snr_reports(const FreeSpaceScenario& scn) {
    scn.validate();
    return {solve_condition1(scn), solve_condition2(scn), solve_condition3(scn)};
}

SolveResult high_snr_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk) {
    const auto reports = high_snr_reports(scn);
    const HighSnrCaseReport* best = nullptr;
    for (const auto& r : reports) {
        if (r.feasible && (best == nullptr || r.gamma_tilde > best->gamma_tilde)) best = &r;
    }
    if (best == nullptr) {
        throw std::logic_error("no feasible high-SNR condition; the conditions cover every split");
    }

    SolveResult result;
    result.solver_id = "high-snr";
    result.placement = {best->x, scn.H};
    result.powers = best->powers;
    result.snr = best->gamma_exact;
    result.error_prob = decoding_error_probability(Snr(best->gamma_exact), blk);
    result.iterations = 1;
    result.trace = {best->gamma_exact};
    return result;
}

}  // namespace uavrelay
