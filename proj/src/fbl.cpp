#include "uavrelay/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

// (1 + gamma)^2 - 1 without cancellation.
double excess_square(double gamma) { return gamma * (2.0 + gamma); }

}  // namespace

BlocklengthParams::BlocklengthParams(int packet_bits, int total_blocklength)
    : packet_bits_(packet_bits), total_blocklength_(total_blocklength) {
    if (packet_bits < 1) {
        throw DomainError("packet_bits must be >= 1, got " + std::to_string(packet_bits));
    }
    if (total_blocklength < 2 || total_blocklength % 2 != 0) {
        throw DomainError("total_blocklength must be a positive even integer, got " +
                          std::to_string(total_blocklength));
    }
}

BlocklengthParams BlocklengthParams::from_bandwidth_latency(int packet_bits, double bandwidth_hz,
                                                            double latency_s) {
    require_finite(bandwidth_hz, "bandwidth_hz");
    require_finite(latency_s, "latency_s");
    if (bandwidth_hz <= 0.0 || latency_s <= 0.0) {
        throw DomainError("bandwidth and latency must be positive");
    }
    const double uses = std::round(bandwidth_hz * latency_s);
    if (uses > 1e9) {
        throw DomainError("bandwidth * latency is too large");
    }
    BlocklengthParams blk(packet_bits, static_cast<int>(uses));
    blk.bandwidth_hz_ = bandwidth_hz;
    blk.latency_s_ = latency_s;
    return blk;
}

Snr::Snr(double value) : value_(value) {
    require_finite(value, "SNR");
    if (value < 0.0) {
        throw DomainError("SNR must be non-negative, got " + std::to_string(value));
    }
}

double q_function(double x) {
    require_finite(x, "Q-function argument");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double channel_dispersion(Snr gamma) {
    const double g = gamma.value();
    const double u = 1.0 + g;
    return excess_square(g) / (u * u);
}

double rate_gap_f(Snr gamma, const BlocklengthParams& blk) {
    const double g = gamma.value();
    if (g == 0.0) {
        throw DomainError("rate gap is undefined at zero SNR (dispersion vanishes)");
    }
    const double m = blk.per_hop_blocklength();
    // ln2 * sqrt(m/V) * (log2(1+g) - L/m) with sqrt(1/V) = (1+g)/sqrt((1+g)^2-1).
    const double nats_gap = std::log1p(g) - blk.rate() * std::numbers::ln2;
    return std::sqrt(m) * (1.0 + g) / std::sqrt(excess_square(g)) * nats_gap;
}

double rate_gap_derivative(Snr gamma, const BlocklengthParams& blk) {
    const double g = gamma.value();
    if (g <= 0.0) {
        throw DomainError("rate gap derivative requires SNR > 0");
    }
    const double m = blk.per_hop_blocklength();
    const double s = excess_square(g);
    const double nats_gap = std::log1p(g) - blk.rate() * std::numbers::ln2;
    return std::sqrt(m) / std::sqrt(s) * (1.0 - nats_gap / s);
}

double rate_gap_derivative_lower_bound(Snr gamma, const BlocklengthParams& blk) {
    const double g = gamma.value();
    if (g <= 0.0) {
        throw DomainError("derivative bound requires SNR > 0");
    }
    return std::sqrt(static_cast<double>(blk.per_hop_blocklength())) /
           (2.0 * std::sqrt(excess_square(g)));
}

double decoding_error_probability(Snr gamma, const BlocklengthParams& blk) {
    if (gamma.value() == 0.0) {
        return 1.0;
    }
    const double f = std::clamp(rate_gap_f(gamma, blk), -kRateGapClamp, kRateGapClamp);
    return q_function(f);
}

Snr af_snr(double h1, double h2, const PowerSplit& powers) {
    if (!(h1 >= 0.0 && h2 >= 0.0 && powers.p1 >= 0.0 && powers.p2 >= 0.0)) {
        throw DomainError("af_snr requires non-negative gains and powers");
    }
    const double hop1 = h1 * powers.p1;
    const double hop2 = h2 * powers.p2;
    return Snr(hop1 * hop2 / (hop1 + hop2 + 1.0));
}

double af_amplification_gain(double h1, const PowerSplit& powers) {
    const double received = powers.p1 * h1;
    if (!(received >= 0.0 && powers.p2 >= 0.0)) {
        throw DomainError("amplification gain requires p1*h1 >= 0 and p2 >= 0");
    }
    return std::sqrt(powers.p2 / (received + 1.0));
}

}  // namespace uavrelay
