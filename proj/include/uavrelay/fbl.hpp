#pragma once

// Finite-blocklength reliability metrics for a two-hop amplify-and-forward
// link: Gaussian Q-function, channel dispersion, the normal-approximation
// rate gap f(gamma, m, L) and the resulting decoding error probability.
//
// All gains and SNRs here are linear and already normalized to unit noise
// power.

#include <optional>

namespace uavrelay {

/// Packet size and blocklength budget. The total budget M is split evenly
/// between the two hops, so M must be even.
class BlocklengthParams {
public:
    BlocklengthParams(int packet_bits, int total_blocklength);

    /// M = round(bandwidth * latency); the inputs are kept as metadata.
    static BlocklengthParams from_bandwidth_latency(int packet_bits, double bandwidth_hz,
                                                    double latency_s);

    int packet_bits() const noexcept { return packet_bits_; }
    int total_blocklength() const noexcept { return total_blocklength_; }
    int per_hop_blocklength() const noexcept { return total_blocklength_ / 2; }

    std::optional<double> bandwidth_hz() const noexcept { return bandwidth_hz_; }
    std::optional<double> latency_s() const noexcept { return latency_s_; }

    /// Rate L/m in bits per channel use.
    double rate() const noexcept {
        return static_cast<double>(packet_bits_) / per_hop_blocklength();
    }

private:
    int packet_bits_;
    int total_blocklength_;
    std::optional<double> bandwidth_hz_;
    std::optional<double> latency_s_;
};

/// Linear, noise-normalized SNR. Always finite and non-negative.
class Snr {
public:
    explicit Snr(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Upper-tail probability of the standard normal, 0.5 * erfc(x / sqrt 2).
double q_function(double x);

/// V(gamma) = 1 - (1 + gamma)^-2, evaluated without cancellation for small gamma.
double channel_dispersion(Snr gamma);

/// f(gamma, m, L) = ln2 * sqrt(m / V) * (log2(1 + gamma) - L/m). Throws
/// DomainError at gamma = 0 where V vanishes.
double rate_gap_f(Snr gamma, const BlocklengthParams& blk);

/// df/dgamma in closed form. Throws DomainError for gamma <= 0.
double rate_gap_derivative(Snr gamma, const BlocklengthParams& blk);

/// Lower bound sqrt(m) / (2 sqrt((1+gamma)^2 - 1)) on the rate-gap derivative.
double rate_gap_derivative_lower_bound(Snr gamma, const BlocklengthParams& blk);

/// epsilon = Q(f). Defined as 1 at gamma = 0; f is clamped to
/// [-kRateGapClamp, kRateGapClamp] before the Q-function.
double decoding_error_probability(Snr gamma, const BlocklengthParams& blk);

inline constexpr double kRateGapClamp = 40.0;

/// Transmit powers of the source (p1) and relay (p2) in watts.
struct PowerSplit {
    double p1 = 0.0;
    double p2 = 0.0;

    double total() const noexcept { return p1 + p2; }
};

/// End-to-end AF SNR h1 h2 p1 p2 / (h2 p2 + h1 p1 + 1).
Snr af_snr(double h1, double h2, const PowerSplit& powers);

/// Relay amplification coefficient G = sqrt(p2 / (p1 h1 + 1)). Diagnostic only.
double af_amplification_gain(double h1, const PowerSplit& powers);

}  // namespace uavrelay
