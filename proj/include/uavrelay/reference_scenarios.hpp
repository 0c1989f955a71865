#pragma once

// Benchmark setups used by the tests, the acceptance suite and the example
// configs: a 200 m controller-robot span with the UAV at 120 m.

#include <string_view>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/solver3d.hpp"

namespace uavrelay::reference {

inline constexpr int kPacketBits = 100;
inline constexpr int kTotalBlocklength = 80;
inline constexpr double kCarrierHz = 2.5e9;
inline constexpr double kNoisePowerDb = -93.0;
inline constexpr double kFixedHeight = 100.0;

/// D=200, H=120, x in [30, 170], beta1=50 dB, beta2=59 dB, P_T=4 W.
inline FreeSpaceScenario freespace() {
    FreeSpaceScenario s;
    s.D = 200.0;
    s.H = 120.0;
    s.x_min = 30.0;
    s.x_max = 170.0;
    s.beta1 = db_to_linear(50.0);
    s.beta2 = db_to_linear(59.0);
    s.power_budget = 4.0;
    return s;
}

inline BlocklengthParams blocklength(int total = kTotalBlocklength) {
    return BlocklengthParams(kPacketBits, total);
}

/// D=200, x in [20, 200], H in [10, 200], f_c=2.5 GHz, noise -93 dB, P_T=4 W.
inline Atg3dScenario atg(std::string_view hop1_preset, std::string_view hop2_preset,
                         int total_blocklength = kTotalBlocklength) {
    Atg3dScenario s;
    s.D = 200.0;
    s.x_min = 20.0;
    s.x_max = 200.0;
    s.H_min = 10.0;
    s.H_max = 200.0;
    s.hop1 = make_environment(hop1_preset, kCarrierHz, kNoisePowerDb);
    s.hop2 = make_environment(hop2_preset, kCarrierHz, kNoisePowerDb);
    s.power_budget = 4.0;
    s.blk = blocklength(total_blocklength);
    return s;
}

}  // namespace uavrelay::reference
