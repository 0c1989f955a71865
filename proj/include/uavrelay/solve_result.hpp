#pragma once

#include <string>
#include <vector>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"

namespace uavrelay {

struct SolveResult {
    Placement placement;
    PowerSplit powers;
    double snr = 0.0;
    double error_prob = 1.0;
    int iterations = 0;
    std::vector<double> trace;  // gamma after each iteration, trace[0] is the start point
    std::string solver_id;
};

}  // namespace uavrelay
