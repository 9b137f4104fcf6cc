#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wtf/cookie_dynamics.hpp"

namespace wtf {

// Branch families usable from configs.
// tau(x) = l x mod 1 on l equal branches.
std::vector<BranchSpec> l_adic_branches(int l);
// tau(x) = 2x + epsilon sin(2 pi x) mod 1 on [0, 1/2] and [1/2, 1].
std::vector<BranchSpec> doubling_sine_branches(double epsilon);

// Reference systems:
//   M1  doubling map, lambda = 0.7
//   M2  slopes 1/0.35 on [0, 0.35] and [0.65, 1], lambda = 0.45
//   M3  slopes 1/0.3 on [0, 0.3] and 1/0.45 on [0.55, 1], lambda = (0.4, 0.7)
//   M4  M2 geometry, lambda = sqrt(0.35)
//   M5  doubling map plus 0.05 sin(2 pi x), lambda = 0.7
// "M2-lambda0.3" is the non-hyperbolic variant of M2. g = cos(2 pi x) for all.
SystemSpec reference_spec(std::string_view id);
CookieCutterSystem reference_model(std::string_view id);
const std::vector<std::string>& reference_ids();

}  // namespace wtf
