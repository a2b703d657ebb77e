#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kerrcat/leggett_garg.hpp"

namespace kerrcat {

/// "k4-lg": k = 4, times 0, 1/4, 3/4, every slot scored (+1, -1).
/// "k2-lg": k = 2, times 0, 1/3, 2/3, slots (+1, -1), (+1, 0), (0, -1).
/// Both split the t2 state at partition angle 0 and measure theta = 0.
LgProtocol preset_protocol(std::string_view name, double alpha0);

std::vector<std::string> preset_names();

}  // namespace kerrcat
