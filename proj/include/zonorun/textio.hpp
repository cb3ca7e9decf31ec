#pragma once

#include <string>
#include <vector>

#include "zonorun/intlinalg.hpp"
#include "zonorun/numeric.hpp"

namespace zonorun {

std::vector<Int> parse_int_list(const std::string& s, char sep = ',');
std::string format_rat_point(const RatVec& p);

}  // namespace zonorun
