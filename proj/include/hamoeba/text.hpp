#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hamoeba/mat2.hpp"

namespace hamoeba {

/// Accepts "3", "-2.5", "2i", "-i", "1+2i", "1.5e3-0.5i" and "(re,im)".
cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

double parse_double(std::string_view text);
/// Comma-separated list of numbers.
std::vector<double> parse_double_list(std::string_view text);
/// "start:stop:step", inclusive of stop (within step/1e9).
std::vector<double> parse_range(std::string_view text);

}  // namespace hamoeba
