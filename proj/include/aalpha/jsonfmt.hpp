#pragma once

#include "aalpha/interval.hpp"

#include <string>
#include <vector>

namespace aalpha {

// Numeric fields are serialized as decimal strings with fixed printf
// formatting so repeated runs emit byte-identical JSON.
std::string fmt_double(double v);
std::string json_str(const std::string& s);
std::string json_interval(const Interval& v);
std::string json_double_array(const std::vector<double>& v);
std::string json_u8_array(const std::vector<unsigned char>& v);

}  // namespace aalpha
