#include "aalpha/jsonfmt.hpp"

#include <cmath>
#include <cstdio>

namespace aalpha {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string json_interval(const Interval& v) {
  return "[" + json_str(fmt_double(v.lo)) + "," + json_str(fmt_double(v.hi)) + "]";
}

std::string json_double_array(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += json_str(fmt_double(v[i]));
  }
  out.push_back(']');
  return out;
}

std::string json_u8_array(const std::vector<unsigned char>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += v[i] ? "1" : "0";
  }
  out.push_back(']');
  return out;
}

}  // namespace aalpha
