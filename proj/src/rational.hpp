#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace mlpce {

// Exact arithmetic for capacities; weights stay floating point.
using Mbps = boost::rational<std::int64_t>;

inline double to_double(const Mbps& m) {
  return static_cast<double>(m.numerator()) /
         static_cast<double>(m.denominator());
}

inline std::string to_string(const Mbps& m) {
  if (m.denominator() == 1) return std::to_string(m.numerator());
  return std::to_string(m.numerator()) + "/" + std::to_string(m.denominator());
}

inline Mbps parse_mbps(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Mbps(std::stoll(s));
    return Mbps(std::stoll(s.substr(0, slash)),
                std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ValidationError("bad rational literal: " + s);
  }
}

}  // namespace mlpce
