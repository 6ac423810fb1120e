#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace drfmds {

using Rational = boost::rational<std::int64_t>;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
    return double(r.numerator()) / double(r.denominator());
}

}  // namespace drfmds
