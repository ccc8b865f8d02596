#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace planeorder {

using Rat = boost::multiprecision::cpp_rational;

// Prints "p/q", or just "p" for integers.
inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

// Parses "p", "p/q", with optional leading '-'. Returns nullopt on garbage.
inline std::optional<Rat> try_parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rat parse_rat(const std::string& s) {
    auto r = try_parse_rat(s);
    if (!r) throw std::invalid_argument("bad rational: '" + s + "'");
    return *r;
}

}  // namespace planeorder
