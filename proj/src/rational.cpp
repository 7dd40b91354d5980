#include "contree/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace contree {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
    return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    auto num = parse_integer(text.substr(0, slash));
    auto den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace contree
