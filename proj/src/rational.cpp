#include "cgras/rational.hpp"

#include <stdexcept>

namespace cgras {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::string den = "1" + std::string(text.size() - dot - 1, '0');
    Rational q;
    if (q.set_str(digits + "/" + den, 10) != 0) throw std::invalid_argument("bad decimal literal: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string numerator_string(const Rational& q) { return q.get_num().get_str(10); }

std::string denominator_string(const Rational& q) { return q.get_den().get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cgras
