#include "drinfeld/rational.hpp"

namespace drinfeld {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

std::int64_t ceil(const Rational& r) { return -floor(-r); }

std::string to_string(const RatValuation& v) {
    return v.is_infinite() ? "+inf" : to_string(v.value());
}

}  // namespace drinfeld
