#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace drinfeld {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// Smallest integer >= r.
std::int64_t ceil(const Rational& r);
/// Largest integer <= r.
std::int64_t floor(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

/// A value in T ∪ {+∞}; the valuation of zero is +∞.
template <class T>
class Extended {
public:
    Extended() : infinite_(true), value_{} {}
    Extended(T value) : infinite_(false), value_(value) {}  // NOLINT(google-explicit-constructor)

    static Extended infinity() { return Extended(); }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Requires is_finite().
    const T& value() const { return value_; }

    friend bool operator==(const Extended& a, const Extended& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator!=(const Extended& a, const Extended& b) { return !(a == b); }
    friend bool operator<(const Extended& a, const Extended& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
    friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
    friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

    friend Extended operator+(const Extended& a, const Extended& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Extended(a.value_ + b.value_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Extended& x) {
        if (x.infinite_) return os << "+inf";
        return os << x.value_;
    }

private:
    bool infinite_;
    T value_;
};

using IntValuation = Extended<std::int64_t>;
using RatValuation = Extended<Rational>;

inline RatValuation to_rational(const IntValuation& v) {
    return v.is_infinite() ? RatValuation::infinity() : RatValuation(Rational(v.value()));
}

std::string to_string(const RatValuation& v);

}  // namespace drinfeld
