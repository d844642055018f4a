#pragma once

#include "drinfeld/local_field.hpp"
#include "drinfeld/ore.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

struct NewtonSegment {
    Rational slope;
    std::int64_t length = 0;
    std::int64_t start = 0;  // abscissa of the left vertex
    std::int64_t end = 0;
    /// Valuation of the roots this segment accounts for.
    Rational root_valuation() const { return -slope; }
};

/// Lower convex hull of the points (i, v(c_i)) of Σ c_i x^i.
class NewtonPolygon {
public:
    /// Points with infinite valuation (zero coefficients) must be omitted.
    static NewtonPolygon from_points(std::vector<std::pair<std::int64_t, Rational>> points);

    const std::vector<NewtonSegment>& segments() const { return segments_; }
    /// Multiplicity of 0 as a root (the least abscissa).
    std::int64_t order_at_zero() const { return order_at_zero_; }
    std::int64_t degree() const { return degree_; }
    /// (valuation, multiplicity) per segment, valuations strictly decreasing.
    std::vector<std::pair<Rational, std::int64_t>> root_valuations() const;
    /// Nonzero-root valuations with multiplicity, ascending.
    std::vector<Rational> root_valuation_multiset() const;
    /// Largest valuation of a nonzero root; requires at least one segment.
    Rational max_root_valuation() const;

    std::string to_string() const;

private:
    std::vector<NewtonSegment> segments_;
    std::int64_t order_at_zero_ = 0;
    std::int64_t degree_ = 0;
};

/// Σ c_i x^i with local coefficients. Throws PrecisionError if a coefficient
/// that is not known to vanish has undetermined valuation.
NewtonPolygon newton_polygon(const std::vector<LocalElement>& coeffs);
/// Σ c_i x^i with global coefficients, at the place v.
NewtonPolygon newton_polygon(const std::vector<RationalFunction>& coeffs, const Place& v);
/// Σ a_i x^(q^i) over a local field.
NewtonPolygon newton_polygon(const AdditivePolynomial<LocalElement>& f);
/// Σ a_i x^(q^i) with global coefficients, at v.
NewtonPolygon newton_polygon(const AdditivePolynomial<RationalFunction>& f, const Place& v);

}  // namespace drinfeld
