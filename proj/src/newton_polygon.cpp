#include "drinfeld/newton_polygon.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drinfeld {
namespace {

// Cross product sign of (b - a) x (c - a) on exact rationals.
Rational cross(const std::pair<std::int64_t, Rational>& a, const std::pair<std::int64_t, Rational>& b,
               const std::pair<std::int64_t, Rational>& c) {
    return Rational(b.first - a.first) * (c.second - a.second) - (b.second - a.second) * Rational(c.first - a.first);
}

std::int64_t power(std::int64_t q, std::size_t i) {
    std::int64_t r = 1;
    for (std::size_t k = 0; k < i; ++k) r *= q;
    return r;
}

}  // namespace

NewtonPolygon NewtonPolygon::from_points(std::vector<std::pair<std::int64_t, Rational>> points) {
    if (points.empty()) throw std::invalid_argument("Newton polygon of the zero polynomial");
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].first == points[i - 1].first) throw std::invalid_argument("Newton polygon: repeated abscissa");
    std::vector<std::pair<std::int64_t, Rational>> hull;
    for (const auto& pt : points) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }
    NewtonPolygon np;
    np.order_at_zero_ = points.front().first;
    np.degree_ = points.back().first;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        NewtonSegment s;
        s.start = hull[i - 1].first;
        s.end = hull[i].first;
        s.length = s.end - s.start;
        s.slope = (hull[i].second - hull[i - 1].second) / Rational(s.length);
        np.segments_.push_back(s);
    }
    return np;
}

std::vector<std::pair<Rational, std::int64_t>> NewtonPolygon::root_valuations() const {
    std::vector<std::pair<Rational, std::int64_t>> out;
    for (const auto& s : segments_) out.emplace_back(s.root_valuation(), s.length);
    return out;
}

std::vector<Rational> NewtonPolygon::root_valuation_multiset() const {
    std::vector<Rational> out;
    for (const auto& s : segments_) out.insert(out.end(), static_cast<std::size_t>(s.length), s.root_valuation());
    std::sort(out.begin(), out.end());
    return out;
}

Rational NewtonPolygon::max_root_valuation() const {
    if (segments_.empty()) throw std::logic_error("polynomial has no nonzero roots");
    return segments_.front().root_valuation();
}

std::string NewtonPolygon::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (i) os << ", ";
        os << "slope " << drinfeld::to_string(segments_[i].slope) << " x" << segments_[i].length;
    }
    os << "]";
    return os.str();
}

NewtonPolygon newton_polygon(const std::vector<LocalElement>& coeffs) {
    std::vector<std::pair<std::int64_t, Rational>> pts;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        pts.emplace_back(static_cast<std::int64_t>(i), coeffs[i].valuation().value());
    }
    return NewtonPolygon::from_points(std::move(pts));
}

NewtonPolygon newton_polygon(const std::vector<RationalFunction>& coeffs, const Place& v) {
    std::vector<std::pair<std::int64_t, Rational>> pts;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        pts.emplace_back(static_cast<std::int64_t>(i), Rational(valuation(coeffs[i], v).value()));
    }
    return NewtonPolygon::from_points(std::move(pts));
}

NewtonPolygon newton_polygon(const AdditivePolynomial<LocalElement>& f) {
    const std::int64_t q = f.coefficients().empty()
                               ? 0
                               : power(f.coefficients().front().field().residue_field().characteristic(), f.q_log());
    std::vector<std::pair<std::int64_t, Rational>> pts;
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
        if (!f.is_nonzero(i) || f.coefficient(i).is_zero()) continue;
        pts.emplace_back(power(q, i), f.coefficient(i).valuation().value());
    }
    return NewtonPolygon::from_points(std::move(pts));
}

NewtonPolygon newton_polygon(const AdditivePolynomial<RationalFunction>& f, const Place& v) {
    std::vector<std::pair<std::int64_t, Rational>> pts;
    if (f.coefficients().empty()) throw std::invalid_argument("Newton polygon of the zero polynomial");
    const std::int64_t q = power(f.coefficients().front().field().characteristic(), f.q_log());
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
        if (!f.is_nonzero(i) || f.coefficient(i).is_zero()) continue;
        pts.emplace_back(power(q, i), Rational(valuation(f.coefficient(i), v).value()));
    }
    return NewtonPolygon::from_points(std::move(pts));
}

}  // namespace drinfeld
