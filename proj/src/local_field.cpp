#include "drinfeld/local_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace drinfeld {
namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= LocalElement::kExact || b >= LocalElement::kExact) return LocalElement::kExact;
    return std::min(a + b, LocalElement::kExact);
}

using Series = std::vector<Fq>;

Series series_mul(const Series& a, const Series& b, std::size_t n, const GaloisField& k) {
    Series c(n, k.zero());
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series series_inverse(const Series& a, std::size_t n, const GaloisField& k) {
    Series b(n, k.zero());
    const Fq inv0 = a.at(0).inverse();
    for (std::size_t m = 0; m < n; ++m) {
        Fq s = m == 0 ? k.one() : k.zero();
        for (std::size_t i = 1; i <= m && i < a.size(); ++i) s -= a[i] * b[m - i];
        b[m] = s * inv0;
    }
    return b;
}

// Value of f at the series x, modulo π^n.
Series series_eval(const Poly& f, const Series& x, std::size_t n, const GaloisField& k) {
    Series acc(n, k.zero());
    for (std::size_t i = f.coefficients().size(); i-- > 0;) {
        acc = series_mul(acc, x, n, k);
        acc[0] += embed(f.coefficients()[i], k);
    }
    return acc;
}

}  // namespace

LocalField::LocalField(const Place& v, const GaloisField& fq, const GaloisField& residue, unsigned e, Fq c,
                       std::int64_t precision, Fq theta)
    : place_(v), fq_(&fq), residue_(&residue), e_(e), c_(c), precision_(precision), theta_(theta) {}

std::shared_ptr<const LocalField> LocalField::create(const Place& v, const GaloisField& fq, unsigned residue_degree,
                                                     unsigned ramification, std::optional<Fq> unit,
                                                     std::int64_t precision) {
    const GaloisField& k = v.constant_field();
    const std::uint32_t p = k.characteristic();
    if (ramification == 0) throw std::invalid_argument("ramification index must be positive");
    if (ramification % p == 0)
        throw CapabilityError("wildly ramified extension requested (e = " + std::to_string(ramification) +
                              " divisible by p = " + std::to_string(p) + ")");
    if (precision < 1) throw std::invalid_argument("local precision must be positive");
    if (residue_degree == 0) throw std::invalid_argument("residue degree must be positive");
    if (fq.characteristic() != p || k.degree() % fq.degree() != 0)
        throw std::invalid_argument("F_q does not sit inside the constant field of the place");
    const unsigned needed = (k.degree() / fq.degree()) * v.residue_degree();
    if (residue_degree % needed != 0)
        throw CapabilityError("residue field F_q^" + std::to_string(residue_degree) + " cannot hold the residue field of " +
                              v.to_string() + "; need m' divisible by " + std::to_string(needed));
    const GaloisField& residue = GaloisField::get(p, fq.degree() * residue_degree);
    Fq c = unit ? drinfeld::embed(*unit, residue) : residue.one();
    if (c.is_zero()) throw std::invalid_argument("uniformizer unit c must be nonzero");
    Fq theta = residue.zero();
    if (!v.is_infinite()) {
        auto rs = roots(v.prime().embed(residue), residue);
        if (rs.empty()) throw InvariantViolation("prime has no root in a residue field of the right size");
        theta = rs.front();
    }
    return std::shared_ptr<const LocalField>(new LocalField(v, fq, residue, ramification, c, precision, theta));
}

LocalElement LocalField::zero() const { return LocalElement(shared_from_this(), 0, {}); }
LocalElement LocalField::one() const { return constant(residue_->one()); }
LocalElement LocalField::uniformizer() const { return LocalElement(shared_from_this(), 1, {residue_->one()}); }
LocalElement LocalField::constant(const Fq& c) const {
    return LocalElement(shared_from_this(), 0, {drinfeld::embed(c, *residue_)});
}

LocalElement LocalField::t_expansion(std::int64_t abs_precision) const {
    const GaloisField& k = *residue_;
    if (place_.prime().degree() == 1) {
        // T = θ + π exactly.
        std::vector<Fq> coeffs(static_cast<std::size_t>(e_) + 1, k.zero());
        coeffs[0] = theta_;
        coeffs[e_] = c_.inverse();
        return LocalElement(shared_from_this(), 0, std::move(coeffs));
    }
    const std::size_t n = static_cast<std::size_t>(std::max<std::int64_t>(1, (abs_precision + e_ - 1) / e_));
    // Solve π_v(X) = π in k'[[π]] by Newton iteration from X = θ.
    const Poly f = place_.prime().embed(k);
    const Poly df = f.derivative();
    Series x{theta_};
    std::size_t have = 1;
    while (have < n) {
        have = std::min(n, 2 * have);
        x.resize(have, k.zero());
        Series fx = series_eval(f, x, have, k);
        if (have > 1) fx[1] -= k.one();
        Series dfx = series_eval(df, x, have, k);
        Series step = series_mul(fx, series_inverse(dfx, have, k), have, k);
        for (std::size_t i = 0; i < have; ++i) x[i] -= step[i];
    }
    // π = u^e / c.
    std::vector<Fq> coeffs(static_cast<std::size_t>(e_) * n, k.zero());
    const Fq cinv = c_.inverse();
    Fq scale = k.one();
    for (std::size_t j = 0; j < n; ++j) {
        coeffs[j * e_] = x[j] * scale;
        scale *= cinv;
    }
    return LocalElement(shared_from_this(), 0, std::move(coeffs), static_cast<std::int64_t>(e_ * n));
}

LocalElement LocalField::embed(const RationalFunction& x, std::optional<std::int64_t> relative_precision) const {
    if (&x.field() != &place_.constant_field()) throw std::invalid_argument("embed: element not in the base field");
    if (x.is_zero()) return zero();
    const std::int64_t rel = relative_precision.value_or(precision_);
    const auto self = shared_from_this();
    const GaloisField& k = *residue_;
    auto evaluate = [&](const Poly& poly, const LocalElement& t) {
        LocalElement acc = zero();
        LocalElement power = one();
        for (std::size_t i = 0; i < poly.coefficients().size(); ++i) {
            if (i > 0) {
                power = power.indistinguishable_from_zero()
                            ? LocalElement(self, 0, {}, power.absolute_precision())
                            : power * t;
            }
            const Fq c = poly.coefficients()[i];
            if (!c.is_zero()) acc += power.scaled(drinfeld::embed(c, k));
        }
        return acc;
    };
    LocalElement t = zero();
    if (place_.is_infinite()) {
        t = LocalElement(self, -static_cast<std::int64_t>(e_), {c_});
    } else {
        const std::int64_t vn = multiplicity(x.numerator(), place_.prime());
        const std::int64_t vd = multiplicity(x.denominator(), place_.prime());
        t = t_expansion(rel + static_cast<std::int64_t>(e_) * std::max(vn, vd) + 1);
    }
    const LocalElement num = evaluate(x.numerator(), t);
    const LocalElement den = evaluate(x.denominator(), t);
    return num * den.inverse(rel);
}

std::string LocalField::to_string() const {
    std::ostringstream os;
    os << residue_->name() << "((u)), u^" << e_ << " = " << drinfeld::to_string(c_) << "*pi, pi = "
       << (place_.is_infinite() ? std::string("1/T") : place_.prime().to_string());
    return os.str();
}

LocalElement::LocalElement(std::shared_ptr<const LocalField> field, std::int64_t start, std::vector<Fq> coeffs,
                           std::int64_t absolute_precision)
    : field_(std::move(field)), start_(start), coeffs_(std::move(coeffs)), prec_(std::min(absolute_precision, kExact)) {
    for (auto& c : coeffs_)
        if (&c.field() != &field_->residue_field()) c = embed(c, field_->residue_field());
    normalize();
}

void LocalElement::normalize() {
    if (!is_exact() && start_ + static_cast<std::int64_t>(coeffs_.size()) > prec_) {
        const std::int64_t keep = std::max<std::int64_t>(0, prec_ - start_);
        coeffs_.resize(static_cast<std::size_t>(keep), field_->residue_field().zero());
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        start_ += static_cast<std::int64_t>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) start_ = is_exact() ? 0 : prec_;
}

std::optional<std::int64_t> LocalElement::order() const {
    if (coeffs_.empty()) return std::nullopt;
    return start_;
}

RatValuation LocalElement::valuation() const {
    if (is_zero()) return RatValuation::infinity();
    if (coeffs_.empty())
        throw PrecisionError("valuation undetermined: element is O(u^" + std::to_string(prec_) + ")");
    return RatValuation(Rational(start_, field_->ramification()));
}

std::int64_t LocalElement::relative_precision() const {
    if (is_exact()) return kExact;
    if (coeffs_.empty()) return 0;
    return prec_ - start_;
}

Fq LocalElement::coefficient(std::int64_t n) const {
    if (n >= prec_) throw PrecisionError("digit u^" + std::to_string(n) + " beyond precision " + std::to_string(prec_));
    if (coeffs_.empty() || n < start_ || n >= start_ + static_cast<std::int64_t>(coeffs_.size()))
        return field_->residue_field().zero();
    return coeffs_[static_cast<std::size_t>(n - start_)];
}

Fq LocalElement::leading_coefficient() const {
    if (coeffs_.empty()) throw PrecisionError("leading coefficient of an element indistinguishable from zero");
    return coeffs_.front();
}

LocalElement LocalElement::operator-() const {
    LocalElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LocalElement operator+(const LocalElement& a, const LocalElement& b) {
    if (a.field_ != b.field_ && &a.field_->residue_field() != &b.field_->residue_field())
        throw std::invalid_argument("local arithmetic across different fields");
    const std::int64_t prec = std::min(a.prec_, b.prec_);
    if (a.coeffs_.empty()) return LocalElement(a.field_, b.start_, b.coeffs_, prec);
    if (b.coeffs_.empty()) return LocalElement(a.field_, a.start_, a.coeffs_, prec);
    const std::int64_t lo = std::min(a.start_, b.start_);
    std::int64_t hi = std::max(a.start_ + static_cast<std::int64_t>(a.coeffs_.size()),
                               b.start_ + static_cast<std::int64_t>(b.coeffs_.size()));
    hi = std::min(hi, prec);
    if (hi <= lo) return LocalElement(a.field_, 0, {}, prec);
    std::vector<Fq> out(static_cast<std::size_t>(hi - lo), a.field_->residue_field().zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const std::int64_t n = a.start_ + static_cast<std::int64_t>(i);
        if (n < hi) out[static_cast<std::size_t>(n - lo)] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        const std::int64_t n = b.start_ + static_cast<std::int64_t>(i);
        if (n < hi) out[static_cast<std::size_t>(n - lo)] += b.coeffs_[i];
    }
    return LocalElement(a.field_, lo, std::move(out), prec);
}

LocalElement operator*(const LocalElement& a, const LocalElement& b) {
    if (a.is_zero() || b.is_zero()) return a.field_->zero();
    if (a.coeffs_.empty() || b.coeffs_.empty())
        throw PrecisionError("multiplication by an element indistinguishable from zero");
    const std::int64_t prec = std::min(sat_add(a.prec_, b.start_), sat_add(b.prec_, a.start_));
    const std::int64_t lo = a.start_ + b.start_;
    std::int64_t len = static_cast<std::int64_t>(a.coeffs_.size() + b.coeffs_.size() - 1);
    if (prec < LocalElement::kExact) len = std::min(len, prec - lo);
    if (len <= 0) return LocalElement(a.field_, 0, {}, prec);
    const GaloisField& k = a.field_->residue_field();
    std::vector<std::uint32_t> acc(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 0; i < a.coeffs_.size() && static_cast<std::int64_t>(i) < len; ++i) {
        const std::uint32_t ai = a.coeffs_[i].code();
        if (ai == 0) continue;
        const std::size_t lim = std::min(b.coeffs_.size(), static_cast<std::size_t>(len) - i);
        for (std::size_t j = 0; j < lim; ++j) acc[i + j] = k.add(acc[i + j], k.mul(ai, b.coeffs_[j].code()));
    }
    std::vector<Fq> out;
    out.reserve(acc.size());
    for (auto c : acc) out.emplace_back(k, c);
    return LocalElement(a.field_, lo, std::move(out), prec);
}

LocalElement LocalElement::inverse(std::optional<std::int64_t> relative_precision) const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (coeffs_.empty()) throw PrecisionError("inverse of an element indistinguishable from zero");
    const GaloisField& k = field_->residue_field();
    if (is_exact() && coeffs_.size() == 1) return LocalElement(field_, -start_, {coeffs_[0].inverse()});
    const std::int64_t rel = std::min(this->relative_precision(), relative_precision.value_or(field_->precision()));
    const Series inv = series_inverse(coeffs_, static_cast<std::size_t>(rel), k);
    return LocalElement(field_, -start_, inv, -start_ + rel);
}

LocalElement LocalElement::scaled(const Fq& c) const {
    if (c.is_zero()) return LocalElement(field_, 0, {}, is_exact() ? kExact : prec_);
    LocalElement r = *this;
    const Fq ce = embed(c, field_->residue_field());
    for (auto& x : r.coeffs_) x *= ce;
    return r;
}

LocalElement LocalElement::shifted(std::int64_t n) const {
    return LocalElement(field_, start_ + n, coeffs_, is_exact() ? kExact : prec_ + n);
}

LocalElement LocalElement::frobenius(unsigned k) const {
    std::int64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= field_->residue_field().characteristic();
    const std::int64_t prec = is_exact() ? kExact : prec_ * pk;
    if (coeffs_.empty()) return LocalElement(field_, 0, {}, prec);
    std::vector<Fq> out((coeffs_.size() - 1) * static_cast<std::size_t>(pk) + 1, field_->residue_field().zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<std::size_t>(pk)] = coeffs_[i].frobenius(k);
    return LocalElement(field_, start_ * pk, std::move(out), prec);
}

LocalElement LocalElement::truncated(std::int64_t absolute_precision) const {
    return LocalElement(field_, start_, coeffs_, std::min(prec_, absolute_precision));
}

LocalElement LocalElement::pow(std::uint64_t n) const {
    LocalElement result = field_->one();
    LocalElement base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool LocalElement::congruent(const LocalElement& other) const {
    return (*this - other).indistinguishable_from_zero();
}

bool operator<(const LocalElement& a, const LocalElement& b) {
    const bool az = a.coeffs_.empty(), bz = b.coeffs_.empty();
    if (az != bz) return az;
    if (az) return false;
    // Larger valuation first (closer to zero), then digits.
    if (a.start_ != b.start_) return a.start_ > b.start_;
    return a.coeffs_ < b.coeffs_;
}

std::string LocalElement::to_string(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
        if (coeffs_[i].is_zero()) continue;
        const std::int64_t n = start_ + static_cast<std::int64_t>(i);
        if (shown++) os << " + ";
        const std::string c = drinfeld::to_string(coeffs_[i]);
        const bool compound = c.find('+') != std::string::npos;
        if (n == 0) {
            os << c;
            continue;
        }
        if (!coeffs_[i].is_one()) os << (compound ? "(" + c + ")" : c) << "*";
        os << "u";
        if (n != 1) os << "^" << n;
    }
    const bool more = shown == max_terms && static_cast<std::size_t>(shown) < coeffs_.size();
    if (is_exact()) {
        if (shown == 0) return "0";
        if (more) os << " + ...";
        return os.str();
    }
    if (shown) os << " + ";
    if (more) os << "... + ";
    os << "O(u^" << prec_ << ")";
    return os.str();
}

}  // namespace drinfeld
