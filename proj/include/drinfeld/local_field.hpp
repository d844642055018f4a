#pragma once

#include "drinfeld/errors.hpp"
#include "drinfeld/places.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

class LocalElement;

/// A tame extension of the completion K_v, modelled as k'((u)) with
/// u^e = c·π_v (π_∞ = 1/T). k' = F_{q^m'} must contain the residue field of v.
/// Exponents of u are integers; the valuation of u^n is n/e, so that v
/// restricted to K has value group Z.
class LocalField : public std::enable_shared_from_this<LocalField> {
public:
    static constexpr std::int64_t kDefaultPrecision = 32;

    /// Throws CapabilityError when p | e (wild) or k' cannot hold the residue
    /// field of v (the message names the smallest admissible m').
    static std::shared_ptr<const LocalField> create(const Place& v, const GaloisField& fq, unsigned residue_degree,
                                                    unsigned ramification = 1, std::optional<Fq> unit = std::nullopt,
                                                    std::int64_t precision = kDefaultPrecision);

    const Place& place() const { return place_; }
    const GaloisField& fq() const { return *fq_; }
    /// k' = F_{q^m'}.
    const GaloisField& residue_field() const { return *residue_; }
    /// m' = [k' : F_q].
    unsigned residue_degree() const { return residue_->degree() / fq_->degree(); }
    unsigned ramification() const { return e_; }
    const Fq& unit() const { return c_; }
    /// Relative precision used when an operation has to truncate an infinite expansion.
    std::int64_t precision() const { return precision_; }
    /// The chosen root of π_v in k' (T ≡ θ mod π_v); zero for infinity.
    const Fq& theta() const { return theta_; }

    LocalElement zero() const;
    LocalElement one() const;
    LocalElement uniformizer() const;
    LocalElement constant(const Fq& c) const;
    /// Laurent expansion of x ∈ K with at least `relative_precision` known digits
    /// (default precision()).
    LocalElement embed(const RationalFunction& x, std::optional<std::int64_t> relative_precision = std::nullopt) const;

    std::string to_string() const;

private:
    LocalField(const Place& v, const GaloisField& fq, const GaloisField& residue, unsigned e, Fq c, std::int64_t precision,
               Fq theta);

    /// T as a series in u, correct modulo u^abs_precision (finite places).
    LocalElement t_expansion(std::int64_t abs_precision) const;

    Place place_;
    const GaloisField* fq_;
    const GaloisField* residue_;
    unsigned e_;
    Fq c_;
    std::int64_t precision_;
    Fq theta_;
};

/// A truncated Laurent series Σ c_n u^n known modulo u^N (absolute precision
/// N), or exactly. Coefficients live in the residue field k'.
class LocalElement {
public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

    LocalElement(std::shared_ptr<const LocalField> field, std::int64_t start, std::vector<Fq> coeffs,
                 std::int64_t absolute_precision = kExact);

    const LocalField& field() const { return *field_; }
    const std::shared_ptr<const LocalField>& field_ptr() const { return field_; }
    bool is_exact() const { return prec_ >= kExact; }
    std::int64_t absolute_precision() const { return prec_; }
    /// True for the exact zero only.
    bool is_zero() const { return coeffs_.empty() && is_exact(); }
    /// No nonzero digit below the precision bound.
    bool indistinguishable_from_zero() const { return coeffs_.empty(); }

    /// Exponent of the leading term; nullopt when indistinguishable from zero.
    std::optional<std::int64_t> order() const;
    /// Valuation in (1/e)Z; +∞ for the exact zero. Throws PrecisionError when
    /// the element is zero to working precision but not known to be zero.
    RatValuation valuation() const;
    /// Number of certified digits after the leading one (kExact for exact).
    std::int64_t relative_precision() const;
    Fq coefficient(std::int64_t n) const;
    Fq leading_coefficient() const;

    LocalElement operator-() const;
    friend LocalElement operator+(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator-(const LocalElement& a, const LocalElement& b) { return a + (-b); }
    /// Throws PrecisionError if an operand is an inexact zero.
    friend LocalElement operator*(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator/(const LocalElement& a, const LocalElement& b) { return a * b.inverse(); }
    LocalElement& operator+=(const LocalElement& o) { return *this = *this + o; }

    /// Throws PrecisionError when the valuation is undetermined, domain_error for exact zero.
    LocalElement inverse(std::optional<std::int64_t> relative_precision = std::nullopt) const;
    LocalElement scaled(const Fq& c) const;
    /// Multiply by u^n.
    LocalElement shifted(std::int64_t n) const;
    /// x^(p^k), exact on digits: (x + O(u^N))^(p^k) = x^(p^k) + O(u^(N p^k)).
    LocalElement frobenius(unsigned k) const;
    LocalElement truncated(std::int64_t absolute_precision) const;
    LocalElement pow(std::uint64_t n) const;

    /// Agreement modulo u^min(precisions).
    bool congruent(const LocalElement& other) const;
    /// Ordering on (valuation, digits) for deterministic sorting.
    friend bool operator<(const LocalElement& a, const LocalElement& b);

    std::string to_string(int max_terms = 6) const;

private:
    void normalize();

    std::shared_ptr<const LocalField> field_;
    std::int64_t start_;
    std::vector<Fq> coeffs_;
    std::int64_t prec_;
};

inline LocalElement frobenius(const LocalElement& x, unsigned k) { return x.frobenius(k); }

}  // namespace drinfeld
