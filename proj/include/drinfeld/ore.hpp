#pragma once

#include "drinfeld/rational_function.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// x^(p^k) for a global element; used by AdditivePolynomial evaluation.
inline RationalFunction frobenius(const RationalFunction& x, unsigned k) { return x.frobenius(k); }

/// Twisted polynomial Σ c_i τ^i over k(T) with τ c = c^q τ, where q = p^s.
class OrePolynomial {
public:
    /// `q_log` is s with q = p^s; coefficients must share one field.
    OrePolynomial(unsigned q_log, std::vector<RationalFunction> coeffs);
    static OrePolynomial constant(unsigned q_log, const RationalFunction& c) { return OrePolynomial(q_log, {c}); }

    unsigned q_log() const { return q_log_; }
    const GaloisField& field() const { return zero_.field(); }
    /// τ-degree; -1 for zero.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const RationalFunction& operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }
    const std::vector<RationalFunction>& coefficients() const { return coeffs_; }

    friend OrePolynomial operator+(const OrePolynomial& a, const OrePolynomial& b);
    friend OrePolynomial operator-(const OrePolynomial& a, const OrePolynomial& b);
    /// Composition product: coefficient k is Σ_{i+j=k} a_i · b_j^(q^i).
    friend OrePolynomial operator*(const OrePolynomial& a, const OrePolynomial& b);
    friend bool operator==(const OrePolynomial& a, const OrePolynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const OrePolynomial& a, const OrePolynomial& b) { return !(a == b); }

    /// The induced additive map x -> Σ c_i x^(q^i).
    RationalFunction apply(const RationalFunction& x) const;

    std::string to_string(const std::string& var = "T") const;

private:
    void normalize();

    unsigned q_log_;
    std::vector<RationalFunction> coeffs_;
    RationalFunction zero_;
};

/// Σ_{i} a_i x^(q^i) with coefficients in a ring S carrying a Frobenius
/// `frobenius(S, k) = S^(p^k)`. r0 is the least index with a_i != 0.
template <class S>
class AdditivePolynomial {
public:
    AdditivePolynomial(unsigned q_log, std::vector<S> coeffs, std::vector<bool> nonzero)
        : q_log_(q_log), coeffs_(std::move(coeffs)), nonzero_(std::move(nonzero)) {}

    unsigned q_log() const { return q_log_; }
    /// Highest index i carrying a stored coefficient.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const S& coefficient(std::size_t i) const { return coeffs_.at(i); }
    bool is_nonzero(std::size_t i) const { return i < nonzero_.size() && nonzero_[i]; }
    const std::vector<S>& coefficients() const { return coeffs_; }

    /// Least index with a nonzero coefficient; empty for the zero polynomial (degenerate).
    std::optional<std::size_t> r0() const {
        for (std::size_t i = 0; i < nonzero_.size(); ++i)
            if (nonzero_[i]) return i;
        return std::nullopt;
    }

    S evaluate(const S& x) const {
        S power = x;
        std::optional<S> acc;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i > 0) power = frobenius(power, q_log_);
            if (!nonzero_[i]) continue;
            S term = coeffs_[i] * power;
            acc = acc ? *acc + term : term;
        }
        if (!acc) return x - x;
        return *acc;
    }

    template <class Fn>
    auto map(Fn&& fn) const -> AdditivePolynomial<decltype(fn(std::declval<const S&>()))> {
        using T = decltype(fn(std::declval<const S&>()));
        std::vector<T> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(fn(c));
        return AdditivePolynomial<T>(q_log_, std::move(out), nonzero_);
    }

private:
    unsigned q_log_;
    std::vector<S> coeffs_;
    std::vector<bool> nonzero_;
};

/// Transcribe τ^i into x^(q^i).
AdditivePolynomial<RationalFunction> additive_form(const OrePolynomial& f);

}  // namespace drinfeld
