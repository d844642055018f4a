#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace drinfeld {

class Fq;

/// The finite field F_{p^n} = F_p[x]/(modulus), where modulus is the first
/// monic irreducible polynomial of degree n in the enumeration order that
/// reads coefficient vectors as base-p integers (constant term least
/// significant). Elements are encoded as that base-p integer.
///
/// Instances are interned: get() returns a reference that stays valid for the
/// lifetime of the program, so elements may hold a plain pointer to it.
class GaloisField {
public:
    static const GaloisField& get(std::uint32_t p, unsigned degree);

    GaloisField(const GaloisField&) = delete;
    GaloisField& operator=(const GaloisField&) = delete;

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return degree_; }
    std::uint32_t order() const { return order_; }
    /// Coefficients over F_p, lowest first, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fq zero() const;
    Fq one() const;
    /// Image of an integer in the prime subfield.
    Fq from_int(std::int64_t n) const;
    /// The class of x in F_p[x]/(modulus). Equals a primitive root when degree() == 1.
    Fq generator() const;
    /// A generator of the multiplicative group.
    Fq primitive() const;
    Fq element(std::uint32_t code) const;
    /// All elements in code order.
    std::vector<Fq> elements() const;

    // Raw operations on codes.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;

    /// Coordinates over F_p in the polynomial basis.
    std::vector<std::uint32_t> digits(std::uint32_t a) const;
    std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const;

    std::string name() const;

private:
    GaloisField(std::uint32_t p, unsigned degree);

    std::uint32_t p_;
    unsigned degree_;
    std::uint32_t order_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> plus_one_;
    std::uint32_t primitive_ = 1;
};

/// An element of an interned GaloisField.
class Fq {
public:
    Fq() = default;
    Fq(const GaloisField& field, std::uint32_t code) : field_(&field), code_(code) {}

    const GaloisField& field() const { return *field_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }

    Fq operator-() const { return {*field_, field_->neg(code_)}; }
    Fq& operator+=(const Fq& o) { code_ = field_->add(code_, o.code_); return *this; }
    Fq& operator-=(const Fq& o) { code_ = field_->sub(code_, o.code_); return *this; }
    Fq& operator*=(const Fq& o) { code_ = field_->mul(code_, o.code_); return *this; }
    Fq& operator/=(const Fq& o) { code_ = field_->mul(code_, field_->inv(o.code_)); return *this; }

    friend Fq operator+(Fq a, const Fq& b) { return a += b; }
    friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
    friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
    friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
    friend bool operator==(const Fq& a, const Fq& b) { return a.code_ == b.code_; }
    friend bool operator!=(const Fq& a, const Fq& b) { return a.code_ != b.code_; }
    /// Total order on codes; used only for deterministic sorting.
    friend bool operator<(const Fq& a, const Fq& b) { return a.code_ < b.code_; }

    Fq inverse() const { return {*field_, field_->inv(code_)}; }
    Fq pow(std::uint64_t n) const { return {*field_, field_->pow(code_, n)}; }
    /// x^(p^k); k may exceed the degree.
    Fq frobenius(unsigned k = 1) const;
    /// The unique y with y^(p^k) = x.
    Fq frobenius_root(unsigned k = 1) const;

    friend std::ostream& operator<<(std::ostream& os, const Fq& x);

private:
    const GaloisField* field_ = nullptr;
    std::uint32_t code_ = 0;
};

std::string to_string(const Fq& x, const std::string& generator_name = "w");

/// The embedding F_{p^a} -> F_{p^b} (a | b) sending the generator of the
/// smaller field to the first root of its modulus in the larger one.
class FieldEmbedding {
public:
    static const FieldEmbedding& get(const GaloisField& from, const GaloisField& to);

    const GaloisField& from() const { return *from_; }
    const GaloisField& to() const { return *to_; }
    Fq operator()(const Fq& x) const;
    /// Inverse image, if x lies in the subfield.
    std::optional<Fq> preimage(const Fq& x) const;

private:
    FieldEmbedding(const GaloisField& from, const GaloisField& to);

    const GaloisField* from_;
    const GaloisField* to_;
    std::vector<std::uint32_t> forward_;
    std::vector<std::int64_t> backward_;
};

/// Maps x into `to`, which must contain x's field.
Fq embed(const Fq& x, const GaloisField& to);

}  // namespace drinfeld
