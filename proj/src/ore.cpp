#include "drinfeld/ore.hpp"

#include <sstream>
#include <stdexcept>

namespace drinfeld {

OrePolynomial::OrePolynomial(unsigned q_log, std::vector<RationalFunction> coeffs)
    : q_log_(q_log), coeffs_(std::move(coeffs)), zero_(coeffs_.empty() ? throw std::invalid_argument("OrePolynomial needs a field") : coeffs_.front().field()) {
    for (const auto& c : coeffs_)
        if (&c.field() != &zero_.field()) throw std::invalid_argument("OrePolynomial coefficients over different fields");
    normalize();
}

void OrePolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

OrePolynomial operator+(const OrePolynomial& a, const OrePolynomial& b) {
    std::vector<RationalFunction> out(std::max(a.coeffs_.size(), b.coeffs_.size()), a.zero_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    if (out.empty()) out.push_back(a.zero_);
    return OrePolynomial(a.q_log_, std::move(out));
}

OrePolynomial operator-(const OrePolynomial& a, const OrePolynomial& b) {
    std::vector<RationalFunction> out(std::max(a.coeffs_.size(), b.coeffs_.size()), a.zero_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    if (out.empty()) out.push_back(a.zero_);
    return OrePolynomial(a.q_log_, std::move(out));
}

OrePolynomial operator*(const OrePolynomial& a, const OrePolynomial& b) {
    if (a.q_log_ != b.q_log_) throw std::invalid_argument("Ore product with different q");
    if (a.is_zero() || b.is_zero()) return OrePolynomial(a.q_log_, {a.zero_});
    std::vector<RationalFunction> out(a.coeffs_.size() + b.coeffs_.size() - 1, a.zero_);
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        // twisted = b_j^(q^i), advanced one τ-step per i.
        RationalFunction twisted = b.coeffs_[j];
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (i > 0) twisted = twisted.frobenius(a.q_log_);
            if (!a.coeffs_[i].is_zero()) out[i + j] += a.coeffs_[i] * twisted;
        }
    }
    return OrePolynomial(a.q_log_, std::move(out));
}

RationalFunction OrePolynomial::apply(const RationalFunction& x) const {
    return additive_form(*this).evaluate(x);
}

std::string OrePolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = coeffs_[i].to_string(var);
        if (i == 0) {
            os << c;
            continue;
        }
        if (!coeffs_[i].is_one()) os << (c.find(' ') != std::string::npos ? "(" + c + ")" : c) << "*";
        os << "tau";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

AdditivePolynomial<RationalFunction> additive_form(const OrePolynomial& f) {
    std::vector<RationalFunction> coeffs = f.coefficients();
    std::vector<bool> nonzero;
    for (const auto& c : coeffs) nonzero.push_back(!c.is_zero());
    if (coeffs.empty()) {
        coeffs.push_back(f[0]);
        nonzero.push_back(false);
    }
    return AdditivePolynomial<RationalFunction>(f.q_log(), std::move(coeffs), std::move(nonzero));
}

}  // namespace drinfeld
