#include "drinfeld/drinfeld_module.hpp"

#include <stdexcept>

namespace drinfeld {

DrinfeldModule::DrinfeldModule(const GaloisField& fq, unsigned m, OrePolynomial phi_T)
    : fq_(&fq), k_(&GaloisField::get(fq.characteristic(), fq.degree() * m)), m_(m), phi_T_(std::move(phi_T)) {
    if (&phi_T_.field() != k_)
        throw std::invalid_argument("phi_T coefficients must lie in " + k_->name() + "(T)");
    if (phi_T_.q_log() != fq.degree()) throw std::invalid_argument("phi_T twist does not match q");
    if (phi_T_.degree() < 1) throw std::invalid_argument("Drinfeld module needs rank >= 1 (phi_T != i(T))");
}

DrinfeldModule DrinfeldModule::carlitz(const GaloisField& fq, unsigned m) {
    const GaloisField& k = GaloisField::get(fq.characteristic(), fq.degree() * m);
    return DrinfeldModule(fq, m,
                          OrePolynomial(fq.degree(), {RationalFunction::variable(k), RationalFunction::constant(k.one())}));
}

RationalFunction DrinfeldModule::structure_map(const Poly& a) const {
    return RationalFunction(a.embed(*k_)).substitute(structure_image());
}

OrePolynomial DrinfeldModule::image(const Poly& a) const {
    if (&a.field() != fq_) throw std::invalid_argument("element of A must have coefficients in " + fq_->name());
    const auto& cs = a.coefficients();
    OrePolynomial acc = OrePolynomial::constant(q_log(), RationalFunction(*k_));
    for (std::size_t i = cs.size(); i-- > 0;) {
        // Horner: acc = acc·φ_T + c_i, with c_i ∈ F_q central in K{τ}.
        acc = acc * phi_T_ + OrePolynomial::constant(q_log(), RationalFunction::constant(embed(cs[i], *k_)));
    }
    return acc;
}

Characteristic DrinfeldModule::characteristic() const {
    const RationalFunction& iT = structure_image();
    if (!iT.is_constant()) return {true, std::nullopt};
    return {false, minimal_polynomial(iT.numerator()[0], *fq_)};
}

std::string DrinfeldModule::to_string() const {
    return "phi_T = " + phi_T_.to_string() + " over " + k_->name() + "(T), q = " + std::to_string(q());
}

}  // namespace drinfeld
