#pragma once

#include "drinfeld/ore.hpp"

#include <optional>
#include <string>

namespace drinfeld {

/// Characteristic of a Drinfeld module: generic, or the monic generator of
/// ker(i) in F_q[T].
struct Characteristic {
    bool generic = true;
    std::optional<Poly> prime;
};

/// A Drinfeld module φ: F_q[T] -> K{τ} over K = F_{q^m}(T), determined by φ_T.
class DrinfeldModule {
public:
    /// `fq` is F_q (so q = fq.order()); phi_T has coefficients in F_{q^m}(T)
    /// with F_{q^m} of degree m over fq, and τ-degree r >= 1.
    DrinfeldModule(const GaloisField& fq, unsigned m, OrePolynomial phi_T);

    /// φ_T = T + τ.
    static DrinfeldModule carlitz(const GaloisField& fq, unsigned m = 1);

    const GaloisField& fq() const { return *fq_; }
    const GaloisField& constant_field() const { return *k_; }
    std::uint32_t q() const { return fq_->order(); }
    unsigned q_log() const { return fq_->degree(); }
    unsigned m() const { return m_; }
    unsigned rank() const { return static_cast<unsigned>(phi_T_.degree()); }
    const OrePolynomial& phi_T() const { return phi_T_; }
    /// i(T), the τ^0 coefficient of φ_T.
    const RationalFunction& structure_image() const { return phi_T_[0]; }

    /// φ_a for a ∈ F_q[T] (a's field must be fq()).
    OrePolynomial image(const Poly& a) const;
    /// i(a) ∈ K.
    RationalFunction structure_map(const Poly& a) const;
    Characteristic characteristic() const;

    std::string to_string() const;

private:
    const GaloisField* fq_;
    const GaloisField* k_;
    unsigned m_;
    OrePolynomial phi_T_;
};

}  // namespace drinfeld
