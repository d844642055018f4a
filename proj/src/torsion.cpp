#include "drinfeld/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace drinfeld {
namespace {

std::int64_t ipow(std::int64_t q, std::size_t i) {
    std::int64_t r = 1;
    for (std::size_t k = 0; k < i; ++k) r *= q;
    return r;
}

Rational floor_plus_one(const Rational& x) { return Rational(floor(x) + 1); }

// Residue of x at v in a field large enough to hold the residue field; x must be integral at v.
Fq residue(const RationalFunction& x, const Place& v) {
    const GaloisField& k = x.field();
    if (v.is_infinite()) {
        const Poly& n = x.numerator();
        const Poly& d = x.denominator();
        if (n.degree() < d.degree()) return k.zero();
        return n.leading() / d.leading();
    }
    const GaloisField& R = GaloisField::get(k.characteristic(), k.degree() * static_cast<unsigned>(v.prime().degree()));
    const Fq theta = roots(v.prime().embed(R), R).front();
    return x.numerator().evaluate(theta) / x.denominator().evaluate(theta);
}

// Solves R(z) = rhs for an F_p-linear map R on a finite field, by Gaussian
// elimination on coordinates in the polynomial basis.
class LinearMap {
public:
    template <class Fn>
    LinearMap(const GaloisField& k, Fn&& map) : k_(&k), p_(k.characteristic()), n_(k.degree()) {
        std::vector<std::vector<std::uint32_t>> cols;
        std::uint32_t code = 1;
        for (unsigned j = 0; j < n_; ++j, code *= p_) cols.push_back(k.digits(map(k.element(code)).code()));
        rows_.assign(n_, std::vector<std::uint32_t>(n_, 0));
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned j = 0; j < n_; ++j) rows_[i][j] = cols[j][i];
        // Row reduce, recording the operations so right-hand sides can be replayed.
        transform_.assign(n_, std::vector<std::uint32_t>(n_, 0));
        for (unsigned i = 0; i < n_; ++i) transform_[i][i] = 1;
        unsigned r = 0;
        for (unsigned c = 0; c < n_ && r < n_; ++c) {
            unsigned piv = r;
            while (piv < n_ && rows_[piv][c] == 0) ++piv;
            if (piv == n_) continue;
            std::swap(rows_[piv], rows_[r]);
            std::swap(transform_[piv], transform_[r]);
            const std::uint32_t inv = inverse(rows_[r][c]);
            scale_row(r, inv);
            for (unsigned i = 0; i < n_; ++i) {
                if (i == r || rows_[i][c] == 0) continue;
                const std::uint32_t f = rows_[i][c];
                for (unsigned j = 0; j < n_; ++j) {
                    rows_[i][j] = sub(rows_[i][j], mul(f, rows_[r][j]));
                    transform_[i][j] = sub(transform_[i][j], mul(f, transform_[r][j]));
                }
            }
            pivots_.push_back(c);
            ++r;
        }
        std::vector<bool> is_pivot(n_, false);
        for (auto c : pivots_) is_pivot[c] = true;
        for (unsigned f = 0; f < n_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<std::uint32_t> y(n_, 0);
            y[f] = 1;
            for (std::size_t i = 0; i < pivots_.size(); ++i) y[pivots_[i]] = sub(0, rows_[i][f]);
            kernel_.push_back(k.element(k.from_digits(y)));
        }
    }

    std::size_t kernel_dimension() const { return kernel_.size(); }

    /// All z with R(z) = rhs.
    std::vector<Fq> solve(const Fq& rhs) const {
        const auto b = k_->digits(rhs.code());
        std::vector<std::uint32_t> tb(n_, 0);
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned j = 0; j < n_; ++j) tb[i] = add(tb[i], mul(transform_[i][j], b[j]));
        for (unsigned i = static_cast<unsigned>(pivots_.size()); i < n_; ++i)
            if (tb[i] != 0) return {};
        std::vector<std::uint32_t> y(n_, 0);
        for (std::size_t i = 0; i < pivots_.size(); ++i) y[pivots_[i]] = tb[i];
        std::vector<Fq> out{k_->element(k_->from_digits(y))};
        for (const auto& kv : kernel_) {
            std::vector<Fq> next;
            next.reserve(out.size() * p_);
            for (const auto& z : out)
                for (std::uint32_t c = 0; c < p_; ++c) next.push_back(z + kv * k_->from_int(c));
            out = std::move(next);
        }
        return out;
    }

private:
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t inverse(std::uint32_t a) const {
        std::uint32_t r = 1;
        for (std::uint32_t e = p_ - 2, b = a; e > 0; e >>= 1, b = mul(b, b))
            if (e & 1) r = mul(r, b);
        return r;
    }
    void scale_row(unsigned r, std::uint32_t f) {
        for (unsigned j = 0; j < n_; ++j) {
            rows_[r][j] = mul(rows_[r][j], f);
            transform_[r][j] = mul(transform_[r][j], f);
        }
    }

    const GaloisField* k_;
    std::uint32_t p_;
    unsigned n_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::vector<std::uint32_t>> transform_;
    std::vector<unsigned> pivots_;
    std::vector<Fq> kernel_;
};

}  // namespace

Poly choose_t(const DrinfeldModule& phi, const Place& v) {
    const Characteristic ch = phi.characteristic();
    if (!ch.generic) return *ch.prime;
    const RationalFunction& iT = phi.structure_image();
    const IntValuation val = valuation(iT, v);
    if (val < IntValuation(0))
        throw HypothesisError("v = " + v.to_string() +
                              " lies over the infinite place of F_q[T] for a module of generic characteristic; "
                              "F_q[T] is not integral there and no discreteness constant exists");
    const Poly t = minimal_polynomial(residue(iT, v), phi.fq());
    if (valuation(phi.structure_map(t), v) < IntValuation(1))
        throw InvariantViolation("chosen t = " + t.to_string() + " does not lie in the maximal ideal at " + v.to_string());
    return t;
}

std::string BallConstant::to_string() const {
    std::ostringstream os;
    os << "t = " << t.to_string() << ", r0 = " << r0 << ", r = " << r << ", S = {";
    if (first_fraction_discarded) os << "(discarded)";
    for (std::size_t i = 0; i < S.size(); ++i) os << (i || first_fraction_discarded ? ", " : "") << drinfeld::to_string(S[i]);
    os << "}, C_v = " << C_v;
    return os.str();
}

BallConstant ball_constant(const DrinfeldModule& phi, const Place& v) {
    BallConstant bc{.v = v, .t = choose_t(phi, v)};
    bc.generic = phi.characteristic().generic;
    const OrePolynomial phi_t = phi.image(bc.t);
    std::size_t r0 = 0;
    while (phi_t[r0].is_zero()) ++r0;
    bc.r0 = r0;
    bc.r = static_cast<std::size_t>(phi_t.degree());
    for (std::size_t i = r0; i <= bc.r; ++i) bc.coefficient_valuations.push_back(valuation(phi_t[i], v));
    const std::int64_t vr0 = bc.coefficient_valuations.front().value();
    if (bc.generic && !(r0 == 0 && vr0 >= 1))
        throw InvariantViolation("generic characteristic but φ_t has r0 = " + std::to_string(r0) +
                                 ", v(a_0) = " + std::to_string(vr0));
    if (!bc.generic && r0 < 1) throw InvariantViolation("finite characteristic but φ_t has a nonzero constant term");
    const std::int64_t q = phi.q();
    if (r0 == 0) {
        bc.first_fraction_discarded = true;
    } else {
        bc.S.push_back(Rational(-vr0, ipow(q, r0) - 1));
    }
    for (std::size_t i = r0 + 1; i <= bc.r; ++i) {
        const IntValuation vi = bc.coefficient_valuations[i - r0];
        if (vi.is_infinite()) continue;
        bc.S.push_back(Rational(vr0 - vi.value(), ipow(q, i) - ipow(q, r0)));
    }
    Rational c(1);
    for (const auto& s : bc.S) c = std::max(c, floor_plus_one(s));
    bc.C_v = c.numerator();
    return bc;
}

AdditivePolynomial<LocalElement> local_additive_form(const OrePolynomial& f, const LocalField& F,
                                                     std::optional<std::int64_t> relative_precision) {
    std::vector<LocalElement> coeffs;
    std::vector<bool> nonzero;
    for (const auto& c : f.coefficients()) {
        coeffs.push_back(c.is_zero() ? F.zero() : F.embed(c, relative_precision));
        nonzero.push_back(!c.is_zero());
    }
    return AdditivePolynomial<LocalElement>(f.q_log(), std::move(coeffs), std::move(nonzero));
}

Rational decisive_step(const AdditivePolynomial<LocalElement>& phi_t, const LocalElement& x, const BallConstant& ball) {
    if (x.indistinguishable_from_zero()) throw std::invalid_argument("decisive step needs x != 0");
    const Rational vx = x.valuation().value();
    if (vx < Rational(ball.C_v))
        throw std::invalid_argument("decisive step needs v(x) >= C_v = " + std::to_string(ball.C_v) + ", got " +
                                    drinfeld::to_string(vx));
    const LocalElement y = phi_t.evaluate(x);
    const Rational vy = y.valuation().value();
    const std::int64_t q = ipow(x.field().residue_field().characteristic(), phi_t.q_log());
    const Rational expected = Rational(ball.coefficient_valuations.front().value()) + Rational(ipow(q, ball.r0)) * vx;
    if (vy != expected || !(vy > vx))
        throw InvariantViolation("v(φ_t(x)) = " + drinfeld::to_string(vy) + " but v(a_r0) + q^r0 v(x) = " +
                                 drinfeld::to_string(expected) + " with v(x) = " + drinfeld::to_string(vx));
    return vy;
}

std::optional<std::size_t> TorsionSet::find(const LocalElement& x) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].congruent(x)) return i;
    return std::nullopt;
}

TorsionSet locate_torsion(const DrinfeldModule& phi, const Poly& a, std::shared_ptr<const LocalField> F,
                          std::optional<std::int64_t> N_opt) {
    if (a.is_zero()) throw std::invalid_argument("locate_torsion: a = 0");
    const std::int64_t N = N_opt.value_or(F->precision());
    const Place& v = F->place();
    const GaloisField& kp = F->residue_field();
    const std::int64_t q = phi.q();
    const std::int64_t e = F->ramification();

    TorsionSet out{.a = a};
    out.a = a;
    out.fq = &phi.fq();
    out.field = F;
    out.precision = N;
    const OrePolynomial fa = phi.image(a);
    const std::size_t R = static_cast<std::size_t>(fa.degree());
    out.expected_size = static_cast<std::size_t>(ipow(q, R));
    if (fa[0].is_zero())
        throw CapabilityError("φ_a is inseparable for a = " + a.to_string() +
                              "; its roots need q-th roots, which only wild extensions provide");
    out.polygon = newton_polygon(additive_form(fa), v);
    if (R == 0) {
        out.points = {LocalElement(F, 0, {}, N)};
        out.certified_order = LocalElement::kExact;
        return out;
    }

    std::int64_t need_e = 1;
    for (const auto& s : out.polygon.segments()) need_e = std::lcm(need_e, s.slope.denominator());
    if (e % need_e != 0) {
        const bool wild = need_e % static_cast<std::int64_t>(kp.characteristic()) == 0;
        throw CapabilityError("roots of φ_a for a = " + a.to_string() + " at " + v.to_string() +
                              " have valuations " + out.polygon.to_string() + "; need e divisible by " +
                              std::to_string(need_e) + (wild ? " (wild, unsupported)" : ""));
    }

    std::vector<std::int64_t> A(R + 1, 0), qpow(R + 1, 1);
    std::vector<bool> present(R + 1, false);
    for (std::size_t i = 0; i <= R; ++i) {
        qpow[i] = ipow(q, i);
        present[i] = !fa[i].is_zero();
        if (present[i]) A[i] = e * valuation(fa[i], v).value();
    }
    auto mu = [&](std::int64_t k) {
        std::int64_t best = LocalElement::kExact;
        for (std::size_t i = 0; i <= R; ++i)
            if (present[i]) best = std::min(best, A[i] + k * qpow[i]);
        return best;
    };
    const Rational k0r = -out.polygon.segments().back().slope * Rational(e);
    const Rational kmaxr = -out.polygon.segments().front().slope * Rational(e);
    const std::int64_t k0 = k0r.numerator();
    const std::int64_t kmax = kmaxr.numerator();
    if (N < kmax + 2)
        throw PrecisionError("precision " + std::to_string(N) + " cannot separate roots of valuation up to " +
                             drinfeld::to_string(kmaxr / Rational(e)) + "; need at least " + std::to_string(kmax + 2));
    const std::int64_t target = mu(N);
    out.certified_order = target;

    std::vector<LocalElement> loc;
    std::vector<Fq> lead;
    for (std::size_t i = 0; i <= R; ++i) {
        if (!present[i]) {
            loc.push_back(F->zero());
            lead.push_back(kp.zero());
            continue;
        }
        const std::int64_t rel = std::max<std::int64_t>(1, target - k0 * qpow[i] - A[i]);
        loc.push_back(F->embed(fa[i], rel));
        lead.push_back(loc.back().leading_coefficient());
    }

    struct Branch {
        std::vector<Fq> digits;
        LocalElement b;
    };
    std::vector<Branch> branches{{{}, LocalElement(F, 0, {}, target)}};
    for (std::int64_t k = k0; k < N; ++k) {
        const std::int64_t mk = mu(k);
        std::vector<std::size_t> argmin;
        for (std::size_t i = 0; i <= R; ++i)
            if (present[i] && A[i] + k * qpow[i] == mk) argmin.push_back(i);
        const LinearMap residual(kp, [&](const Fq& z) {
            Fq s = kp.zero();
            for (auto i : argmin) s += lead[i] * z.frobenius(static_cast<unsigned>(phi.q_log() * i));
            return s;
        });
        std::vector<Branch> next;
        for (const auto& br : branches) {
            if (!br.b.indistinguishable_from_zero() && *br.b.order() < mk) continue;
            const Fq rhs = mk < target ? -br.b.coefficient(mk) : kp.zero();
            for (const Fq& z : residual.solve(rhs)) {
                Branch nb = br;
                nb.digits.push_back(z);
                if (!z.is_zero()) {
                    for (std::size_t i = 0; i <= R; ++i) {
                        if (!present[i] || A[i] + k * qpow[i] >= target) continue;
                        const Fq zq = z.frobenius(static_cast<unsigned>(phi.q_log() * i));
                        nb.b += loc[i].scaled(zq).shifted(k * qpow[i]).truncated(target);
                    }
                }
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
        if (branches.size() > 4 * out.expected_size + 64)
            throw InvariantViolation("torsion lifting produced more candidates than φ_a has roots");
    }
    for (const auto& br : branches) {
        if (!br.b.indistinguishable_from_zero())
            throw InvariantViolation("lifted candidate fails certification: φ_a(x) = " + br.b.to_string());
        out.points.emplace_back(F, k0, br.digits, N);
    }
    std::sort(out.points.begin(), out.points.end());
    if (!out.complete()) {
        std::ostringstream os;
        os << "only " << out.points.size() << " of " << out.expected_size << " roots of φ_a for a = " << a.to_string()
           << " lie in " << kp.name() << "((u)) at " << v.to_string() << "; the residual equations need a larger residue field";
        throw CapabilityError(os.str());
    }

    std::vector<Fq> scalars;
    for (const auto& c : phi.fq().elements()) scalars.push_back(drinfeld::embed(c, kp));
    std::vector<LocalElement> span{out.points.front()};
    for (const auto& x : out.points) {
        const bool inside = std::any_of(span.begin(), span.end(), [&](const LocalElement& s) { return s.congruent(x); });
        if (inside) continue;
        out.basis.push_back(x);
        std::vector<LocalElement> grown;
        for (const auto& s : span)
            for (const auto& c : scalars) grown.push_back(s + x.scaled(c));
        span = std::move(grown);
    }
    return out;
}

bool is_fq_subspace(const TorsionSet& set) {
    const GaloisField& kp = set.field->residue_field();
    if (set.points.empty() || !set.points.front().indistinguishable_from_zero()) return false;
    for (const auto& x : set.points) {
        for (const auto& y : set.points)
            if (!set.find(x + y)) return false;
        for (const auto& c : set.fq->elements())
            if (!set.find(x.scaled(drinfeld::embed(c, kp)))) return false;
    }
    return true;
}

}  // namespace drinfeld
