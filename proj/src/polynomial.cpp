#include "drinfeld/polynomial.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace drinfeld {

Poly::Poly(const GaloisField& field, std::vector<Fq> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_)
        if (&c.field() != field_) c = drinfeld::embed(c, field);
    normalize();
}

Poly Poly::constant(const Fq& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Fq& c, std::size_t degree) {
    std::vector<Fq> v(degree + 1, c.field().zero());
    v[degree] = c;
    return Poly(c.field(), std::move(v));
}

Poly Poly::variable(const GaloisField& field) { return monomial(field.one(), 1); }

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::size_t Poly::low_order() const {
    std::size_t i = 0;
    while (i < coeffs_.size() && coeffs_[i].is_zero()) ++i;
    return coeffs_.empty() ? 0 : i;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_->zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_->zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.field_);
    const GaloisField& f = *a.field_;
    std::vector<std::uint32_t> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const std::uint32_t ai = a.coeffs_[i].code();
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            acc[i + j] = f.add(acc[i + j], f.mul(ai, b.coeffs_[j].code()));
    }
    std::vector<Fq> out;
    out.reserve(acc.size());
    for (auto c : acc) out.emplace_back(f, c);
    return Poly(f, std::move(out));
}

Poly operator*(const Poly& a, const Fq& c) {
    Poly r = a;
    for (auto& x : r.coeffs_) x *= c;
    r.normalize();
    return r;
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;)
        if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(*field_), r};
    const Fq inv_lead = d.leading().inverse();
    std::vector<Fq> q(r.coeffs_.size() - d.coeffs_.size() + 1, field_->zero());
    const std::size_t dd = d.coeffs_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
        const Fq c = r.coeffs_[k + dd] * inv_lead;
        q[k] = c;
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i <= dd; ++i) r.coeffs_[k + i] -= c * d.coeffs_[i];
    }
    r.normalize();
    return {Poly(*field_, std::move(q)), r};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly(*field_);
    std::vector<Fq> d(coeffs_.size() - 1, field_->zero());
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * field_->from_int(static_cast<std::int64_t>(i));
    return Poly(*field_, std::move(d));
}

Poly Poly::pow(std::uint64_t n) const {
    Poly result = constant(field_->one());
    Poly base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Poly Poly::frobenius(unsigned k) const {
    if (is_zero()) return *this;
    std::size_t stride = 1;
    for (unsigned i = 0; i < k; ++i) stride *= field_->characteristic();
    std::vector<Fq> out((coeffs_.size() - 1) * stride + 1, field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * stride] = coeffs_[i].frobenius(k);
    return Poly(*field_, std::move(out));
}

Poly Poly::frobenius_root() const {
    const std::size_t p = field_->characteristic();
    if (is_zero()) return *this;
    std::vector<Fq> out((coeffs_.size() - 1) / p + 1, field_->zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (i % p != 0) throw std::domain_error("polynomial is not a p-th power");
        out[i / p] = coeffs_[i].frobenius_root(1);
    }
    return Poly(*field_, std::move(out));
}

Poly Poly::compose(const Poly& g) const {
    Poly r(g.field());
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * g + constant(drinfeld::embed(coeffs_[i], g.field()));
    return r;
}

Fq Poly::evaluate(const Fq& x) const {
    const GaloisField& to = x.field();
    Fq acc = to.zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + drinfeld::embed(coeffs_[i], to);
    return acc;
}

Poly Poly::embed(const GaloisField& to) const {
    if (&to == field_) return *this;
    std::vector<Fq> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(drinfeld::embed(c, to));
    return Poly(to, std::move(out));
}

std::string Poly::to_string(const std::string& var, const std::string& gen) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Fq& c = coeffs_[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const std::string cs = drinfeld::to_string(c, gen);
        const bool compound = cs.find('+') != std::string::npos;
        if (i == 0) {
            os << cs;
            continue;
        }
        if (!c.is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly pow_mod(const Poly& base, std::uint64_t n, const Poly& m) {
    Poly result = Poly::constant(m.field().one()) % m;
    Poly b = base % m;
    while (n > 0) {
        if (n & 1) result = (result * b) % m;
        n >>= 1;
        if (n) b = (b * b) % m;
    }
    return result;
}

namespace {

void square_free(const Poly& f, int scale, std::vector<PolyFactor>& out) {
    // f monic, nonconstant.
    if (f.degree() <= 0) return;
    const Poly d = f.derivative();
    if (d.is_zero()) {
        square_free(f.frobenius_root(), scale * static_cast<int>(f.field().characteristic()), out);
        return;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (!fac.is_one()) out.push_back({fac.monic(), i * scale});
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one())
        square_free(c.frobenius_root().monic(), scale * static_cast<int>(f.field().characteristic()), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
    std::vector<std::pair<Poly, int>> out;
    const std::uint64_t q = f.field().order();
    const Poly x = Poly::variable(f.field());
    Poly rest = f;
    Poly h = x % rest;
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
        h = pow_mod(h, q, rest);
        Poly g = gcd(rest, h - x);
        if (!g.is_one()) {
            out.emplace_back(g, i);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest.monic(), rest.degree());
    return out;
}

std::vector<Poly> equal_degree(const Poly& f, int d) {
    const int n = f.degree();
    if (n == d) return {f};
    const GaloisField& field = f.field();
    const std::uint64_t q = field.order();
    std::mt19937_64 rng(0x5eed'0000ull + static_cast<std::uint64_t>(n) * 131 + d);
    std::uniform_int_distribution<std::uint32_t> coef(0, field.order() - 1);
    std::vector<Poly> parts{f};
    const std::size_t want = static_cast<std::size_t>(n / d);
    while (parts.size() < want) {
        std::vector<Fq> cs;
        for (int i = 0; i < n; ++i) cs.push_back(field.element(coef(rng)));
        Poly h(field, cs);
        if (h.degree() < 1) continue;
        Poly g(field);
        if (q % 2 == 1) {
            // h^((q^d - 1)/2) = (h^(1 + q + ... + q^(d-1)))^((q-1)/2)
            Poly s = h % f, acc = h % f;
            for (int j = 1; j < d; ++j) {
                s = pow_mod(s, q, f);
                acc = (acc * s) % f;
            }
            g = pow_mod(acc, (q - 1) / 2, f) - Poly::constant(field.one());
        } else {
            // Absolute trace to F_2 of the degree-d extension: h + h^2 + ... + h^(2^(k d - 1)).
            unsigned k = field.degree();
            Poly t = h % f, acc = h % f;
            for (unsigned j = 1; j < k * static_cast<unsigned>(d); ++j) {
                t = (t * t) % f;
                acc += t;
            }
            g = acc;
        }
        std::vector<Poly> next;
        for (auto& u : parts) {
            if (u.degree() == d) {
                next.push_back(u);
                continue;
            }
            Poly c = gcd(u, g);
            if (c.degree() > 0 && c.degree() < u.degree()) {
                next.push_back(c);
                next.push_back((u / c).monic());
            } else {
                next.push_back(u);
            }
        }
        parts = std::move(next);
    }
    return parts;
}

}  // namespace

Factorization factor(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    Factorization out{f.leading(), {}};
    if (f.degree() == 0) return out;
    std::vector<PolyFactor> sqf;
    square_free(f.monic(), 1, sqf);
    for (const auto& [g, mult] : sqf)
        for (const auto& [h, d] : distinct_degree(g))
            for (auto& irr : equal_degree(h, d)) out.factors.push_back({irr.monic(), mult});
    std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor != b.factor) return a.factor < b.factor;
        return a.multiplicity < b.multiplicity;
    });
    // Merge repeated irreducibles (possible when square-free parts share factors after p-th roots).
    std::vector<PolyFactor> merged;
    for (auto& pf : out.factors) {
        if (!merged.empty() && merged.back().factor == pf.factor)
            merged.back().multiplicity += pf.multiplicity;
        else
            merged.push_back(pf);
    }
    out.factors = std::move(merged);
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    auto fz = factor(f);
    return fz.factors.size() == 1 && fz.factors[0].multiplicity == 1;
}

int multiplicity(const Poly& f, const Poly& pi) {
    if (f.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
    int k = 0;
    Poly g = f;
    while (true) {
        auto [q, r] = g.divmod(pi);
        if (!r.is_zero()) return k;
        g = std::move(q);
        ++k;
    }
}

std::vector<Fq> roots(const Poly& f, const GaloisField& in) {
    std::vector<Fq> out;
    for (const auto& x : in.elements())
        if (f.evaluate(x).is_zero()) out.push_back(x);
    return out;
}

Poly minimal_polynomial(const Fq& x, const GaloisField& base) {
    const GaloisField& big = x.field();
    const unsigned step = base.degree();
    std::vector<Fq> conj{x};
    Fq y = x.frobenius(step);
    while (y != x) {
        conj.push_back(y);
        y = y.frobenius(step);
    }
    Poly m = Poly::constant(big.one());
    for (const auto& c : conj) m = m * Poly(big, {-c, big.one()});
    return restrict_coefficients(m, base);
}

Poly restrict_coefficients(const Poly& f, const GaloisField& base) {
    if (&f.field() == &base) return f;
    const auto& emb = FieldEmbedding::get(base, f.field());
    std::vector<Fq> out;
    for (const auto& c : f.coefficients()) {
        auto pre = emb.preimage(c);
        if (!pre) throw std::domain_error("coefficient " + to_string(c) + " not in " + base.name());
        out.push_back(*pre);
    }
    return Poly(base, std::move(out));
}

}  // namespace drinfeld
