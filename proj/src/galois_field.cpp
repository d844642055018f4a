#include "drinfeld/galois_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace drinfeld {
namespace {

using Digits = std::vector<std::uint32_t>;

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Digits mod_monic(Digits a, const Digits& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        trim(a);
    }
    return a;
}

Digits mul_mod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Digits c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return mod_monic(std::move(c), modulus, p);
}

Digits decode(std::uint64_t code, std::uint32_t p, std::size_t len) {
    Digits d(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return d;
}

bool irreducible(const Digits& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return true;
    // Trial division by every monic polynomial of degree <= n/2.
    for (std::size_t d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Digits g = decode(c, p, d);
            g.push_back(1);
            if (mod_monic(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

GaloisField::GaloisField(std::uint32_t p, unsigned degree) : p_(p), degree_(degree) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (degree == 0) throw std::invalid_argument("field degree must be positive");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < degree; ++i) order *= p;
    if (order > (1u << 20)) throw std::invalid_argument("finite field too large: " + std::to_string(order));
    order_ = static_cast<std::uint32_t>(order);

    std::uint64_t tail = order;  // p^degree choices for the non-leading coefficients
    for (std::uint64_t c = 0; c < tail; ++c) {
        Digits f = decode(c, p, degree);
        f.push_back(1);
        if (irreducible(f, p)) {
            modulus_ = f;
            break;
        }
    }

    neg_.resize(order_);
    plus_one_.resize(order_);
    for (std::uint32_t a = 0; a < order_; ++a) {
        Digits d = digits(a);
        Digits n(d.size()), s = d;
        for (std::size_t i = 0; i < d.size(); ++i) n[i] = (p - d[i]) % p;
        s[0] = (s[0] + 1) % p;
        neg_[a] = from_digits(n);
        plus_one_[a] = from_digits(s);
    }

    // Find a primitive element by walking powers with schoolbook multiplication.
    log_.assign(order_, 0);
    exp_.assign(2 * static_cast<std::size_t>(order_), 0);
    if (order_ == 2) {
        exp_[0] = exp_[1] = 1;
        primitive_ = 1;
        return;
    }
    for (std::uint32_t g = 2; g < order_; ++g) {
        const Digits gd = digits(g);
        std::vector<std::uint32_t> powers;
        powers.reserve(order_ - 1);
        Digits cur{1};
        bool ok = true;
        for (std::uint32_t k = 0; k < order_ - 1; ++k) {
            Digits padded = cur;
            padded.resize(degree_, 0);
            const std::uint32_t code = from_digits(padded);
            if (k > 0 && code == 1) { ok = false; break; }
            powers.push_back(code);
            cur = mul_mod(cur, gd, modulus_, p_);
        }
        if (!ok) continue;
        for (std::uint32_t k = 0; k < order_ - 1; ++k) {
            exp_[k] = exp_[k + order_ - 1] = powers[k];
            log_[powers[k]] = k;
        }
        primitive_ = g;
        break;
    }
}

const GaloisField& GaloisField::get(std::uint32_t p, unsigned degree) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<GaloisField>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{p, degree}];
    if (!slot) slot.reset(new GaloisField(p, degree));
    return *slot;
}

Fq GaloisField::zero() const { return {*this, 0}; }
Fq GaloisField::one() const { return {*this, 1}; }

Fq GaloisField::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {*this, static_cast<std::uint32_t>(r)};
}

Fq GaloisField::generator() const {
    if (degree_ == 1) return primitive();
    return {*this, p_};
}

Fq GaloisField::primitive() const { return {*this, primitive_}; }

Fq GaloisField::element(std::uint32_t code) const {
    if (code >= order_) throw std::out_of_range("field element code out of range");
    return {*this, code};
}

std::vector<Fq> GaloisField::elements() const {
    std::vector<Fq> out;
    out.reserve(order_);
    for (std::uint32_t c = 0; c < order_; ++c) out.emplace_back(*this, c);
    return out;
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    // Zech logarithm: a + b = a * (1 + b/a).
    return mul(a, plus_one_[mul(b, inv(a))]);
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in " + name());
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

std::uint32_t GaloisField::pow(std::uint32_t a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * (n % (order_ - 1))) % (order_ - 1);
    return exp_[e];
}

std::vector<std::uint32_t> GaloisField::digits(std::uint32_t a) const {
    return decode(a, p_, degree_);
}

std::uint32_t GaloisField::from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i] % p_;
    return static_cast<std::uint32_t>(code);
}

std::string GaloisField::name() const {
    return "F_" + std::to_string(order_);
}

Fq Fq::frobenius(unsigned k) const {
    const unsigned n = field_->degree();
    k %= n;
    std::uint64_t e = 1;
    for (unsigned i = 0; i < k; ++i) e *= field_->characteristic();
    return pow(e);
}

Fq Fq::frobenius_root(unsigned k) const {
    const unsigned n = field_->degree();
    return frobenius((n - k % n) % n);
}

std::string to_string(const Fq& x, const std::string& generator_name) {
    const GaloisField& f = x.field();
    if (f.degree() == 1) return std::to_string(x.code());
    auto d = f.digits(x.code());
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << d[i];
            continue;
        }
        if (d[i] != 1) os << d[i] << "*";
        os << generator_name;
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << to_string(x); }

FieldEmbedding::FieldEmbedding(const GaloisField& from, const GaloisField& to) : from_(&from), to_(&to) {
    if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
        throw std::invalid_argument(from.name() + " does not embed into " + to.name());
    // Image of the polynomial-basis generator of `from`.
    std::uint32_t root = 0;
    if (from.degree() > 1) {
        bool found = false;
        for (std::uint32_t c = 0; c < to.order() && !found; ++c) {
            // Evaluate the modulus of `from` at c.
            std::uint32_t acc = 0;
            const auto& m = from.modulus();
            for (std::size_t i = m.size(); i-- > 0;) acc = to.add(to.mul(acc, c), m[i]);
            if (acc == 0) {
                root = c;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no root of modulus found for embedding");
    }
    forward_.resize(from.order());
    backward_.assign(to.order(), -1);
    for (std::uint32_t a = 0; a < from.order(); ++a) {
        std::uint32_t img = 0;
        if (from.degree() == 1) {
            img = a;
        } else {
            auto d = from.digits(a);
            for (std::size_t i = d.size(); i-- > 0;) img = to.add(to.mul(img, root), d[i]);
        }
        forward_[a] = img;
        backward_[img] = a;
    }
}

const FieldEmbedding& FieldEmbedding::get(const GaloisField& from, const GaloisField& to) {
    static std::mutex mutex;
    static std::map<std::pair<const GaloisField*, const GaloisField*>, std::unique_ptr<FieldEmbedding>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{&from, &to}];
    if (!slot) slot.reset(new FieldEmbedding(from, to));
    return *slot;
}

Fq FieldEmbedding::operator()(const Fq& x) const {
    return {*to_, forward_[x.code()]};
}

std::optional<Fq> FieldEmbedding::preimage(const Fq& x) const {
    const std::int64_t b = backward_[x.code()];
    if (b < 0) return std::nullopt;
    return Fq(*from_, static_cast<std::uint32_t>(b));
}

Fq embed(const Fq& x, const GaloisField& to) {
    if (&x.field() == &to) return x;
    return FieldEmbedding::get(x.field(), to)(x);
}

}  // namespace drinfeld
