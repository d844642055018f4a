#include "drinfeld/multipoly.hpp"

#include "drinfeld/expression.hpp"

#include <sstream>
#include <stdexcept>

namespace drinfeld {

MultiPoly MultiPoly::constant(const RationalFunction& c, std::size_t nvars) {
    MultiPoly out(c.field(), nvars);
    out.add_term(Exponents(nvars, 0), c);
    return out;
}

MultiPoly MultiPoly::variable(const GaloisField& k, std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index");
    MultiPoly out(k, nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    out.add_term(e, RationalFunction::constant(k.one()));
    return out;
}

void MultiPoly::add_term(const Exponents& e, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::optional<RationalFunction> MultiPoly::as_constant() const {
    if (terms_.empty()) return RationalFunction(*k_);
    if (terms_.size() != 1) return std::nullopt;
    const auto& [e, c] = *terms_.begin();
    for (auto x : e)
        if (x) return std::nullopt;
    return c;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(*k_, nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    MultiPoly out(*a.k_, a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(a.nvars_);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

MultiPoly operator/(const MultiPoly& a, const MultiPoly& b) {
    const auto c = b.as_constant();
    if (!c || c->is_zero()) throw std::invalid_argument("division by a non-constant or zero polynomial");
    return a * MultiPoly::constant(c->inverse(), a.nvars_);
}

MultiPoly MultiPoly::pow(std::int64_t n) const {
    if (n < 0) {
        const auto c = as_constant();
        if (!c || c->is_zero()) throw std::invalid_argument("negative power of a non-constant polynomial");
        return constant(c->pow(n), nvars_);
    }
    MultiPoly result = constant(RationalFunction::constant(k_->one()), nvars_);
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

RationalFunction MultiPoly::evaluate(const std::vector<RationalFunction>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
    RationalFunction acc(*k_);
    for (const auto& [e, c] : terms_) {
        RationalFunction term = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i]) term = term * point[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool has_var = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (has_var) mono << "*";
            has_var = true;
            mono << "X" << i + 1;
            if (e[i] > 1) mono << "^" << e[i];
        }
        if (!has_var) {
            os << c.to_string(var);
        } else if (c.is_one()) {
            os << mono.str();
        } else {
            os << "(" << c.to_string(var) << ")*" << mono.str();
        }
    }
    return os.str();
}

MultiPoly parse_multipoly(std::string_view text, const GaloisField& k, std::size_t nvars, const std::string& var) {
    const Expr expr = parse_expression(text);
    auto leaf = [&](const Expr& e) -> MultiPoly {
        if (e.kind == Expr::Kind::Number)
            return MultiPoly::constant(RationalFunction::constant(k.from_int(e.number)), nvars);
        if (e.symbol == var) return MultiPoly::constant(RationalFunction::variable(k), nvars);
        if (e.symbol == "w") {
            if (k.degree() == 1) throw ParseError("generator w used over the prime field " + k.name());
            return MultiPoly::constant(RationalFunction::constant(k.generator()), nvars);
        }
        if (e.symbol.size() > 1 && e.symbol[0] == 'X') {
            std::size_t idx = 0;
            try {
                idx = std::stoul(e.symbol.substr(1));
            } catch (const std::exception&) {
                throw ParseError("unknown symbol '" + e.symbol + "'");
            }
            if (idx < 1 || idx > nvars)
                throw ParseError("variable " + e.symbol + " out of range 1.." + std::to_string(nvars));
            return MultiPoly::variable(k, nvars, idx - 1);
        }
        throw ParseError("unknown symbol '" + e.symbol + "'");
    };
    auto power = [](const MultiPoly& b, std::int64_t n) { return b.pow(n); };
    try {
        return fold<MultiPoly>(expr, leaf, power);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

}  // namespace drinfeld
