#include "dgwb/poly.hpp"

#include <algorithm>
#include <sstream>

#include "dgwb/expr_parser.hpp"

namespace dgwb {

std::int64_t mono_degree(const Monomial& m) {
    std::int64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r(b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= a[i];
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
    auto at = [&](const Monomial& m, std::size_t i) -> std::uint32_t {
        return perm.empty() ? m[i] : m[perm[i]];
    };
    std::size_t n = a.size();
    if (kind != Kind::Lex) {
        std::int64_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db ? 1 : -1;
    }
    if (kind == Kind::Degrevlex) {
        for (std::size_t i = n; i-- > 0;) {
            std::uint32_t ea = at(a, i), eb = at(b, i);
            if (ea != eb) return ea < eb ? 1 : -1;
        }
        return 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t ea = at(a, i), eb = at(b, i);
        if (ea != eb) return ea > eb ? 1 : -1;
    }
    return 0;
}

std::optional<MonomialOrder> MonomialOrder::from_name(const std::string& name) {
    if (name == "degrevlex") return degrevlex();
    if (name == "lex") return lex();
    if (name == "deglex") return deglex();
    return std::nullopt;
}

Polynomial::Polynomial(VarNamesPtr reg, const Rational& c) : reg_(std::move(reg)) {
    if (c != 0) terms_[Monomial(arity(), 0)] = c;
}

Polynomial Polynomial::variable(VarNamesPtr reg, std::size_t index) {
    Polynomial p(reg);
    Monomial m(p.arity(), 0);
    m[index] = 1;
    p.terms_[m] = 1;
    return p;
}

Polynomial Polynomial::constant(VarNamesPtr reg, const Rational& c) { return Polynomial(std::move(reg), c); }

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0 && terms_.begin()->second == 1;
}

std::int64_t Polynomial::total_degree() const {
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::check_same(const Polynomial& o) const {
    if (!same_registry(reg_, o.reg_))
        throw context_error("polynomials from different variable registries");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(reg_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_same(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same(o);
    Polynomial r(reg_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(reg_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::eval(const QVector& point) const {
    if (point.size() != arity()) throw context_error("point arity mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t k = 0; k < m[i]; ++k) v *= point[i];
        total += v;
    }
    return total;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(reg_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d(m);
        d[var] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(m[var])));
    }
    return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, VarNamesPtr target) const {
    if (images.size() != arity()) throw context_error("substitution arity mismatch");
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t k = 0; k < m[i]; ++k) term = term * images[i];
        r = r + term;
    }
    return r;
}

Polynomial Polynomial::relabel(VarNamesPtr target, const std::vector<std::size_t>& var_map) const {
    Polynomial r(target);
    std::size_t n = target->size();
    for (const auto& [m, c] : terms_) {
        Monomial nm(n, 0);
        for (std::size_t i = 0; i < m.size(); ++i) nm[var_map[i]] = m[i];
        r.terms_[nm] = c;
    }
    return r;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return 0;
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
}

std::pair<Monomial, Rational> Polynomial::leading(const MonomialOrder& order) const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (order.greater(it->first, best->first)) best = it;
    return {best->first, best->second};
}

std::string Polynomial::str() const { return poly_str(*this); }

namespace {

struct PolyOps {
    using Value = Polynomial;
    VarNamesPtr reg;
    Value from_rational(const Rational& q) const { return Polynomial::constant(reg, q); }
    Value lookup(const std::string& name, int line, int col) const {
        for (std::size_t i = 0; i < reg->size(); ++i)
            if ((*reg)[i] == name) return Polynomial::variable(reg, i);
        throw parse_error("unknown symbol " + name, line, col);
    }
    Value add(Value a, Value b) const { return a + b; }
    Value sub(Value a, Value b) const { return a - b; }
    Value neg(Value a) const { return -a; }
    Value mul(Value a, Value b) const { return a * b; }
    Value pow(Value a, unsigned e, int, int) const {
        Polynomial r = Polynomial::constant(reg, 1);
        for (unsigned i = 0; i < e; ++i) r = r * a;
        return r;
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VarNamesPtr& reg) {
    ExprParser<PolyOps> p(text, PolyOps{reg});
    return p.parse();
}

bool same_registry(const VarNamesPtr& a, const VarNamesPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

std::string poly_str(const Polynomial& p) {
    if (p.is_zero()) return "0";
    // canonical emission order: degrevlex over declaration order, descending
    MonomialOrder order = MonomialOrder::degrevlex();
    std::vector<const std::pair<const Monomial, Rational>*> terms;
    for (const auto& t : p.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(),
              [&](auto* a, auto* b) { return order.greater(a->first, b->first); });
    std::ostringstream out;
    bool first = true;
    for (auto* t : terms) {
        Rational c = t->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? "-" : "+");
        }
        first = false;
        Rational a = neg ? Rational(-c) : c;
        std::string vars;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            if (t->first[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += (*p.registry())[i];
            if (t->first[i] > 1) vars += "^" + std::to_string(t->first[i]);
        }
        if (vars.empty()) {
            out << rational_str(a);
        } else {
            if (a != 1) out << rational_str(a) << "*";
            out << vars;
        }
    }
    return out.str();
}

}  // namespace dgwb
