#ifndef DGWB_POLY_HPP
#define DGWB_POLY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgwb/numeric.hpp"

namespace dgwb {

/// Exponent vector; length equals the registry arity.
using Monomial = std::vector<std::uint32_t>;

using VarNames = std::vector<std::string>;
using VarNamesPtr = std::shared_ptr<const VarNames>;

std::int64_t mono_degree(const Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, exact
Monomial mono_lcm(const Monomial& a, const Monomial& b);
Monomial mono_gcd(const Monomial& a, const Monomial& b);

struct MonomialOrder {
    enum class Kind { Degrevlex, Lex, Deglex };
    Kind kind = Kind::Degrevlex;
    /// Permutation of variable indices by descending priority; empty means
    /// declaration order.
    std::vector<std::uint32_t> perm;

    /// +1 if a > b, 0 if equal, -1 if a < b.
    int cmp(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    static MonomialOrder degrevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::Lex, {}}; }
    static MonomialOrder deglex() { return {Kind::Deglex, {}}; }
    static std::optional<MonomialOrder> from_name(const std::string& name);
};

/// Sparse polynomial over ℚ tied to a variable registry.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(VarNamesPtr reg) : reg_(std::move(reg)) {}
    Polynomial(VarNamesPtr reg, const Rational& c);

    static Polynomial variable(VarNamesPtr reg, std::size_t index);
    static Polynomial constant(VarNamesPtr reg, const Rational& c);

    const VarNamesPtr& registry() const { return reg_; }
    std::size_t arity() const { return reg_ ? reg_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    /// Max total degree; -1 for the zero polynomial.
    std::int64_t total_degree() const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Rational coefficient(const Monomial& m) const;
    Rational eval(const QVector& point) const;
    Polynomial derivative(std::size_t var) const;

    /// Substitution: images[i] replaces variable i (all in one target registry).
    Polynomial substitute(const std::vector<Polynomial>& images, VarNamesPtr target) const;

    /// Re-express over a larger registry; var_map[i] is the new index of old
    /// variable i.
    Polynomial relabel(VarNamesPtr target, const std::vector<std::size_t>& var_map) const;

    /// Rational content (gcd of numerators / lcm of denominators), 0 for zero.
    Rational content() const;

    /// Leading term under the given order; throws on zero.
    std::pair<Monomial, Rational> leading(const MonomialOrder& order) const;

    std::string str() const;

private:
    void check_same(const Polynomial& o) const;
    VarNamesPtr reg_;
    std::map<Monomial, Rational> terms_;  // keyed structurally; no zero coefficients
};

bool same_registry(const VarNamesPtr& a, const VarNamesPtr& b);

/// Canonical text form used by every file format (degrevlex-descending terms).
std::string poly_str(const Polynomial& p);

/// Parses the polynomial grammar: integers, rationals a/b, names, + - * ^,
/// parentheses. Unknown names raise parse_error.
Polynomial parse_polynomial(const std::string& text, const VarNamesPtr& reg);

}  // namespace dgwb

#endif
