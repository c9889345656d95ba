#ifndef DGWB_RING_HPP
#define DGWB_RING_HPP

#include <memory>
#include <vector>

#include "dgwb/poly.hpp"

namespace dgwb {

/// Finitely presented degree-0 coefficient ring ℚ[vars]/(relations). The
/// reduced Gröbner basis of the defining ideal is computed once at
/// construction and shared; rings are immutable values.
class BaseRing {
public:
    BaseRing() = default;

    static BaseRing make(VarNames vars, std::vector<Polynomial> relations,
                         MonomialOrder order = MonomialOrder::degrevlex());
    static BaseRing rationals();  // ℚ = empty presentation

    const VarNamesPtr& vars() const { return d_->vars; }
    std::size_t arity() const { return d_->vars->size(); }
    const std::vector<Polynomial>& relations() const { return d_->relations; }
    const std::vector<Polynomial>& basis() const { return d_->gb; }
    const MonomialOrder& order() const { return d_->order; }

    /// Normal form modulo the cached basis.
    Polynomial nf(const Polynomial& p) const;

    /// 1 lies in the defining ideal.
    bool is_zero_ring() const;

    Polynomial parse(const std::string& text) const { return parse_polynomial(text, vars()); }
    Polynomial var(std::size_t i) const { return Polynomial::variable(vars(), i); }
    Polynomial constant(const Rational& c) const { return Polynomial::constant(vars(), c); }
    std::optional<std::size_t> var_index(const std::string& name) const;

    bool structurally_equal(const BaseRing& o) const;

private:
    struct Data {
        VarNamesPtr vars;
        std::vector<Polynomial> relations;
        MonomialOrder order;
        std::vector<Polynomial> gb;
    };
    std::shared_ptr<const Data> d_;
};

}  // namespace dgwb

#endif
