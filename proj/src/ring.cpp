#include "dgwb/ring.hpp"

#include "dgwb/groebner.hpp"

namespace dgwb {

BaseRing BaseRing::make(VarNames vars, std::vector<Polynomial> relations, MonomialOrder order) {
    auto data = std::make_shared<Data>();
    data->vars = std::make_shared<const VarNames>(std::move(vars));
    for (auto& r : relations)
        if (!same_registry(r.registry(), data->vars))
            throw context_error("relation not over the ring's variables");
    data->relations = std::move(relations);
    data->order = order;
    data->gb = groebner_basis(data->relations, order).basis;
    BaseRing ring;
    ring.d_ = std::move(data);
    return ring;
}

BaseRing BaseRing::rationals() { return make({}, {}); }

Polynomial BaseRing::nf(const Polynomial& p) const {
    if (!same_registry(p.registry(), vars())) throw context_error("polynomial not over this ring");
    return normal_form(p, d_->gb, d_->order);
}

bool BaseRing::is_zero_ring() const {
    return d_->gb.size() == 1 && d_->gb[0].is_one();
}

std::optional<std::size_t> BaseRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars()->size(); ++i)
        if ((*vars())[i] == name) return i;
    return std::nullopt;
}

bool BaseRing::structurally_equal(const BaseRing& o) const {
    if (!same_registry(vars(), o.vars())) return false;
    if (relations().size() != o.relations().size()) return false;
    for (std::size_t i = 0; i < relations().size(); ++i)
        if (relations()[i] != o.relations()[i]) return false;
    return true;
}

}  // namespace dgwb
