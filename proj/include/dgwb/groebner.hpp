#ifndef DGWB_GROEBNER_HPP
#define DGWB_GROEBNER_HPP

#include <optional>
#include <vector>

#include "dgwb/ring.hpp"

namespace dgwb {

/// Reduced Gröbner basis with expressions of every basis element in the input
/// generators (basis[i] = Σ_j expr[i][j]·input[j], exactly).
struct GroebnerResult {
    MonomialOrder order;
    std::vector<Polynomial> basis;
    std::vector<std::vector<Polynomial>> expr;
};

/// Buchberger with the product and chain criteria, content removal during
/// reduction, deterministic pair selection, full interreduction.
GroebnerResult groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

/// Normal form with division certificate: f = nf + Σ q_i·basis[i].
Polynomial normal_form_ext(const Polynomial& f, const GroebnerResult& gb,
                           std::vector<Polynomial>& cofactors_on_inputs);

/// Certificate that the given elements generate the unit ideal modulo the
/// ring's relations: Some(g) with Σ g_i·f_i ≡ 1, or None when 1 is not in the
/// ideal. The identity is re-verified exactly before returning.
std::optional<std::vector<Polynomial>> unit_ideal_certificate(const std::vector<Polynomial>& gens,
                                                              const BaseRing& ring);

}  // namespace dgwb

#endif
