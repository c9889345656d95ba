#ifndef DGWB_MODGB_HPP
#define DGWB_MODGB_HPP

#include <vector>

#include "dgwb/groebner.hpp"
#include "dgwb/ring.hpp"

namespace dgwb {

/// Column vector in a free module R^rank; entry i is the coefficient of e_i.
using Column = std::vector<Polynomial>;

bool column_is_zero(const Column& c);

/// Module Gröbner basis under position-over-term (lower position dominates),
/// ties within a position broken by the monomial order.
struct ModuleGB {
    MonomialOrder order;
    std::size_t rank = 0;
    std::vector<Column> basis;  // reduced, monic leads, sorted
};

ModuleGB module_groebner(const std::vector<Column>& gens, std::size_t rank,
                         const MonomialOrder& order);

Column module_nf(const Column& v, const ModuleGB& gb);

/// Generators of {a ∈ R^n : Σ a_i·cols_i ≡ 0 in R^rank} over R = P/J, via a
/// tag-block elimination order. Includes the base-relation multiples of unit
/// vectors when J is nonzero.
std::vector<Column> syzygies(const std::vector<Column>& cols, std::size_t rank,
                             const BaseRing& ring);

struct Membership {
    bool member = false;
    Column residual;                    // zero iff member
    std::vector<Polynomial> cofactors;  // target ≡ Σ cofactors_i·gens_i (mod base)
};

/// Division of target by the submodule generated by gens, with an exact
/// certificate re-verified before returning.
Membership module_membership(const Column& target, const std::vector<Column>& gens,
                             std::size_t rank, const BaseRing& ring);

/// Finitely presented module over a base ring. Relations are kept canonical:
/// the reduced module Gröbner basis of (input relations + base relations on
/// each generator), monic and sorted. The zero module is rank 0 with no
/// relations.
struct ModulePresentation {
    BaseRing base;
    std::size_t rank = 0;
    std::vector<Column> relations;
};

ModulePresentation make_presentation(const BaseRing& base, std::size_t rank,
                                     std::vector<Column> relations);

/// Presents span(ker_gens)/span(im_gens) inside R^ambient_rank. Generators are
/// the ker_gens; relations are their syzygies plus the expressions of the
/// im_gens in them. im ⊄ ker raises invariant_violation.
ModulePresentation module_subquotient(const std::vector<Column>& ker_gens,
                                      const std::vector<Column>& im_gens,
                                      std::size_t ambient_rank, const BaseRing& ring);

bool presentation_is_zero(const ModulePresentation& p);
bool presentation_is_free(const ModulePresentation& p);

/// dim over ℚ of the fiber at a rational point of the base.
std::size_t presentation_fiber_rank(const ModulePresentation& p, const QVector& point);

}  // namespace dgwb

#endif
