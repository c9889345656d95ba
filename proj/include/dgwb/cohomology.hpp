#ifndef DGWB_COHOMOLOGY_HPP
#define DGWB_COHOMOLOGY_HPP

#include <optional>

#include "dgwb/dg.hpp"

namespace dgwb {

/// H^k of a dg algebra: a quotient-ring presentation for k = 0, a module
/// presentation (ker δ / im δ via syzygies) for k < 0.
struct Cohomology {
    int degree = 0;
    std::optional<BaseRing> ring;              // k == 0
    std::optional<ModulePresentation> module;  // k < 0
};

Cohomology cohomology(const DgAlgebra& A, int k);

/// The quotient ring A^0/(J + δ(A^{-1})) with its reduced basis.
BaseRing h0_ring(const DgAlgebra& A);

/// Assignment of rationals to the base variables; base relations must vanish.
struct RationalPoint {
    QVector values;
};

void check_point(const DgAlgebra& A, const RationalPoint& p);

/// Finite-dimensional specialization at a rational point: graded dimensions
/// and cohomology ranks by exact linear algebra. Independent of the Gröbner
/// route by construction.
struct FiberSummary {
    int depth = 0;                 // degrees 0..-depth
    std::vector<std::size_t> dim;  // dim[k] = dim A^{-k} ⊗ ℚ_p
    std::vector<std::size_t> h_rank;
};

FiberSummary fiber(const DgAlgebra& A, const RationalPoint& p, int depth);

}  // namespace dgwb

#endif
