#ifndef DGWB_TEST_FIXTURES_HPP
#define DGWB_TEST_FIXTURES_HPP

#include "dgwb/cohomology.hpp"
#include "dgwb/dg.hpp"

namespace dgwb::fixtures {

/// Q[x] with e:-1, de = x.
inline DgAlgebra koszul_x() {
    BaseRing R = BaseRing::make({"x"}, {});
    DgAlgebra plain = DgAlgebra::make(R, {});
    Generator e{"e", -1, element_zero(0)};
    DgAlgebra shell = DgAlgebra::make(R, {e});
    Generator e2{"e", -1, parse_element(shell, "x")};
    return DgAlgebra::make(R, {e2});
}

/// Q[x] with e1, e2:-1, de1 = de2 = x.
inline DgAlgebra twin_koszul() {
    BaseRing R = BaseRing::make({"x"}, {});
    DgAlgebra shell = DgAlgebra::make(R, {Generator{"e1", -1, element_zero(0)},
                                          Generator{"e2", -1, element_zero(0)}});
    Element x = parse_element(shell, "x");
    return DgAlgebra::make(R, {Generator{"e1", -1, x}, Generator{"e2", -1, x}});
}

/// Plain polynomial algebra with no generators.
inline DgAlgebra plain(std::vector<std::string> vars) {
    return DgAlgebra::make(BaseRing::make(std::move(vars), {}), {});
}

inline DgAlgebra zero_algebra() {
    BaseRing R = BaseRing::make({"x"}, {Polynomial::constant(std::make_shared<const VarNames>(VarNames{"x"}), 1)});
    return DgAlgebra::make(R, {});
}

}  // namespace dgwb::fixtures

#endif
