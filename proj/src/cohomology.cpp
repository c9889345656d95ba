#include "dgwb/cohomology.hpp"

namespace dgwb {

BaseRing h0_ring(const DgAlgebra& A) {
    std::vector<Polynomial> relations = A.base().relations();
    for (const auto& w : graded_basis(A, -1)) {
        Element e;
        e.degree = -1;
        e.terms[w] = A.base().constant(1);
        Element de = differential(A, e);
        auto it = de.terms.find(GenWord{});
        if (it != de.terms.end() && !it->second.is_zero()) relations.push_back(it->second);
    }
    return BaseRing::make(*A.base().vars(), std::move(relations), A.base().order());
}

Cohomology cohomology(const DgAlgebra& A, int k) {
    if (k > 0) throw context_error("cohomology lives in non-positive degrees");
    Cohomology H;
    H.degree = k;
    if (k == 0) {
        H.ring = h0_ring(A);
        return H;
    }
    auto d_k = differential_matrix(A, k);
    std::size_t rows_k = graded_basis(A, k + 1).size();
    std::vector<Column> ker = syzygies(d_k, rows_k, A.base());
    std::vector<Column> im = differential_matrix(A, k - 1);
    H.module = module_subquotient(ker, im, d_k.size(), A.base());
    return H;
}

void check_point(const DgAlgebra& A, const RationalPoint& p) {
    if (p.values.size() != A.base().arity())
        throw context_error("point does not assign every base variable");
    for (const auto& r : A.base().relations())
        if (r.eval(p.values) != 0)
            throw invariant_violation("point violates base relation " + poly_str(r));
}

FiberSummary fiber(const DgAlgebra& A, const RationalPoint& p, int depth) {
    check_point(A, p);
    FiberSummary out;
    out.depth = depth;
    // numeric differential matrices for degrees -1 .. -depth-1
    std::vector<QMatrix> d(depth + 2);  // d[j]: A^{-j} -> A^{-j+1} for j >= 1
    std::vector<std::size_t> dims(depth + 2, 0);
    dims[0] = 1;
    for (int j = 1; j <= depth + 1; ++j) {
        auto basis_j = graded_basis(A, -j);
        dims[j] = basis_j.size();
        auto cols = differential_matrix(A, -j);
        std::size_t rows = graded_basis(A, -j + 1).size();
        QMatrix m(rows, QVector(cols.size(), Rational(0)));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < rows; ++r) m[r][c] = cols[c][r].eval(p.values);
        d[j] = std::move(m);
    }
    for (int j = 0; j <= depth; ++j) {
        std::size_t rank_in = (j + 1 <= depth + 1) ? rank(d[j + 1]) : 0;  // δ: A^{-j-1} -> A^{-j}
        std::size_t rank_out = (j >= 1) ? rank(d[j]) : 0;                 // δ: A^{-j} -> A^{-j+1}
        out.dim.push_back(dims[j]);
        out.h_rank.push_back(dims[j] - rank_out - rank_in);
    }
    return out;
}

}  // namespace dgwb
