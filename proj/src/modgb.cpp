#include "dgwb/modgb.hpp"

#include <algorithm>

namespace dgwb {

namespace {

struct MTerm {
    std::uint32_t pos;
    Monomial mono;
    Rational coeff;
};

// +1 if a's (pos, mono) is greater: lower position wins, then the order.
int cmp_mterm(std::uint32_t apos, const Monomial& am, std::uint32_t bpos, const Monomial& bm,
              const MonomialOrder& order) {
    if (apos != bpos) return apos < bpos ? 1 : -1;
    return order.cmp(am, bm);
}

struct MVec {
    std::vector<MTerm> terms;  // descending
    bool empty() const { return terms.empty(); }
    const MTerm& lead() const { return terms.front(); }
};

MVec from_column(const Column& c, const MonomialOrder& order) {
    MVec v;
    for (std::uint32_t p = 0; p < c.size(); ++p)
        for (const auto& [m, k] : c[p].terms()) v.terms.push_back({p, m, k});
    std::sort(v.terms.begin(), v.terms.end(), [&](const MTerm& a, const MTerm& b) {
        return cmp_mterm(a.pos, a.mono, b.pos, b.mono, order) > 0;
    });
    return v;
}

Column to_column(const MVec& v, std::size_t rank, const VarNamesPtr& reg) {
    Column c(rank, Polynomial(reg));
    for (const auto& t : v.terms) c[t.pos].add_term(t.mono, t.coeff);
    return c;
}

// dst -= c * m * src
std::vector<MTerm> subtract_multiple(const std::vector<MTerm>& dst, const Rational& c,
                                     const Monomial& m, const std::vector<MTerm>& src,
                                     const MonomialOrder& order) {
    std::vector<MTerm> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size()) {
            out.push_back(dst[i++]);
            continue;
        }
        Monomial sm = mono_mul(src[j].mono, m);
        if (i == dst.size()) {
            out.push_back({src[j].pos, sm, -c * src[j].coeff});
            ++j;
            continue;
        }
        int k = cmp_mterm(dst[i].pos, dst[i].mono, src[j].pos, sm, order);
        if (k > 0) {
            out.push_back(dst[i++]);
        } else if (k < 0) {
            out.push_back({src[j].pos, sm, -c * src[j].coeff});
            ++j;
        } else {
            Rational v = dst[i].coeff - c * src[j].coeff;
            if (v != 0) out.push_back({dst[i].pos, dst[i].mono, v});
            ++i;
            ++j;
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const MTerm& t) { return t.coeff == 0; }),
              out.end());
    return out;
}

void make_monic(MVec& v) {
    if (v.empty()) return;
    Rational lc = v.lead().coeff;
    if (lc == 1) return;
    for (auto& t : v.terms) t.coeff /= lc;
}

MVec reduce(MVec f, const std::vector<MVec>& g, const MonomialOrder& order) {
    std::vector<MTerm> remainder;
    while (!f.empty()) {
        bool divided = false;
        for (const auto& gi : g) {
            if (gi.empty()) continue;
            if (gi.lead().pos != f.lead().pos) continue;
            if (!mono_divides(gi.lead().mono, f.lead().mono)) continue;
            Monomial q = mono_div(f.lead().mono, gi.lead().mono);
            Rational c = f.lead().coeff / gi.lead().coeff;
            f.terms = subtract_multiple(f.terms, c, q, gi.terms, order);
            divided = true;
            break;
        }
        if (!divided) {
            remainder.push_back(f.lead());
            f.terms.erase(f.terms.begin());
        }
    }
    f.terms = std::move(remainder);
    return f;
}

struct MPair {
    std::size_t i, j;
    Monomial lcm;
};

std::vector<MVec> buchberger(std::vector<MVec> input, const MonomialOrder& order) {
    std::vector<MVec> basis;
    std::vector<MPair> pairs;
    auto add_elem = [&](MVec w) {
        w = reduce(std::move(w), basis, order);
        if (w.empty()) return;
        make_monic(w);
        std::size_t idx = basis.size();
        for (std::size_t k = 0; k < idx; ++k) {
            if (basis[k].lead().pos != w.lead().pos) continue;
            pairs.push_back({k, idx, mono_lcm(basis[k].lead().mono, w.lead().mono)});
        }
        basis.push_back(std::move(w));
    };
    for (auto& v : input) add_elem(std::move(v));

    while (!pairs.empty()) {
        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            int c = order.cmp(it->lcm, best->lcm);
            if (c < 0 || (c == 0 && (it->i < best->i || (it->i == best->i && it->j < best->j)))) best = it;
        }
        MPair p = *best;
        pairs.erase(best);

        const MVec& f = basis[p.i];
        const MVec& g = basis[p.j];
        Monomial mf = mono_div(p.lcm, f.lead().mono);
        Monomial mg = mono_div(p.lcm, g.lead().mono);
        MVec s;
        s.terms = subtract_multiple({}, Rational(-1) / f.lead().coeff, mf, f.terms, order);
        s.terms = subtract_multiple(s.terms, Rational(1) / g.lead().coeff, mg, g.terms, order);
        add_elem(std::move(s));
    }

    // interreduce
    std::vector<MVec> pruned;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || basis[j].lead().pos != basis[i].lead().pos) continue;
            if (!mono_divides(basis[j].lead().mono, basis[i].lead().mono)) continue;
            if (basis[j].lead().mono == basis[i].lead().mono && i < j) continue;
            redundant = true;
            break;
        }
        if (!redundant) pruned.push_back(basis[i]);
    }
    for (std::size_t i = 0; i < pruned.size(); ++i) {
        std::vector<MVec> others;
        for (std::size_t j = 0; j < pruned.size(); ++j)
            if (j != i) others.push_back(pruned[j]);
        pruned[i] = reduce(std::move(pruned[i]), others, order);
        make_monic(pruned[i]);
    }
    std::sort(pruned.begin(), pruned.end(), [&](const MVec& a, const MVec& b) {
        return cmp_mterm(a.lead().pos, a.lead().mono, b.lead().pos, b.lead().mono, order) < 0;
    });
    return pruned;
}

VarNamesPtr column_registry(const std::vector<Column>& gens, const BaseRing& ring) {
    for (const auto& c : gens)
        for (const auto& p : c)
            if (!same_registry(p.registry(), ring.vars()))
                throw context_error("module column not over the base ring");
    return ring.vars();
}

// Unit column e_pos scaled by p.
Column unit_column(std::size_t rank, std::size_t pos, const Polynomial& p) {
    Column c(rank, Polynomial(p.registry()));
    c[pos] = p;
    return c;
}

}  // namespace

bool column_is_zero(const Column& c) {
    for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

ModuleGB module_groebner(const std::vector<Column>& gens, std::size_t rank,
                         const MonomialOrder& order) {
    ModuleGB gb;
    gb.order = order;
    gb.rank = rank;
    if (gens.empty()) return gb;
    VarNamesPtr reg;
    for (const auto& c : gens) {
        if (c.size() != rank) throw context_error("column rank mismatch");
        for (const auto& p : c)
            if (p.registry()) reg = p.registry();
    }
    std::vector<MVec> in;
    for (const auto& c : gens) {
        MVec v = from_column(c, order);
        if (!v.empty()) in.push_back(std::move(v));
    }
    auto basis = buchberger(std::move(in), order);
    for (const auto& v : basis) gb.basis.push_back(to_column(v, rank, reg));
    return gb;
}

Column module_nf(const Column& v, const ModuleGB& gb) {
    if (gb.basis.empty()) return v;
    VarNamesPtr reg;
    for (const auto& p : v)
        if (p.registry()) reg = p.registry();
    std::vector<MVec> g;
    for (const auto& c : gb.basis) g.push_back(from_column(c, gb.order));
    MVec w = reduce(from_column(v, gb.order), g, gb.order);
    return to_column(w, gb.rank, reg);
}

std::vector<Column> syzygies(const std::vector<Column>& cols, std::size_t rank,
                             const BaseRing& ring) {
    std::vector<Column> out;
    if (cols.empty()) return out;
    VarNamesPtr reg = column_registry(cols, ring);
    std::size_t n = cols.size();
    std::size_t aug_rank = rank + n;
    std::vector<Column> aug;
    for (std::size_t i = 0; i < n; ++i) {
        if (cols[i].size() != rank) throw context_error("column rank mismatch");
        Column u(aug_rank, Polynomial(reg));
        for (std::size_t p = 0; p < rank; ++p) u[p] = cols[i][p];
        u[rank + i] = Polynomial::constant(reg, 1);
        aug.push_back(std::move(u));
    }
    for (const auto& r : ring.relations())
        for (std::size_t p = 0; p < aug_rank; ++p) aug.push_back(unit_column(aug_rank, p, r));

    ModuleGB gb = module_groebner(aug, aug_rank, ring.order());
    for (const auto& b : gb.basis) {
        bool value_zero = true;
        for (std::size_t p = 0; p < rank; ++p)
            if (!b[p].is_zero()) {
                value_zero = false;
                break;
            }
        if (!value_zero) continue;
        Column s(n, Polynomial(reg));
        for (std::size_t i = 0; i < n; ++i) s[i] = ring.nf(b[rank + i]);
        if (!column_is_zero(s)) out.push_back(std::move(s));
    }
    return out;
}

Membership module_membership(const Column& target, const std::vector<Column>& gens,
                             std::size_t rank, const BaseRing& ring) {
    Membership res;
    VarNamesPtr reg = ring.vars();
    if (target.size() != rank) throw context_error("target rank mismatch");
    std::size_t n = gens.size();
    std::size_t aug_rank = rank + n;
    std::vector<Column> aug;
    for (std::size_t i = 0; i < n; ++i) {
        if (gens[i].size() != rank) throw context_error("column rank mismatch");
        Column u(aug_rank, Polynomial(reg));
        for (std::size_t p = 0; p < rank; ++p) u[p] = gens[i][p];
        u[rank + i] = Polynomial::constant(reg, 1);
        aug.push_back(std::move(u));
    }
    for (const auto& r : ring.relations())
        for (std::size_t p = 0; p < aug_rank; ++p) aug.push_back(unit_column(aug_rank, p, r));
    ModuleGB gb = module_groebner(aug, aug_rank, ring.order());

    Column t(aug_rank, Polynomial(reg));
    for (std::size_t p = 0; p < rank; ++p) t[p] = target[p];
    Column red = module_nf(t, gb);

    res.residual.assign(rank, Polynomial(reg));
    bool member = true;
    for (std::size_t p = 0; p < rank; ++p) {
        res.residual[p] = red[p];
        if (!red[p].is_zero()) member = false;
    }
    res.member = member;
    res.cofactors.assign(n, Polynomial(reg));
    if (member) {
        for (std::size_t i = 0; i < n; ++i) res.cofactors[i] = ring.nf(-red[rank + i]);
        // exact re-verification
        Column check(rank, Polynomial(reg));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = 0; p < rank; ++p)
                check[p] = check[p] + res.cofactors[i] * gens[i][p];
        for (std::size_t p = 0; p < rank; ++p)
            if (!ring.nf(check[p] - target[p]).is_zero())
                throw invariant_violation("module membership certificate failed to verify");
    }
    return res;
}

ModulePresentation make_presentation(const BaseRing& base, std::size_t rank,
                                     std::vector<Column> relations) {
    ModulePresentation pres;
    pres.base = base;
    pres.rank = rank;
    if (rank == 0) return pres;
    VarNamesPtr reg = base.vars();
    std::vector<Column> all;
    for (auto& c : relations) {
        if (c.size() != rank) throw context_error("relation rank mismatch");
        Column nfc(rank, Polynomial(reg));
        for (std::size_t p = 0; p < rank; ++p) nfc[p] = base.nf(c[p]);
        if (!column_is_zero(nfc)) all.push_back(std::move(nfc));
    }
    for (const auto& r : base.relations())
        for (std::size_t p = 0; p < rank; ++p) all.push_back(unit_column(rank, p, r));
    ModuleGB gb = module_groebner(all, rank, base.order());
    // canonical zero: every generator reduces into the relations
    bool zero = true;
    for (std::size_t p = 0; p < rank && zero; ++p) {
        Column e = unit_column(rank, p, base.constant(1));
        if (!column_is_zero(module_nf(e, gb))) zero = false;
    }
    if (zero) {
        pres.rank = 0;
        return pres;
    }
    pres.relations = gb.basis;
    return pres;
}

ModulePresentation module_subquotient(const std::vector<Column>& ker_gens,
                                      const std::vector<Column>& im_gens,
                                      std::size_t ambient_rank, const BaseRing& ring) {
    std::vector<Column> relations = syzygies(ker_gens, ambient_rank, ring);
    for (const auto& im : im_gens) {
        if (column_is_zero(im)) continue;
        Membership m = module_membership(im, ker_gens, ambient_rank, ring);
        if (!m.member)
            throw invariant_violation(
                "image generator does not lie in the kernel span (broken differential upstream)");
        relations.push_back(m.cofactors);
    }
    return make_presentation(ring, ker_gens.size(), std::move(relations));
}

bool presentation_is_zero(const ModulePresentation& p) { return p.rank == 0; }

bool presentation_is_free(const ModulePresentation& p) { return p.relations.empty(); }

std::size_t presentation_fiber_rank(const ModulePresentation& p, const QVector& point) {
    if (p.rank == 0) return 0;
    QMatrix m(p.rank, QVector(p.relations.size(), Rational(0)));
    for (std::size_t j = 0; j < p.relations.size(); ++j)
        for (std::size_t i = 0; i < p.rank; ++i) m[i][j] = p.relations[j][i].eval(point);
    return p.rank - rank(m);
}

}  // namespace dgwb
