#include "dgwb/groebner.hpp"

#include <algorithm>

namespace dgwb {

namespace {

struct Term {
    Monomial mono;
    Rational coeff;
};

// Terms descending under the order, plus the expression in the inputs.
struct WorkPoly {
    std::vector<Term> terms;
    std::vector<Polynomial> expr;

    bool empty() const { return terms.empty(); }
    const Term& lead() const { return terms.front(); }
};

std::vector<Term> sorted_terms(const Polynomial& p, const MonomialOrder& order) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) out.push_back({m, c});
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
    return out;
}

Polynomial to_poly(const std::vector<Term>& ts, const VarNamesPtr& reg) {
    Polynomial p(reg);
    for (const auto& t : ts) p.add_term(t.mono, t.coeff);
    return p;
}

// dst -= c * shift(m) * src, both descending; linear merge.
std::vector<Term> subtract_multiple(const std::vector<Term>& dst, const Rational& c, const Monomial& m,
                                    const std::vector<Term>& src, const MonomialOrder& order) {
    std::vector<Term> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size()) {
            out.push_back(dst[i++]);
            continue;
        }
        Monomial sm = mono_mul(src[j].mono, m);
        if (i == dst.size()) {
            out.push_back({sm, -c * src[j].coeff});
            ++j;
            continue;
        }
        int k = order.cmp(dst[i].mono, sm);
        if (k > 0) {
            out.push_back(dst[i++]);
        } else if (k < 0) {
            out.push_back({sm, -c * src[j].coeff});
            ++j;
        } else {
            Rational v = dst[i].coeff - c * src[j].coeff;
            if (v != 0) out.push_back({dst[i].mono, v});
            ++i;
            ++j;
        }
    }
    // drop zero coefficients introduced by exact cancellation
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }),
              out.end());
    return out;
}

void make_monic(WorkPoly& f) {
    if (f.empty()) return;
    Rational lc = f.lead().coeff;
    if (lc == 1) return;
    for (auto& t : f.terms) t.coeff /= lc;
    for (auto& e : f.expr) e = e.scaled(1 / lc);
}

// Full reduction of f by G; quotients folded into f.expr via G's expressions.
WorkPoly reduce(WorkPoly f, const std::vector<WorkPoly>& g, const MonomialOrder& order) {
    std::vector<Term> remainder;
    while (!f.empty()) {
        bool divided = false;
        for (const auto& gi : g) {
            if (gi.empty()) continue;
            if (!mono_divides(gi.lead().mono, f.lead().mono)) continue;
            Monomial q = mono_div(f.lead().mono, gi.lead().mono);
            Rational c = f.lead().coeff / gi.lead().coeff;
            f.terms = subtract_multiple(f.terms, c, q, gi.terms, order);
            if (!f.expr.empty()) {
                Polynomial qp(f.expr[0].registry());
                qp.add_term(q, c);
                for (std::size_t k = 0; k < f.expr.size(); ++k)
                    f.expr[k] = f.expr[k] - qp * gi.expr[k];
            }
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

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

// Gebauer–Möller style pair update on adding h as index `new_idx`.
void update_pairs(std::vector<Pair>& pairs, const std::vector<WorkPoly>& basis, std::size_t new_idx,
                  const MonomialOrder& order) {
    const Monomial& lm_h = basis[new_idx].lead().mono;
    std::vector<Pair> fresh;
    for (std::size_t k = 0; k < new_idx; ++k) {
        if (basis[k].empty()) continue;
        fresh.push_back({k, new_idx, mono_lcm(basis[k].lead().mono, lm_h)});
    }
    // eliminate old pairs strictly refined by h
    std::vector<Pair> kept;
    for (auto& p : pairs) {
        if (mono_divides(lm_h, p.lcm)) {
            Monomial l_ih = mono_lcm(basis[p.i].lead().mono, lm_h);
            Monomial l_jh = mono_lcm(basis[p.j].lead().mono, lm_h);
            if (l_ih != p.lcm && l_jh != p.lcm) continue;
        }
        kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    // among the new pairs keep minimal lcms only
    std::sort(fresh.begin(), fresh.end(), [&](const Pair& a, const Pair& b) {
        int c = order.cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return a.i < b.i;
    });
    std::vector<Pair> minimal;
    for (auto& p : fresh) {
        bool redundant = false;
        for (auto& q : minimal) {
            if (mono_divides(q.lcm, p.lcm)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(std::move(p));
    }
    // product criterion
    for (auto& p : minimal) {
        Monomial g = mono_gcd(basis[p.i].lead().mono, lm_h);
        if (mono_degree(g) != 0) pairs.push_back(std::move(p));
    }
}

}  // namespace

GroebnerResult groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
    GroebnerResult result;
    result.order = order;
    if (gens.empty()) return result;
    VarNamesPtr reg = gens.front().registry();

    std::vector<WorkPoly> basis;
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!same_registry(gens[i].registry(), reg)) throw context_error("generators from mixed registries");
        if (gens[i].is_zero()) continue;
        WorkPoly w;
        w.terms = sorted_terms(gens[i], order);
        w.expr.assign(gens.size(), Polynomial(reg));
        w.expr[i] = Polynomial::constant(reg, 1);
        w = reduce(std::move(w), basis, order);
        if (w.empty()) continue;
        make_monic(w);
        basis.push_back(std::move(w));
        update_pairs(pairs, basis, basis.size() - 1, order);
    }

    while (!pairs.empty()) {
        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            int c = order.cmp(it->lcm, best->lcm);
            if (c < 0 || (c == 0 && (it->i < best->i || (it->i == best->i && it->j < best->j)))) best = it;
        }
        Pair p = *best;
        pairs.erase(best);

        const WorkPoly& f = basis[p.i];
        const WorkPoly& g = basis[p.j];
        Monomial mf = mono_div(p.lcm, f.lead().mono);
        Monomial mg = mono_div(p.lcm, g.lead().mono);
        WorkPoly s;
        s.terms = subtract_multiple({}, Rational(-1) / f.lead().coeff, mf, f.terms, order);
        s.terms = subtract_multiple(s.terms, Rational(1) / g.lead().coeff, mg, g.terms, order);
        s.expr.assign(gens.size(), Polynomial(reg));
        Polynomial qf(reg), qg(reg);
        qf.add_term(mf, 1 / f.lead().coeff);
        qg.add_term(mg, 1 / g.lead().coeff);
        for (std::size_t k = 0; k < gens.size(); ++k) s.expr[k] = qf * f.expr[k] - qg * g.expr[k];

        s = reduce(std::move(s), basis, order);
        if (s.empty()) continue;
        make_monic(s);
        basis.push_back(std::move(s));
        update_pairs(pairs, basis, basis.size() - 1, order);
    }

    // interreduce: drop redundant leading terms, then fully reduce the rest
    std::vector<WorkPoly> pruned;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            if (!mono_divides(basis[j].lead().mono, basis[i].lead().mono)) continue;
            if (basis[j].lead().mono == basis[i].lead().mono && i < j) continue;  // keep one
            redundant = true;
            break;
        }
        if (!redundant) pruned.push_back(basis[i]);
    }
    for (std::size_t i = 0; i < pruned.size(); ++i) {
        std::vector<WorkPoly> others;
        for (std::size_t j = 0; j < pruned.size(); ++j)
            if (j != i) others.push_back(pruned[j]);
        pruned[i] = reduce(std::move(pruned[i]), others, order);
        make_monic(pruned[i]);
    }
    std::sort(pruned.begin(), pruned.end(), [&](const WorkPoly& a, const WorkPoly& b) {
        return order.cmp(a.lead().mono, b.lead().mono) < 0;
    });

    for (auto& w : pruned) {
        result.basis.push_back(to_poly(w.terms, reg));
        result.expr.push_back(std::move(w.expr));
    }
    return result;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
    if (f.is_zero()) return f;
    std::vector<WorkPoly> g;
    for (const auto& b : basis) {
        if (b.is_zero()) continue;
        WorkPoly w;
        w.terms = sorted_terms(b, order);
        g.push_back(std::move(w));
    }
    WorkPoly w;
    w.terms = sorted_terms(f, order);
    w = reduce(std::move(w), g, order);
    return to_poly(w.terms, f.registry());
}

Polynomial normal_form_ext(const Polynomial& f, const GroebnerResult& gb,
                           std::vector<Polynomial>& cofactors_on_inputs) {
    VarNamesPtr reg = f.registry();
    std::size_t inputs = gb.expr.empty() ? 0 : gb.expr[0].size();
    cofactors_on_inputs.assign(inputs, Polynomial(reg));
    if (f.is_zero()) return f;

    std::vector<WorkPoly> g;
    for (const auto& b : gb.basis) {
        WorkPoly w;
        w.terms = sorted_terms(b, gb.order);
        g.push_back(std::move(w));
    }
    WorkPoly w;
    w.terms = sorted_terms(f, gb.order);
    std::vector<Polynomial> q(g.size(), Polynomial(reg));  // quotients on basis elements
    std::vector<Term> remainder;
    while (!w.empty()) {
        bool divided = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!mono_divides(g[i].lead().mono, w.lead().mono)) continue;
            Monomial mq = mono_div(w.lead().mono, g[i].lead().mono);
            Rational c = w.lead().coeff / g[i].lead().coeff;
            w.terms = subtract_multiple(w.terms, c, mq, g[i].terms, gb.order);
            q[i].add_term(mq, c);
            divided = true;
            break;
        }
        if (!divided) {
            remainder.push_back(w.lead());
            w.terms.erase(w.terms.begin());
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = 0; k < inputs; ++k)
            cofactors_on_inputs[k] = cofactors_on_inputs[k] + q[i] * gb.expr[i][k];
    return to_poly(remainder, reg);
}

std::optional<std::vector<Polynomial>> unit_ideal_certificate(const std::vector<Polynomial>& gens,
                                                              const BaseRing& ring) {
    const VarNamesPtr& reg = ring.vars();
    for (const auto& g : gens)
        if (!same_registry(g.registry(), reg)) throw context_error("generator not over the ring");
    if (ring.is_zero_ring()) {
        // 1 ≡ 0, so the empty combination already works
        return std::vector<Polynomial>(gens.size(), Polynomial(reg));
    }
    std::vector<Polynomial> inputs = ring.relations();
    std::size_t offset = inputs.size();
    inputs.insert(inputs.end(), gens.begin(), gens.end());
    GroebnerResult gb = groebner_basis(inputs, ring.order());
    std::vector<Polynomial> cof;
    Polynomial r = normal_form_ext(ring.constant(1), gb, cof);
    if (!r.is_zero()) return std::nullopt;
    std::vector<Polynomial> out;
    out.reserve(gens.size());
    Polynomial check(reg);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Polynomial gi = ring.nf(cof[offset + i]);
        check = check + gi * gens[i];
        out.push_back(std::move(gi));
    }
    if (!ring.nf(check - ring.constant(1)).is_zero())
        throw invariant_violation("unit certificate failed to verify");
    return out;
}

}  // namespace dgwb
