#include "dgwb/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dgwb {

namespace {

std::vector<std::string> taken_names(const DgAlgebra& A) {
    std::vector<std::string> names(*A.base().vars());
    for (const auto& g : A.gens()) names.push_back(g.name);
    return names;
}

bool is_taken(const std::vector<std::string>& taken, const std::string& name) {
    return std::find(taken.begin(), taken.end(), name) != taken.end();
}

Element lift_element(const Element& e, const VarNamesPtr& target,
                     const std::vector<std::size_t>& var_map, std::uint32_t gen_offset) {
    Element out;
    out.degree = e.degree;
    for (const auto& [w, c] : e.terms) {
        GenWord nw = w;
        for (auto& g : nw) g += gen_offset;
        out.terms[nw] = c.relabel(target, var_map);
    }
    return out;
}

}  // namespace

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
    if (!is_taken(taken, base)) return base;
    std::string stem = base + "_r";
    if (!is_taken(taken, stem)) return stem;
    for (int i = 2;; ++i) {
        std::string cand = stem + std::to_string(i);
        if (!is_taken(taken, cand)) return cand;
    }
}

LocalizationResult localize(const DgAlgebra& A, const Polynomial& f) {
    if (!same_registry(f.registry(), A.base().vars()))
        throw context_error("localization element not over the base");
    if (A.base().nf(f).is_zero())
        throw invariant_violation("cannot invert an element that is zero in the base");

    auto taken = taken_names(A);
    std::string tname;
    for (const char* cand : {"t", "u", "v", "w"}) {
        if (!is_taken(taken, cand)) {
            tname = cand;
            break;
        }
    }
    if (tname.empty()) {
        for (int i = 2;; ++i) {
            std::string cand = "t" + std::to_string(i);
            if (!is_taken(taken, cand)) {
                tname = cand;
                break;
            }
        }
    }

    VarNames vars(*A.base().vars());
    vars.push_back(tname);
    auto reg = std::make_shared<const VarNames>(vars);
    std::vector<std::size_t> var_map(A.base().arity());
    for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = i;

    std::vector<Polynomial> relations;
    for (const auto& r : A.base().relations()) relations.push_back(r.relabel(reg, var_map));
    Polynomial t = Polynomial::variable(reg, vars.size() - 1);
    relations.push_back(f.relabel(reg, var_map) * t - Polynomial::constant(reg, 1));
    BaseRing ring = BaseRing::make(vars, std::move(relations), A.base().order());

    std::vector<Generator> gens;
    for (const auto& g : A.gens())
        gens.push_back({g.name, g.degree, lift_element(g.diff, reg, var_map, 0)});
    DgAlgebra L = DgAlgebra::make(ring, std::move(gens));

    std::vector<Polynomial> var_images;
    for (std::size_t i = 0; i < A.base().arity(); ++i) var_images.push_back(L.base().var(i));
    std::vector<Element> gen_images;
    for (std::size_t i = 0; i < A.gen_count(); ++i) gen_images.push_back(element_gen(L, i));
    DgMorphism incl = DgMorphism::make(A, L, std::move(var_images), std::move(gen_images));
    return {L, incl, tname};
}

TensorSquare tensor_square(const DgAlgebra& A) {
    std::size_t n = A.base().arity();
    std::size_t g = A.gen_count();
    std::vector<std::string> taken = taken_names(A);
    VarNames vars(*A.base().vars());
    std::vector<std::string> right_vars;
    for (std::size_t i = 0; i < n; ++i) {
        std::string nm = fresh_name(taken, (*A.base().vars())[i]);
        taken.push_back(nm);
        right_vars.push_back(nm);
        vars.push_back(nm);
    }
    auto reg = std::make_shared<const VarNames>(vars);
    std::vector<std::size_t> left_map(n), right_map(n);
    for (std::size_t i = 0; i < n; ++i) {
        left_map[i] = i;
        right_map[i] = n + i;
    }
    std::vector<Polynomial> relations;
    for (const auto& r : A.base().relations()) relations.push_back(r.relabel(reg, left_map));
    for (const auto& r : A.base().relations()) relations.push_back(r.relabel(reg, right_map));
    BaseRing ring = BaseRing::make(vars, std::move(relations), A.base().order());

    std::vector<Generator> gens;
    for (const auto& gen : A.gens())
        gens.push_back({gen.name, gen.degree, lift_element(gen.diff, reg, left_map, 0)});
    for (const auto& gen : A.gens()) {
        std::string nm = fresh_name(taken, gen.name);
        taken.push_back(nm);
        gens.push_back({nm, gen.degree,
                        lift_element(gen.diff, reg, right_map, static_cast<std::uint32_t>(g))});
    }
    DgAlgebra P = DgAlgebra::make(ring, std::move(gens));

    auto var_of = [&](std::size_t i) { return P.base().var(i); };
    std::vector<Polynomial> lv, rv, mv;
    std::vector<Element> lg, rg, mg;
    for (std::size_t i = 0; i < n; ++i) lv.push_back(var_of(i));
    for (std::size_t i = 0; i < n; ++i) rv.push_back(var_of(n + i));
    for (std::size_t i = 0; i < g; ++i) lg.push_back(element_gen(P, i));
    for (std::size_t i = 0; i < g; ++i) rg.push_back(element_gen(P, g + i));
    for (std::size_t i = 0; i < n; ++i) mv.push_back(A.base().var(i));
    for (std::size_t i = 0; i < n; ++i) mv.push_back(A.base().var(i));
    for (std::size_t i = 0; i < g; ++i) mg.push_back(element_gen(A, i));
    for (std::size_t i = 0; i < g; ++i) mg.push_back(element_gen(A, i));

    TensorSquare out;
    out.algebra = P;
    out.left = DgMorphism::make(A, P, std::move(lv), std::move(lg));
    out.right = DgMorphism::make(A, P, std::move(rv), std::move(rg));
    out.mult = DgMorphism::make(P, A, std::move(mv), std::move(mg));
    return out;
}

namespace {

// r == f*t - 1 with t fresh and f free of t; returns f.
std::optional<Polynomial> loc_shape(const Polynomial& r, std::size_t t) {
    Polynomial f(r.registry());
    bool has_const = false;
    for (const auto& [m, c] : r.terms()) {
        if (mono_degree(m) == 0) {
            if (c != -1) return std::nullopt;
            has_const = true;
            continue;
        }
        if (m[t] != 1) return std::nullopt;
        Monomial q = m;
        q[t] = 0;
        f.add_term(q, c);
    }
    if (!has_const || f.is_zero()) return std::nullopt;
    return f;
}

}  // namespace

std::optional<FibrationWitness> recognize_fibration(const DgMorphism& phi, std::string* reason) {
    auto fail = [&](const std::string& why) -> std::optional<FibrationWitness> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    const DgAlgebra& S = phi.src();
    const DgAlgebra& T = phi.dst();
    FibrationWitness w;

    std::vector<bool> var_hit(T.base().arity(), false);
    for (std::size_t i = 0; i < S.base().arity(); ++i) {
        const Polynomial& img = phi.var_images()[i];
        if (img.terms().size() != 1) return fail("image of a base variable is not a variable");
        const auto& [m, c] = *img.terms().begin();
        if (mono_degree(m) != 1 || c != 1) return fail("image of a base variable is not a variable");
        std::size_t idx = 0;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[j] == 1) idx = j;
        if (var_hit[idx]) return fail("two base variables share an image");
        var_hit[idx] = true;
        w.var_image.push_back(idx);
    }
    std::vector<bool> gen_hit(T.gen_count(), false);
    for (std::size_t i = 0; i < S.gen_count(); ++i) {
        const Element& img = phi.gen_images()[i];
        if (img.terms.size() != 1) return fail("image of a generator is not a generator");
        const auto& [word, c] = *img.terms.begin();
        if (word.size() != 1 || !c.is_one()) return fail("image of a generator is not a generator");
        if (gen_hit[word[0]]) return fail("two generators share an image");
        gen_hit[word[0]] = true;
        w.gen_image.push_back(word[0]);
    }

    // target relations: images of source relations, or localization shapes on
    // fresh variables
    std::vector<std::size_t> var_map(S.base().arity());
    for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = w.var_image[i];
    std::vector<bool> rel_used(T.base().relations().size(), false);
    for (const auto& r : S.base().relations()) {
        Polynomial img = r.relabel(T.base().vars(), var_map);
        bool matched = false;
        for (std::size_t j = 0; j < T.base().relations().size(); ++j) {
            if (rel_used[j]) continue;
            if (T.base().relations()[j] == img) {
                rel_used[j] = true;
                w.rel_image.push_back(j);
                matched = true;
                break;
            }
        }
        if (!matched) return fail("a source relation has no matching target relation");
    }
    for (std::size_t v = 0; v < T.base().arity(); ++v) {
        if (var_hit[v]) continue;
        FibrationWitness::BaseStage stage{FibrationWitness::StageKind::FreshVar, v, std::nullopt};
        w.stages.push_back(stage);
    }
    for (std::size_t j = 0; j < T.base().relations().size(); ++j) {
        if (rel_used[j]) continue;
        bool classified = false;
        for (auto& stage : w.stages) {
            if (stage.relation) continue;
            if (auto f = loc_shape(T.base().relations()[j], stage.var)) {
                stage.kind = FibrationWitness::StageKind::Localization;
                stage.relation = j;
                classified = true;
                break;
            }
        }
        if (!classified)
            return fail("target relation " + poly_str(T.base().relations()[j]) +
                        " is not a localization of a fresh variable");
    }
    for (std::size_t gi = 0; gi < T.gen_count(); ++gi)
        if (!gen_hit[gi]) w.new_gens.push_back(gi);

    if (!witness_replays(w, phi)) return fail("witness replay mismatch");
    return w;
}

bool witness_replays(const FibrationWitness& w, const DgMorphism& phi) {
    const DgAlgebra& S = phi.src();
    const DgAlgebra& T = phi.dst();
    // variable slots partition
    std::vector<int> var_owner(T.base().arity(), -1);
    for (std::size_t i = 0; i < w.var_image.size(); ++i) {
        if (w.var_image[i] >= var_owner.size() || var_owner[w.var_image[i]] != -1) return false;
        var_owner[w.var_image[i]] = 0;
    }
    for (const auto& st : w.stages) {
        if (st.var >= var_owner.size() || var_owner[st.var] != -1) return false;
        var_owner[st.var] = 1;
    }
    for (int o : var_owner)
        if (o == -1) return false;

    // relation slots partition and reproduce
    std::vector<int> rel_owner(T.base().relations().size(), -1);
    std::vector<std::size_t> var_map(S.base().arity());
    for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = w.var_image[i];
    if (w.rel_image.size() != S.base().relations().size()) return false;
    for (std::size_t k = 0; k < w.rel_image.size(); ++k) {
        std::size_t j = w.rel_image[k];
        if (j >= rel_owner.size() || rel_owner[j] != -1) return false;
        rel_owner[j] = 0;
        if (!(T.base().relations()[j] == S.base().relations()[k].relabel(T.base().vars(), var_map)))
            return false;
    }
    for (const auto& st : w.stages) {
        if (!st.relation) continue;
        std::size_t j = *st.relation;
        if (j >= rel_owner.size() || rel_owner[j] != -1) return false;
        rel_owner[j] = 1;
        if (!loc_shape(T.base().relations()[j], st.var)) return false;
    }
    for (int o : rel_owner)
        if (o == -1) return false;

    // generator slots partition; mapped differentials reproduce exactly
    std::vector<int> gen_owner(T.gen_count(), -1);
    std::vector<Element> gen_imgs(S.gen_count());
    for (std::size_t i = 0; i < w.gen_image.size(); ++i) {
        if (w.gen_image[i] >= gen_owner.size() || gen_owner[w.gen_image[i]] != -1) return false;
        gen_owner[w.gen_image[i]] = 0;
        gen_imgs[i] = element_gen(T, w.gen_image[i]);
        if (T.gen(w.gen_image[i]).degree != S.gen(i).degree) return false;
    }
    for (auto g : w.new_gens) {
        if (g >= gen_owner.size() || gen_owner[g] != -1) return false;
        gen_owner[g] = 1;
    }
    for (int o : gen_owner)
        if (o == -1) return false;
    std::vector<Polynomial> var_imgs;
    for (std::size_t i = 0; i < S.base().arity(); ++i)
        var_imgs.push_back(T.base().var(w.var_image[i]));
    for (std::size_t i = 0; i < S.gen_count(); ++i) {
        Element mapped = map_element(T, var_imgs, gen_imgs, S.gen(i).diff);
        if (!element_equal(T, mapped, T.gen(w.gen_image[i]).diff)) return false;
    }
    return true;
}

PushoutResult pushout(const DgMorphism& phi, const FibrationWitness& w, const DgMorphism& psi) {
    if (!phi.src().structurally_equal(psi.src())) throw context_error("pushout legs share no source");
    const DgAlgebra& B = phi.dst();
    const DgAlgebra& C = psi.dst();

    std::vector<std::string> taken = taken_names(C);
    VarNames vars(*C.base().vars());
    std::size_t c_arity = C.base().arity();

    // target variable -> polynomial over P
    std::vector<std::size_t> stage_slot(B.base().arity(), 0);
    std::vector<bool> is_stage(B.base().arity(), false);
    for (const auto& st : w.stages) {
        std::string nm = fresh_name(taken, (*B.base().vars())[st.var]);
        taken.push_back(nm);
        stage_slot[st.var] = vars.size();
        is_stage[st.var] = true;
        vars.push_back(nm);
    }
    auto reg = std::make_shared<const VarNames>(vars);
    std::vector<std::size_t> c_map(c_arity);
    for (std::size_t i = 0; i < c_arity; ++i) c_map[i] = i;

    std::vector<Polynomial> tvar(B.base().arity(), Polynomial(reg));
    for (std::size_t i = 0; i < w.var_image.size(); ++i)
        tvar[w.var_image[i]] = psi.var_images()[i].relabel(reg, c_map);
    for (const auto& st : w.stages) tvar[st.var] = Polynomial::variable(reg, stage_slot[st.var]);

    std::vector<Polynomial> relations;
    for (const auto& r : C.base().relations()) relations.push_back(r.relabel(reg, c_map));
    for (const auto& st : w.stages) {
        if (!st.relation) continue;
        relations.push_back(B.base().relations()[*st.relation].substitute(tvar, reg));
    }
    BaseRing ring = BaseRing::make(vars, std::move(relations), C.base().order());

    // shell with the C generators plus uninitialized new generators
    std::vector<Generator> gens;
    for (const auto& g : C.gens()) gens.push_back({g.name, g.degree, lift_element(g.diff, reg, c_map, 0)});
    std::vector<std::string> new_names;
    for (auto gi : w.new_gens) {
        std::string nm = fresh_name(taken, B.gen(gi).name);
        taken.push_back(nm);
        new_names.push_back(nm);
        gens.push_back({nm, B.gen(gi).degree, element_zero(B.gen(gi).degree + 1)});
    }
    DgAlgebra shell = DgAlgebra::make(ring, gens);

    std::vector<Element> tgen(B.gen_count());
    for (std::size_t i = 0; i < w.gen_image.size(); ++i) {
        Element img = psi.gen_images()[i];
        tgen[w.gen_image[i]] = lift_element(img, reg, c_map, 0);
    }
    for (std::size_t j = 0; j < w.new_gens.size(); ++j)
        tgen[w.new_gens[j]] = element_gen(shell, C.gen_count() + j);

    for (std::size_t j = 0; j < w.new_gens.size(); ++j) {
        const Element& diff = B.gen(w.new_gens[j]).diff;
        gens[C.gen_count() + j].diff = map_element(shell, tvar, tgen, diff);
    }
    DgAlgebra P = DgAlgebra::make(ring, std::move(gens));

    std::vector<Polynomial> cvars;
    std::vector<Element> cgens;
    for (std::size_t i = 0; i < c_arity; ++i) cvars.push_back(P.base().var(i));
    for (std::size_t i = 0; i < C.gen_count(); ++i) cgens.push_back(element_gen(P, i));
    DgMorphism from_other = DgMorphism::make(C, P, std::move(cvars), std::move(cgens));
    DgMorphism from_witnessed = DgMorphism::make(B, P, tvar, tgen);

    if (!morphism_equal(compose(from_witnessed, phi), compose(from_other, psi)))
        throw invariant_violation("pushout square does not commute");

    PushoutResult out;
    out.algebra = P;
    out.from_witnessed = from_witnessed;
    out.from_other = from_other;
    return out;
}

PushoutResult pushout(const DgMorphism& phi, const DgMorphism& psi) {
    std::string r1, r2;
    if (auto w = recognize_fibration(phi, &r1)) return pushout(phi, *w, psi);
    if (auto w = recognize_fibration(psi, &r2)) {
        PushoutResult swapped = pushout(psi, *w, phi);
        PushoutResult out;
        out.algebra = swapped.algebra;
        out.from_witnessed = swapped.from_other;   // from φ's target
        out.from_other = swapped.from_witnessed;   // from ψ's target
        return out;
    }
    throw invariant_violation("pushout requires one almost-free leg (" + r1 + "; " + r2 + ")");
}

DgMorphism pushout_induce(const PushoutResult& P, const DgMorphism& phi, const DgMorphism& psi,
                          const DgMorphism& beta, const DgMorphism& gamma) {
    if (!morphism_equal(compose(beta, phi), compose(gamma, psi)))
        throw invariant_violation("cocone does not commute over the source");
    const DgAlgebra& T = beta.dst();
    const DgAlgebra& C = psi.dst();
    // P's variables: C block first, then the replayed stage variables; P's
    // generators: C block first, then the replayed new generators. Rebuild the
    // correspondence from the witnessed legs.
    std::vector<Polynomial> var_imgs(P.algebra.base().arity(), Polynomial(T.base().vars()));
    std::vector<Element> gen_imgs(P.algebra.gen_count());
    for (std::size_t i = 0; i < C.base().arity(); ++i) var_imgs[i] = gamma.var_images()[i];
    for (std::size_t i = 0; i < C.gen_count(); ++i) gen_imgs[i] = gamma.gen_images()[i];
    // remaining slots are images of B's fresh data; find them through
    // from_witnessed, which sends B's stage var to the P slot.
    const DgMorphism& fw = P.from_witnessed;
    for (std::size_t bv = 0; bv < fw.src().base().arity(); ++bv) {
        const Polynomial& img = fw.var_images()[bv];
        if (img.terms().size() != 1) continue;
        const auto& [m, c] = *img.terms().begin();
        if (mono_degree(m) != 1 || c != 1) continue;
        std::size_t slot = 0;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[j] == 1) slot = j;
        if (slot >= C.base().arity()) var_imgs[slot] = beta.var_images()[bv];
    }
    for (std::size_t bg = 0; bg < fw.src().gen_count(); ++bg) {
        const Element& img = fw.gen_images()[bg];
        if (img.terms.size() != 1) continue;
        const auto& [word, c] = *img.terms.begin();
        if (word.size() != 1 || !c.is_one()) continue;
        if (word[0] >= C.gen_count()) gen_imgs[word[0]] = beta.gen_images()[bg];
    }
    return DgMorphism::make(P.algebra, T, std::move(var_imgs), std::move(gen_imgs));
}

// ---------------------------------------------------------------------------
// Relative Kähler differentials

namespace {

struct KahlerContext {
    const DgAlgebra* B;
    // symbols: one per base variable (degree 0) then one per generator
    std::vector<int> sym_degree;
    std::size_t var_count;

    // sparse Ω-element: (word, symbol) -> coefficient
    using OVec = std::map<std::pair<GenWord, std::size_t>, Polynomial>;

    void add(OVec& v, const GenWord& w, std::size_t s, const Polynomial& c) const {
        if (c.is_zero()) return;
        auto key = std::make_pair(w, s);
        auto it = v.find(key);
        if (it == v.end()) {
            v.emplace(key, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) v.erase(it);
        }
    }

    // universal derivation of a single term c·w
    void derive_term(OVec& out, const Polynomial& c, const GenWord& w) const {
        for (std::size_t j = 0; j < B->base().arity(); ++j) {
            Polynomial dc = c.derivative(j);
            if (!dc.is_zero()) add(out, w, j, dc);
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            int suffix_deg = 0;
            for (std::size_t j = i + 1; j < w.size(); ++j) suffix_deg += B->gen(w[j]).degree;
            int gen_deg = B->gen(w[i]).degree;
            bool flip = (gen_deg % 2) && (suffix_deg % 2);
            GenWord rest;
            rest.reserve(w.size() - 1);
            for (std::size_t j = 0; j < w.size(); ++j)
                if (j != i) rest.push_back(w[j]);
            add(out, rest, var_count + w[i], flip ? -c : c);
        }
    }

    OVec derive(const Element& e) const {
        OVec out;
        for (const auto& [w, c] : e.terms) derive_term(out, c, w);
        return out;
    }

    // left multiplication by a word (Koszul signs through the word part only;
    // symbols stay rightmost)
    OVec word_mult(const GenWord& w, const OVec& v) const {
        OVec out;
        for (const auto& [key, c] : v) {
            auto prod = word_mul(*B, w, key.first);
            if (!prod) continue;
            add(out, prod->first, key.second, prod->second < 0 ? -c : c);
        }
        return out;
    }

    OVec scale(const Polynomial& p, const OVec& v) const {
        OVec out;
        for (const auto& [key, c] : v) add(out, key.first, key.second, p * c);
        return out;
    }

    // δ_Ω of a basis vector w·ds
    OVec delta_basis(const GenWord& w, std::size_t s) const {
        OVec out;
        Element we;
        we.degree = word_degree(*B, w);
        we.terms[w] = B->base().constant(1);
        Element dw = differential(*B, we);
        for (const auto& [w2, c] : dw.terms) add(out, w2, s, c);
        if (s >= var_count) {
            const Element& dgen = B->gen(s - var_count).diff;
            OVec dsym = derive(dgen);
            bool flip = word_degree(*B, w) % 2;
            OVec tail = word_mult(w, dsym);
            for (const auto& [key, c] : tail) add(out, key.first, key.second, flip ? -c : c);
        }
        return out;
    }
};

}  // namespace

KahlerReport relative_kahler(const DgMorphism& phi, int depth) {
    const DgAlgebra& B = phi.dst();
    const BaseRing& R = B.base();
    KahlerContext ctx;
    ctx.B = &B;
    ctx.var_count = R.arity();
    for (std::size_t j = 0; j < R.arity(); ++j) ctx.sym_degree.push_back(0);
    for (std::size_t i = 0; i < B.gen_count(); ++i) ctx.sym_degree.push_back(B.gen(i).degree);

    KahlerReport report;
    report.symbol_count = ctx.sym_degree.size();

    // relation vectors: d of the images of the source's variables and
    // generators, and the Jacobian rows of the target's base relations
    struct RelVec {
        int degree;
        KahlerContext::OVec v;
        std::string label;
    };
    std::vector<RelVec> rels;
    for (std::size_t i = 0; i < phi.src().base().arity(); ++i) {
        KahlerContext::OVec v;
        const Polynomial& img = phi.var_images()[i];
        for (std::size_t j = 0; j < R.arity(); ++j) {
            Polynomial dc = img.derivative(j);
            if (!dc.is_zero()) ctx.add(v, {}, j, dc);
        }
        rels.push_back({0, std::move(v), "d(" + (*phi.src().base().vars())[i] + ")"});
    }
    for (std::size_t i = 0; i < phi.src().gen_count(); ++i) {
        Element img = phi.gen_images()[i];
        rels.push_back({img.degree, ctx.derive(img), "d(" + phi.src().gen(i).name + ")"});
    }
    for (const auto& r : R.relations()) {
        KahlerContext::OVec v;
        for (std::size_t j = 0; j < R.arity(); ++j) {
            Polynomial dc = r.derivative(j);
            if (!dc.is_zero()) ctx.add(v, {}, j, dc);
        }
        rels.push_back({0, std::move(v), "jacobian(" + poly_str(r) + ")"});
    }

    // per-degree basis of Ω^k
    auto basis_of = [&](int k) {
        std::vector<std::pair<GenWord, std::size_t>> basis;
        for (std::size_t s = 0; s < ctx.sym_degree.size(); ++s) {
            int want = k - ctx.sym_degree[s];
            if (want > 0) continue;
            for (const auto& w : graded_basis(B, want)) basis.emplace_back(w, s);
        }
        return basis;
    };
    auto column_of = [&](const KahlerContext::OVec& v,
                         const std::vector<std::pair<GenWord, std::size_t>>& basis,
                         const std::map<std::pair<GenWord, std::size_t>, std::size_t>& index) {
        Column col(basis.size(), Polynomial(R.vars()));
        for (const auto& [key, c] : v) {
            auto it = index.find(key);
            if (it == index.end()) throw invariant_violation("Kähler term outside the graded basis");
            col[it->second] = R.nf(c);
        }
        return col;
    };

    for (int k = 0; k >= -depth; --k) {
        auto basis_k = basis_of(k);
        auto basis_up = basis_of(k + 1);
        std::map<std::pair<GenWord, std::size_t>, std::size_t> idx_k, idx_up;
        for (std::size_t i = 0; i < basis_k.size(); ++i) idx_k[basis_k[i]] = i;
        for (std::size_t i = 0; i < basis_up.size(); ++i) idx_up[basis_up[i]] = i;

        if (basis_k.empty()) {
            report.degrees.push_back({k, true, ""});
            continue;
        }

        // relation columns in degrees k and k+1
        auto rel_columns = [&](int deg, const auto& basis,
                               const std::map<std::pair<GenWord, std::size_t>, std::size_t>& index) {
            std::vector<Column> cols;
            for (const auto& rv : rels) {
                int want = deg - rv.degree;
                if (want > 0) continue;
                for (const auto& w : graded_basis(B, want)) {
                    auto prod = ctx.word_mult(w, rv.v);
                    Column c = column_of(prod, basis, index);
                    if (!column_is_zero(c)) cols.push_back(std::move(c));
                }
            }
            return cols;
        };
        std::vector<Column> rel_k = rel_columns(k, basis_k, idx_k);
        std::vector<Column> rel_up = rel_columns(k + 1, basis_up, idx_up);

        // differential columns
        std::vector<Column> d_k;
        for (const auto& [w, s] : basis_k)
            d_k.push_back(column_of(ctx.delta_basis(w, s), basis_up, idx_up));
        std::vector<Column> d_down;
        for (const auto& [w, s] : basis_of(k - 1)) {
            auto v = ctx.delta_basis(w, s);
            d_down.push_back(column_of(v, basis_k, idx_k));
        }

        // kernel lifts: coefficient vectors z with δz ∈ span(rel_up)
        std::vector<Column> kernel_reps;
        if (k == 0) {
            for (std::size_t i = 0; i < basis_k.size(); ++i) {
                Column e(basis_k.size(), Polynomial(R.vars()));
                e[i] = R.constant(1);
                kernel_reps.push_back(std::move(e));
            }
        } else {
            std::vector<Column> block = d_k;
            for (const auto& c : rel_up) block.push_back(c);
            auto syz = syzygies(block, basis_up.size(), R);
            for (const auto& s : syz) {
                Column z(basis_k.size(), Polynomial(R.vars()));
                bool nonzero = false;
                for (std::size_t i = 0; i < basis_k.size(); ++i) {
                    z[i] = s[i];
                    nonzero = nonzero || !s[i].is_zero();
                }
                if (nonzero) kernel_reps.push_back(std::move(z));
            }
        }

        std::vector<Column> target_span = d_down;
        for (const auto& c : rel_k) target_span.push_back(c);

        bool acyclic = true;
        std::string witness;
        for (const auto& z : kernel_reps) {
            if (target_span.empty()) {
                if (!column_is_zero(z)) {
                    acyclic = false;
                }
            } else if (!module_membership(z, target_span, basis_k.size(), R).member) {
                acyclic = false;
            }
            if (!acyclic) {
                std::ostringstream os;
                os << "degree " << k << " class survives";
                witness = os.str();
                break;
            }
        }
        report.degrees.push_back({k, acyclic, witness});
    }
    return report;
}

}  // namespace dgwb
