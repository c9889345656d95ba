#include "dgwb/resolution.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dgwb {

bool is_identity(const Monotone& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != static_cast<int>(i)) return false;
    return true;
}

Monotone compose_monotone(const Monotone& outer, const Monotone& inner) {
    Monotone out(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

std::vector<Monotone> surjections(int n, int j) {
    std::vector<Monotone> out;
    Monotone cur(n + 1);
    std::function<void(int, int)> rec = [&](int pos, int val) {
        if (pos == n + 1) {
            if (val == j) out.push_back(cur);
            return;
        }
        // weakly increasing, step at most one, must end at j
        for (int v = val; v <= std::min(val + 1, j); ++v) {
            cur[pos] = v;
            rec(pos + 1, v);
        }
    };
    if (n >= 0 && j >= 0 && j <= n) {
        cur[0] = 0;
        rec(1, 0);
    }
    return out;
}

void epi_mono(const Monotone& map, Monotone& surj, std::vector<int>& image) {
    image.clear();
    for (int v : map)
        if (image.empty() || image.back() != v) image.push_back(v);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    surj.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        auto it = std::lower_bound(image.begin(), image.end(), map[i]);
        surj[i] = static_cast<int>(it - image.begin());
    }
}

namespace {

std::string digits(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x);
    return s;
}

std::string degenerate_name(const Monotone& rho, const std::string& base) {
    return "s" + digits(rho) + "_" + base;
}

std::string gen_key_degenerate(const Monotone& rho, std::size_t level, std::size_t item, bool partner) {
    return "d:" + digits(rho) + ":" + std::to_string(level) + ":" + std::to_string(item) + ":" +
           (partner ? "f" : "e");
}

std::string gen_key_new(std::size_t item, bool partner) {
    return "n:" + std::to_string(item) + ":" + (partner ? "f" : "e");
}

struct LevelMaps {
    std::map<std::string, std::size_t> gen_lookup;
    std::map<std::string, std::size_t> var_lookup;       // degenerate/new partner vars
    std::map<std::pair<int, std::vector<int>>, std::vector<std::size_t>> blocks;  // (deg, subset) -> items
};

// transient lookups per level, rebuilt on demand
LevelMaps level_maps(const ResolutionLevel& L) {
    LevelMaps m;
    for (std::size_t g = 0; g < L.gen_info.size(); ++g) {
        const auto& gi = L.gen_info[g];
        if (gi.kind == ResolutionLevel::GenInfo::Kind::Degenerate)
            m.gen_lookup[gen_key_degenerate(gi.rho, gi.src_level, gi.src_item, gi.partner)] = g;
        else if (gi.kind == ResolutionLevel::GenInfo::Kind::NewGen)
            m.gen_lookup[gen_key_new(gi.index, gi.partner)] = g;  // unused; blocks below
    }
    for (std::size_t v = 0; v < L.var_info.size(); ++v) {
        const auto& vi = L.var_info[v];
        if (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate)
            m.var_lookup[gen_key_degenerate(vi.rho, vi.src_level, vi.src_item, true)] = v;
    }
    for (std::size_t it = 0; it < L.new_items.size(); ++it) {
        const auto& ni = L.new_items[it];
        auto key = std::make_pair(ni.degree, ni.subset);
        auto& vec = m.blocks[key];
        if (vec.size() <= ni.index) vec.resize(ni.index + 1);
        vec[ni.index] = it;
    }
    return m;
}

}  // namespace

namespace {

// degeneracy transport tables for rho: [m] ->> [j], mapping level j into level m
struct Tables {
    std::vector<Polynomial> vars;
    std::vector<Element> gens;
};

Tables degeneracy_tables(const Resolution& res, std::size_t j, std::size_t m, const Monotone& rho) {
    const ResolutionLevel& src = res.levels[j];
    const ResolutionLevel& dst = res.levels[m];
    LevelMaps dm = level_maps(dst);
    Tables t;
    for (std::size_t v = 0; v < src.var_info.size(); ++v) {
        const auto& vi = src.var_info[v];
        std::size_t target;
        if (vi.kind == ResolutionLevel::VarInfo::Kind::FromInput) {
            target = vi.input_index;
        } else {
            Monotone rr = (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate)
                              ? compose_monotone(vi.rho, rho)
                              : rho;
            std::size_t sl = (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate) ? vi.src_level : j;
            std::size_t si = (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate)
                                 ? vi.src_item
                                 : [&] {
                                       // locate the new item this partner var belongs to
                                       for (std::size_t it = 0; it < src.new_items.size(); ++it)
                                           if (src.new_items[it].f_var == static_cast<long>(v)) return it;
                                       throw invariant_violation("orphan partner variable");
                                   }();
            auto key = gen_key_degenerate(rr, sl, si, true);
            auto it = dm.var_lookup.find(key);
            if (it == dm.var_lookup.end()) throw invariant_violation("missing degenerate variable " + key);
            target = it->second;
        }
        t.vars.push_back(dst.algebra.base().var(target));
    }
    for (std::size_t g = 0; g < src.gen_info.size(); ++g) {
        const auto& gi = src.gen_info[g];
        std::size_t target;
        if (gi.kind == ResolutionLevel::GenInfo::Kind::FromInput) {
            target = gi.input_index;
        } else {
            Monotone rr;
            std::size_t sl, si;
            bool partner;
            if (gi.kind == ResolutionLevel::GenInfo::Kind::Degenerate) {
                rr = compose_monotone(gi.rho, rho);
                sl = gi.src_level;
                si = gi.src_item;
                partner = gi.partner;
            } else {
                rr = rho;
                sl = j;
                si = [&] {
                    for (std::size_t it = 0; it < src.new_items.size(); ++it) {
                        if (src.new_items[it].e_gen == g) return it;
                        if (src.new_items[it].f_gen == static_cast<long>(g)) return it;
                    }
                    throw invariant_violation("orphan new generator");
                }();
                partner = gi.partner;
            }
            auto key = gen_key_degenerate(rr, sl, si, partner);
            auto it = dm.gen_lookup.find(key);
            if (it == dm.gen_lookup.end()) throw invariant_violation("missing degenerate generator " + key);
            target = it->second;
        }
        t.gens.push_back(element_gen(dst.algebra, target));
    }
    return t;
}

Element degeneracy_transport(const Resolution& res, std::size_t j, std::size_t m, const Monotone& rho,
                             const Element& e) {
    Tables t = degeneracy_tables(res, j, m, rho);
    return map_element(res.levels[m].algebra, t.vars, t.gens, e);
}

// inclusion with image T ⊆ [n]: composite of stored single faces
Element face_transport(const Resolution& res, std::size_t n, const std::vector<int>& T,
                       const Element& e) {
    std::vector<int> missing;
    for (int v = 0; v <= static_cast<int>(n); ++v)
        if (std::find(T.begin(), T.end(), v) == T.end()) missing.push_back(v);
    Element cur = e;
    std::size_t level = n;
    for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
        cur = res.face[level][static_cast<std::size_t>(*it)].apply(cur);
        --level;
    }
    return cur;
}

// coordinates of w in the kernel basis of `level` at `degree`; exact
std::vector<Polynomial> kernel_coordinates(const Resolution& res, std::size_t level, int degree,
                                           const Element& w) {
    const ResolutionLevel& L = res.levels[level];
    auto itb = L.kernel_basis.find(degree);
    auto itm = L.kernel_monomials.find(degree);
    std::size_t count = (itb == L.kernel_basis.end()) ? 0 : itb->second.size();
    std::vector<Polynomial> coords(count, Polynomial(L.algebra.base().vars()));
    Element check = element_zero(degree);
    for (std::size_t l = 0; l < count; ++l) {
        auto t = w.terms.find(itm->second[l]);
        if (t == w.terms.end()) continue;
        coords[l] = t->second;
        check = element_add(L.algebra, check,
                            element_scale(L.algebra, coords[l], itb->second[l]));
    }
    if (!element_equal(L.algebra, w, check)) {
        std::ostringstream os;
        os << "face image left the kernel-of-faces span at level " << level << ", degree " << degree
           << ": " << element_str(L.algebra, w);
        throw invariant_violation(os.str());
    }
    return coords;
}

void compute_kernel_basis(Resolution& res, std::size_t n) {
    ResolutionLevel& L = res.levels[n];
    LevelMaps lm = level_maps(L);
    // only the E-side generators span the proper blocks; partner generators
    // mix with them inside the kernel and index top classes of their own
    std::set<GenWord> new_single;
    for (const auto& ni : L.new_items)
        new_single.insert(GenWord{static_cast<std::uint32_t>(ni.e_gen)});
    for (int k = -1; k >= -res.depth; --k) {
        std::vector<GenWord> monos;
        for (const auto& w : graded_basis(L.algebra, k))
            if (!new_single.count(w)) monos.push_back(w);
        std::vector<Element> basis;
        for (const auto& mu : monos) {
            Element v;
            v.degree = k;
            v.terms[mu] = L.algebra.base().constant(1);
            for (std::size_t r = 1; r <= n; ++r) {
                // proper subsets of {0..n} of size r, lexicographic
                std::vector<int> subset(r);
                std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
                    if (pos == r) {
                        Element w = face_transport(res, n, subset, v);
                        auto coords = kernel_coordinates(res, r - 1, k, w);
                        auto blk = lm.blocks.find(std::make_pair(k, subset));
                        for (std::size_t l = 0; l < coords.size(); ++l) {
                            if (coords[l].is_zero()) continue;
                            if (blk == lm.blocks.end())
                                throw invariant_violation("missing generator block");
                            const auto& item = L.new_items[blk->second[l]];
                            Element gen = element_gen(L.algebra, item.e_gen);
                            // transport the coordinate through the canonical
                            // degeneracy collapsing onto the subset
                            Monotone pi(n + 1);
                            for (int i = 0; i <= static_cast<int>(n); ++i) {
                                int below = 0;
                                for (int a : subset)
                                    if (a <= i) ++below;
                                pi[i] = std::max(0, below - 1);
                            }
                            Tables tt = degeneracy_tables(res, r - 1, n, pi);
                            Polynomial c = coords[l].substitute(tt.vars, L.algebra.base().vars());
                            v = element_sub(L.algebra, v, element_scale(L.algebra, c, gen));
                        }
                        return;
                    }
                    for (int x = start; x <= static_cast<int>(n); ++x) {
                        subset[pos] = x;
                        rec(pos + 1, x + 1);
                    }
                };
                if (r <= n) rec(0, 0);
            }
            v = element_nf(L.algebra, v);
            v.degree = k;
            basis.push_back(std::move(v));
        }
        L.kernel_monomials[k] = std::move(monos);
        L.kernel_basis[k] = std::move(basis);
    }
}

// face image of one new item's E generator under the inclusion with image T
// (T proper in [n]); returns a level (r-1 = |T|-1 transported to n-1) element
Element new_gen_face_image(const Resolution& res, std::size_t n, const ResolutionLevel::NewItem& item,
                           const std::vector<int>& T, const Monotone& rho_prime) {
    std::size_t m = T.size() - 1;  // intermediate level of the mono part
    const ResolutionLevel& Lm = res.levels[m];
    const ResolutionLevel& Ldst = res.levels[n - 1];
    // subset containment
    std::vector<int> s_prime;
    for (int a : item.subset) {
        auto it = std::find(T.begin(), T.end(), a);
        if (it == T.end()) return element_zero(item.degree);  // killed
        s_prime.push_back(static_cast<int>(it - T.begin()));
    }
    if (s_prime.size() == T.size()) {
        // full: the canonical iso onto the kernel basis of level m
        const Element& v = res.levels[m].kernel_basis.at(item.degree)[item.index];
        if (is_identity(rho_prime)) return v;
        return degeneracy_transport(res, m, n - 1, rho_prime, v);
    }
    // proper: the matching block generator at level m
    LevelMaps lm = level_maps(Lm);
    auto blk = lm.blocks.find(std::make_pair(item.degree, s_prime));
    if (blk == lm.blocks.end() || blk->second.size() <= item.index)
        throw invariant_violation("face image block missing");
    std::size_t tgt_item = blk->second[item.index];
    std::size_t tgt_gen = Lm.new_items[tgt_item].e_gen;
    if (is_identity(rho_prime) && m == n - 1) return element_gen(Ldst.algebra, tgt_gen);
    // transport the generator through the degeneracy
    LevelMaps dm = level_maps(Ldst);
    auto key = gen_key_degenerate(rho_prime, m, tgt_item, false);
    auto it = dm.gen_lookup.find(key);
    if (it == dm.gen_lookup.end()) throw invariant_violation("missing degenerate image " + key);
    return element_gen(Ldst.algebra, it->second);
}

DgMorphism build_face(const Resolution& res, std::size_t n, std::size_t i) {
    const ResolutionLevel& L = res.levels[n];
    const ResolutionLevel& D = res.levels[n - 1];
    Monotone iota;  // [n-1] -> [n] missing i
    for (int v = 0; v <= static_cast<int>(n); ++v)
        if (v != static_cast<int>(i)) iota.push_back(v);

    LevelMaps dm = level_maps(D);
    std::vector<Element> gen_images(L.gen_info.size());
    std::vector<Polynomial> var_images(L.var_info.size(), Polynomial(D.algebra.base().vars()));

    // generators first; partner variables take differentials of E-images
    for (std::size_t g = 0; g < L.gen_info.size(); ++g) {
        const auto& gi = L.gen_info[g];
        if (gi.kind == ResolutionLevel::GenInfo::Kind::FromInput) {
            gen_images[g] = element_gen(D.algebra, gi.input_index);
            continue;
        }
        Monotone rho = (gi.kind == ResolutionLevel::GenInfo::Kind::Degenerate) ? gi.rho : Monotone();
        std::size_t src_level, src_item;
        bool partner;
        if (gi.kind == ResolutionLevel::GenInfo::Kind::Degenerate) {
            src_level = gi.src_level;
            src_item = gi.src_item;
            partner = gi.partner;
        } else {
            rho.resize(n + 1);
            for (int v = 0; v <= static_cast<int>(n); ++v) rho[v] = v;
            src_level = n;
            src_item = [&] {
                for (std::size_t it = 0; it < L.new_items.size(); ++it)
                    if (L.new_items[it].e_gen == g || L.new_items[it].f_gen == static_cast<long>(g))
                        return it;
                throw invariant_violation("orphan new generator");
            }();
            partner = gi.partner;
        }
        Monotone comp = compose_monotone(rho, iota);
        Monotone rho_prime;
        std::vector<int> T;
        epi_mono(comp, rho_prime, T);
        Element e_image;
        if (T.size() == src_level + 1) {
            // mono part is the identity: stays a (possibly new) generator
            std::size_t tgt;
            if (is_identity(rho_prime) && src_level == n - 1) {
                tgt = res.levels[n - 1].new_items[src_item].e_gen;
            } else {
                auto it = dm.gen_lookup.find(gen_key_degenerate(rho_prime, src_level, src_item, false));
                if (it == dm.gen_lookup.end())
                    throw invariant_violation("missing face target generator");
                tgt = it->second;
            }
            e_image = element_gen(D.algebra, tgt);
        } else {
            e_image = new_gen_face_image(res, n, res.levels[src_level].new_items[src_item], T,
                                         rho_prime);
        }
        if (!partner) {
            Element img = e_image;
            img.degree = L.algebra.gen(g).degree;
            gen_images[g] = img;
        } else {
            Element img = differential(D.algebra, e_image);
            img.degree = L.algebra.gen(g).degree;
            gen_images[g] = img;
        }
    }

    for (std::size_t v = 0; v < L.var_info.size(); ++v) {
        const auto& vi = L.var_info[v];
        if (vi.kind == ResolutionLevel::VarInfo::Kind::FromInput) {
            var_images[v] = D.algebra.base().var(vi.input_index);
            continue;
        }
        Monotone rho;
        std::size_t src_level, src_item;
        if (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate) {
            rho = vi.rho;
            src_level = vi.src_level;
            src_item = vi.src_item;
        } else {
            rho.resize(n + 1);
            for (int x = 0; x <= static_cast<int>(n); ++x) rho[x] = x;
            src_level = n;
            src_item = [&] {
                for (std::size_t it = 0; it < L.new_items.size(); ++it)
                    if (L.new_items[it].f_var == static_cast<long>(v)) return it;
                throw invariant_violation("orphan partner variable");
            }();
        }
        Monotone comp = compose_monotone(rho, iota);
        Monotone rho_prime;
        std::vector<int> T;
        epi_mono(comp, rho_prime, T);
        if (T.size() == src_level + 1) {
            auto it = dm.var_lookup.find(gen_key_degenerate(rho_prime, src_level, src_item, true));
            std::size_t tgt;
            if (it != dm.var_lookup.end()) {
                tgt = it->second;
            } else if (is_identity(rho_prime) && src_level == n - 1) {
                tgt = static_cast<std::size_t>(res.levels[n - 1].new_items[src_item].f_var);
            } else {
                throw invariant_violation("missing face target variable");
            }
            var_images[v] = D.algebra.base().var(tgt);
        } else {
            Element e_image = new_gen_face_image(res, n, res.levels[src_level].new_items[src_item], T,
                                                 rho_prime);
            Element d = differential(D.algebra, e_image);
            // degree-0 element: the empty-word coefficient is the polynomial
            Polynomial p(D.algebra.base().vars());
            auto itp = d.terms.find(GenWord{});
            if (itp != d.terms.end()) p = itp->second;
            var_images[v] = p;
        }
    }

    return DgMorphism::make(L.algebra, D.algebra, std::move(var_images), std::move(gen_images));
}

DgMorphism build_degeneracy(const Resolution& res, std::size_t n, std::size_t j) {
    // tau_j: [n+1] ->> [n]
    Monotone tau(n + 2);
    for (int v = 0; v <= static_cast<int>(n) + 1; ++v)
        tau[v] = (v <= static_cast<int>(j)) ? v : v - 1;
    Tables t = degeneracy_tables(res, n, n + 1, tau);
    return DgMorphism::make(res.levels[n].algebra, res.levels[n + 1].algebra, t.vars, t.gens);
}

void build_level(Resolution& res, std::size_t n) {
    const DgAlgebra& A = res.input;
    ResolutionLevel L;

    // --- variables ---
    VarNames vars(*A.base().vars());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        ResolutionLevel::VarInfo vi;
        vi.kind = ResolutionLevel::VarInfo::Kind::FromInput;
        vi.input_index = v;
        L.var_info.push_back(vi);
    }
    // degenerate partner variables
    for (std::size_t j = 1; j < n; ++j) {
        for (const auto& rho : surjections(static_cast<int>(n), static_cast<int>(j))) {
            const ResolutionLevel& src = res.levels[j];
            for (std::size_t it = 0; it < src.new_items.size(); ++it) {
                if (src.new_items[it].f_var < 0) continue;
                ResolutionLevel::VarInfo vi;
                vi.kind = ResolutionLevel::VarInfo::Kind::Degenerate;
                vi.rho = rho;
                vi.src_level = j;
                vi.src_item = it;
                L.var_info.push_back(vi);
                vars.push_back(degenerate_name(
                    rho, (*src.algebra.base().vars())[src.new_items[it].f_var]));
            }
        }
    }

    // --- generators: input + degenerate ---
    struct PendingGen {
        std::string name;
        int degree;
        ResolutionLevel::GenInfo info;
    };
    std::vector<PendingGen> pending;
    for (std::size_t g = 0; g < A.gen_count(); ++g) {
        ResolutionLevel::GenInfo gi;
        gi.kind = ResolutionLevel::GenInfo::Kind::FromInput;
        gi.input_index = g;
        pending.push_back({A.gen(g).name, A.gen(g).degree, gi});
    }
    for (std::size_t j = 1; j < n; ++j) {
        for (const auto& rho : surjections(static_cast<int>(n), static_cast<int>(j))) {
            const ResolutionLevel& src = res.levels[j];
            for (std::size_t it = 0; it < src.new_items.size(); ++it) {
                const auto& ni = src.new_items[it];
                ResolutionLevel::GenInfo gi;
                gi.kind = ResolutionLevel::GenInfo::Kind::Degenerate;
                gi.rho = rho;
                gi.src_level = j;
                gi.src_item = it;
                gi.partner = false;
                pending.push_back(
                    {degenerate_name(rho, src.algebra.gen(ni.e_gen).name), ni.degree, gi});
                if (ni.f_gen >= 0) {
                    ResolutionLevel::GenInfo gf = gi;
                    gf.partner = true;
                    pending.push_back({degenerate_name(rho, src.algebra.gen(ni.f_gen).name),
                                       ni.degree + 1, gf});
                }
            }
        }
    }

    // --- new blocks ---
    struct NewPlan {
        int degree;
        std::vector<int> subset;
        std::size_t index;
    };
    std::vector<NewPlan> plans;
    if (n >= 1) {
        for (int k = -1; k >= -res.depth; --k) {
            // nonempty proper subsets of {0..n}, by size then lex
            for (std::size_t r = 1; r <= n; ++r) {
                std::vector<int> subset(r);
                std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
                    if (pos == r) {
                        auto itk = res.levels[r - 1].kernel_basis.find(k);
                        std::size_t rank =
                            (itk == res.levels[r - 1].kernel_basis.end()) ? 0 : itk->second.size();
                        for (std::size_t l = 0; l < rank; ++l) plans.push_back({k, subset, l});
                        return;
                    }
                    for (int x = start; x <= static_cast<int>(n); ++x) {
                        subset[pos] = x;
                        rec(pos + 1, x + 1);
                    }
                };
                rec(0, 0);
            }
        }
    }

    for (const auto& p : plans) {
        std::string stem = std::to_string(n) + "_" + digits(p.subset) + "_" +
                           std::to_string(-p.degree) + "_" + std::to_string(p.index);
        ResolutionLevel::GenInfo ge;
        ge.kind = ResolutionLevel::GenInfo::Kind::NewGen;
        ge.degree = p.degree;
        ge.subset = p.subset;
        ge.index = p.index;
        ge.partner = false;
        pending.push_back({"e" + stem, p.degree, ge});
        ResolutionLevel::NewItem item;
        item.degree = p.degree;
        item.subset = p.subset;
        item.index = p.index;
        item.e_gen = pending.size() - 1 + 0;  // positions fixed below
        if (p.degree == -1) {
            ResolutionLevel::VarInfo vi;
            vi.kind = ResolutionLevel::VarInfo::Kind::NewPartner;
            vi.subset = p.subset;
            vi.index = p.index;
            L.var_info.push_back(vi);
            vars.push_back("f" + stem);
            item.f_var = static_cast<long>(vars.size() - 1);
        } else {
            ResolutionLevel::GenInfo gf = ge;
            gf.partner = true;
            pending.push_back({"f" + stem, p.degree + 1, gf});
            item.f_gen = static_cast<long>(pending.size() - 1);
        }
        L.new_items.push_back(item);
    }

    // fix e_gen/f_gen indices (pending positions are final generator indices)
    {
        std::size_t cursor = 0;
        for (auto& item : L.new_items) {
            while (cursor < pending.size()) {
                const auto& pg = pending[cursor];
                if (pg.info.kind == ResolutionLevel::GenInfo::Kind::NewGen && !pg.info.partner &&
                    pg.info.degree == item.degree && pg.info.subset == item.subset &&
                    pg.info.index == item.index)
                    break;
                ++cursor;
            }
            item.e_gen = cursor;
            if (item.f_gen >= 0) item.f_gen = static_cast<long>(cursor + 1);
            ++cursor;
        }
    }

    BaseRing ring = BaseRing::make(vars, [&] {
        std::vector<Polynomial> rel;
        auto reg = std::make_shared<const VarNames>(vars);
        std::vector<std::size_t> var_map(A.base().arity());
        for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = i;
        for (const auto& r : A.base().relations()) rel.push_back(r.relabel(reg, var_map));
        return rel;
    }(), A.base().order());

    // shell algebra with zero differentials, then assign them
    std::vector<Generator> gens;
    for (const auto& pg : pending) gens.push_back({pg.name, pg.degree, element_zero(pg.degree + 1)});
    DgAlgebra shell = DgAlgebra::make(ring, gens);

    auto reg = shell.base().vars();
    std::vector<std::size_t> var_map(A.base().arity());
    for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = i;

    for (std::size_t g = 0; g < pending.size(); ++g) {
        const auto& info = pending[g].info;
        Element diff = element_zero(pending[g].degree + 1);
        if (info.kind == ResolutionLevel::GenInfo::Kind::FromInput) {
            const Element& d = A.gen(info.input_index).diff;
            diff.degree = d.degree;
            for (const auto& [w, c] : d.terms) diff.terms[w] = c.relabel(reg, var_map);
        } else if (info.kind == ResolutionLevel::GenInfo::Kind::Degenerate) {
            if (!info.partner) {
                // differential of the degenerate E copy: the degenerate partner
                const auto& srcitem = res.levels[info.src_level].new_items[info.src_item];
                if (srcitem.f_var >= 0) {
                    // partner is a variable: find its degenerate copy
                    std::string nm = degenerate_name(
                        info.rho, (*res.levels[info.src_level].algebra.base().vars())[srcitem.f_var]);
                    auto idx = shell.base().var_index(nm);
                    if (!idx) throw invariant_violation("missing degenerate partner variable " + nm);
                    diff = element_from_poly(shell, shell.base().var(*idx));
                } else {
                    std::string nm = degenerate_name(
                        info.rho, res.levels[info.src_level].algebra.gen(srcitem.f_gen).name);
                    auto idx = shell.gen_index(nm);
                    if (!idx) throw invariant_violation("missing degenerate partner " + nm);
                    diff = element_gen(shell, *idx);
                }
            }
        } else if (!info.partner) {
            // new E generator: differential is the partner
            const auto& item = *std::find_if(L.new_items.begin(), L.new_items.end(), [&](auto& it) {
                return it.degree == info.degree && it.subset == info.subset && it.index == info.index;
            });
            if (item.f_var >= 0)
                diff = element_from_poly(shell, shell.base().var(item.f_var));
            else
                diff = element_gen(shell, item.f_gen);
        }
        diff.degree = pending[g].degree + 1;
        gens[g].diff = diff;
        L.gen_info.push_back(info);
    }

    L.algebra = DgAlgebra::make(ring, std::move(gens));
    res.levels.push_back(std::move(L));
}

}  // namespace

Resolution resolve(const DgAlgebra& A, int levels, int depth) {
    if (levels < 0) throw context_error("level count must be nonnegative");
    if (depth < 1) throw context_error("construction depth must be positive");
    for (std::size_t g = 0; g < A.gen_count(); ++g)
        if (A.gen(g).name.size() && (A.gen(g).name[0] == 's') && A.gen(g).name.find('_') != std::string::npos) {
            // degenerate-name prefix collisions are renamed away by uniqueness
            // checks in DgAlgebra::make; nothing to do here
            break;
        }
    Resolution res;
    res.input = A;
    res.depth = depth;

    // level 0 is the input itself
    ResolutionLevel L0;
    L0.algebra = A;
    for (std::size_t v = 0; v < A.base().arity(); ++v) {
        ResolutionLevel::VarInfo vi;
        vi.kind = ResolutionLevel::VarInfo::Kind::FromInput;
        vi.input_index = v;
        L0.var_info.push_back(vi);
    }
    for (std::size_t g = 0; g < A.gen_count(); ++g) {
        ResolutionLevel::GenInfo gi;
        gi.kind = ResolutionLevel::GenInfo::Kind::FromInput;
        gi.input_index = g;
        L0.gen_info.push_back(gi);
    }
    res.levels.push_back(std::move(L0));
    res.face.emplace_back();   // no faces at level 0
    res.degen.emplace_back();  // filled when level 1 exists
    compute_kernel_basis(res, 0);

    for (int n = 1; n <= levels; ++n) {
        build_level(res, static_cast<std::size_t>(n));
        // faces of level n
        std::vector<DgMorphism> faces;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
            faces.push_back(build_face(res, static_cast<std::size_t>(n), i));
        res.face.push_back(std::move(faces));
        // degeneracies level n-1 -> n
        std::vector<DgMorphism> degs;
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
            degs.push_back(build_degeneracy(res, static_cast<std::size_t>(n) - 1, j));
        res.degen[n - 1] = std::move(degs);
        res.degen.emplace_back();
        compute_kernel_basis(res, static_cast<std::size_t>(n));
    }
    return res;
}

std::map<int, std::size_t> new_generator_counts(const Resolution& res, std::size_t level) {
    std::map<int, std::size_t> out;
    const auto& L = res.levels[level];
    for (const auto& ni : L.new_items) {
        out[ni.degree] += 1;                      // E generator
        out[ni.degree + 1] += 1;                  // partner (variable when degree+1 == 0)
    }
    return out;
}

std::size_t expected_block_rank(const Resolution& res, std::size_t level, int degree) {
    // Σ_{j=0}^{level-1} C(level+1, j+1) · rank of the kernel basis at level j
    auto binom = [](std::size_t n, std::size_t k) {
        if (k > n) return static_cast<std::size_t>(0);
        std::size_t r = 1;
        for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };
    std::size_t total = 0;
    for (std::size_t j = 0; j + 1 <= level; ++j) {
        auto it = res.levels[j].kernel_basis.find(degree);
        std::size_t rank = (it == res.levels[j].kernel_basis.end()) ? 0 : it->second.size();
        total += binom(level + 1, j + 1) * rank;
    }
    return total;
}

MatchingObject matching_object(const Resolution& res, std::size_t n) {
    if (n < 1 || n >= res.levels.size()) throw context_error("matching level out of range");
    MatchingObject m;
    m.level = n;
    m.components = n + 1;
    m.constraints = (n >= 2) ? n * (n + 1) / 2 : 0;
    m.tuple_map_consistent = true;
    if (n >= 2) {
        const DgAlgebra& L = res.levels[n].algebra;
        for (std::size_t g = 0; g < L.gen_count() && m.tuple_map_consistent; ++g) {
            Element e = element_gen(L, g);
            for (std::size_t i = 0; i < n && m.tuple_map_consistent; ++i) {
                for (std::size_t j = i + 1; j <= n; ++j) {
                    Element lhs = res.face[n - 1][i].apply(res.face[n][j].apply(e));
                    Element rhs = res.face[n - 1][j - 1].apply(res.face[n][i].apply(e));
                    if (!element_equal(res.levels[n - 2].algebra, lhs, rhs)) {
                        m.tuple_map_consistent = false;
                        break;
                    }
                }
            }
        }
    }
    return m;
}

namespace {

// numeric matrix of a morphism between graded pieces, specialized at a
// coherent pair of points (src_point = dst_point ∘ phi on the bases)
QMatrix numeric_face_matrix(const DgMorphism& phi, int k, const QVector& dst_point) {
    const DgAlgebra& src = phi.src();
    const DgAlgebra& dst = phi.dst();
    auto src_basis = graded_basis(src, k);
    auto dst_basis = graded_basis(dst, k);
    std::map<GenWord, std::size_t> row;
    for (std::size_t r = 0; r < dst_basis.size(); ++r) row[dst_basis[r]] = r;
    QMatrix m(dst_basis.size(), QVector(src_basis.size(), Rational(0)));
    for (std::size_t c = 0; c < src_basis.size(); ++c) {
        Element e;
        e.degree = k;
        e.terms[src_basis[c]] = src.base().constant(1);
        Element img = phi.apply(e);
        for (const auto& [w, poly] : img.terms) {
            auto it = row.find(w);
            if (it == row.end()) throw invariant_violation("fiber image off the graded basis");
            m[it->second][c] = poly.eval(dst_point);
        }
    }
    return m;
}

}  // namespace

QVector vertex_point(const Resolution& res, std::size_t level, std::size_t vertex,
                     const RationalPoint& input_point) {
    const ResolutionLevel& L = res.levels[level];
    QVector out(L.algebra.base().arity(), Rational(0));
    std::vector<int> T = {static_cast<int>(vertex)};
    for (std::size_t v = 0; v < out.size(); ++v) {
        Element e = element_from_poly(L.algebra, L.algebra.base().var(v));
        Element down = (level == 0) ? e : face_transport(res, level, T, e);
        Polynomial p(res.input.base().vars());
        auto it = down.terms.find(GenWord{});
        if (it != down.terms.end()) p = it->second;
        out[v] = p.eval(input_point.values);
    }
    return out;
}

namespace {

// q_src must equal q_dst ∘ phi^0; exactness of every fiber matrix rests on it
void check_coherent(const DgMorphism& phi, const QVector& q_src, const QVector& q_dst) {
    for (std::size_t v = 0; v < q_src.size(); ++v)
        if (phi.var_images()[v].eval(q_dst) != q_src[v])
            throw invariant_violation("incoherent specialization of a face map");
}

}  // namespace

MatchingLayer matching_layer(const Resolution& res, std::size_t n, int degree,
                             const RationalPoint& input_point, std::size_t vertex) {
    if (n < 1 || n >= res.levels.size()) throw context_error("matching level out of range");
    if (vertex > n) throw context_error("vertex out of range");
    MatchingLayer out;
    out.degree = degree;
    out.vertex = vertex;
    const ResolutionLevel& Lm = res.levels[n - 1];
    std::size_t dim_m = graded_basis(Lm.algebra, degree).size();

    // surviving components: faces T_i = [n] minus {i} with i != vertex
    std::vector<std::size_t> comps;
    for (std::size_t i = 0; i <= n; ++i)
        if (i != vertex) comps.push_back(i);
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t b = 0; b < comps.size(); ++b) slot[comps[b]] = b;

    QVector q_top = vertex_point(res, n, vertex, input_point);
    std::map<std::size_t, QVector> q_comp;
    for (auto i : comps) {
        std::size_t pos = (i > vertex) ? vertex : vertex - 1;
        q_comp[i] = vertex_point(res, n - 1, pos, input_point);
        check_coherent(res.face[n][i], q_top, q_comp[i]);
    }

    std::size_t total = comps.size() * dim_m;
    QMatrix constraints;
    if (n >= 2 && total > 0) {
        std::size_t dim_l = graded_basis(res.levels[n - 2].algebra, degree).size();
        for (std::size_t a = 0; a < comps.size(); ++a) {
            for (std::size_t b = a + 1; b < comps.size(); ++b) {
                std::size_t i = comps[a], j = comps[b];  // i < j, both != vertex
                // shared face omits both i and j; position of the vertex there
                std::size_t pos = 0;
                for (std::size_t v = 0; v <= n; ++v) {
                    if (v == i || v == j) continue;
                    if (v == vertex) break;
                    ++pos;
                }
                QVector q_shared = vertex_point(res, n - 2, pos, input_point);
                check_coherent(res.face[n - 1][i], q_comp[j], q_shared);
                check_coherent(res.face[n - 1][j - 1], q_comp[i], q_shared);
                QMatrix Fi = numeric_face_matrix(res.face[n - 1][i], degree, q_shared);
                QMatrix Fj = numeric_face_matrix(res.face[n - 1][j - 1], degree, q_shared);
                for (std::size_t r = 0; r < dim_l; ++r) {
                    QVector row(total, Rational(0));
                    for (std::size_t c = 0; c < dim_m; ++c) {
                        row[slot[j] * dim_m + c] += Fi[r][c];
                        row[slot[i] * dim_m + c] -= Fj[r][c];
                    }
                    constraints.push_back(std::move(row));
                }
            }
        }
    }
    out.matching_dim = constraints.empty() ? total : total - rank(constraints);

    std::size_t dim_n = graded_basis(res.levels[n].algebra, degree).size();
    std::map<std::size_t, QMatrix> Fn;
    for (auto i : comps) Fn[i] = numeric_face_matrix(res.face[n][i], degree, q_comp[i]);
    QMatrix image;
    for (std::size_t c = 0; c < dim_n; ++c) {
        QVector vec(total, Rational(0));
        for (auto i : comps)
            for (std::size_t r = 0; r < dim_m; ++r) vec[slot[i] * dim_m + r] = Fn[i][r][c];
        image.push_back(std::move(vec));
    }
    out.image_rank = rank(image);
    return out;
}

LatchingObject latching_object(const Resolution& res, std::size_t n) {
    if (n >= res.levels.size()) throw context_error("latching level out of range");
    const ResolutionLevel& L = res.levels[n];
    if (n == 0) {
        LatchingObject out{res.input, DgMorphism::identity(res.input)};
        return out;
    }
    // subalgebra on input + degenerate items
    VarNames vars;
    std::vector<std::size_t> var_embed;  // latching var -> level var
    for (std::size_t v = 0; v < L.var_info.size(); ++v) {
        if (L.var_info[v].kind == ResolutionLevel::VarInfo::Kind::NewPartner) continue;
        vars.push_back((*L.algebra.base().vars())[v]);
        var_embed.push_back(v);
    }
    auto reg = std::make_shared<const VarNames>(vars);
    std::vector<std::size_t> down(L.algebra.base().arity(), SIZE_MAX);
    for (std::size_t i = 0; i < var_embed.size(); ++i) down[var_embed[i]] = i;
    std::vector<Polynomial> rel;
    for (const auto& r : res.input.base().relations()) {
        std::vector<std::size_t> m(res.input.base().arity());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
        rel.push_back(r.relabel(reg, m));
    }
    BaseRing ring = BaseRing::make(vars, std::move(rel), res.input.base().order());

    std::vector<std::size_t> gen_embed;
    for (std::size_t g = 0; g < L.gen_info.size(); ++g)
        if (L.gen_info[g].kind != ResolutionLevel::GenInfo::Kind::NewGen) gen_embed.push_back(g);
    std::vector<std::size_t> gen_down(L.algebra.gen_count(), SIZE_MAX);
    for (std::size_t i = 0; i < gen_embed.size(); ++i) gen_down[gen_embed[i]] = i;

    std::vector<Generator> gens;
    for (auto g : gen_embed) {
        const Generator& src = L.algebra.gen(g);
        Element diff;
        diff.degree = src.diff.degree;
        for (const auto& [w, c] : src.diff.terms) {
            GenWord nw;
            for (auto gi : w) {
                if (gen_down[gi] == SIZE_MAX)
                    throw invariant_violation("degenerate differential uses a new generator");
                nw.push_back(static_cast<std::uint32_t>(gen_down[gi]));
            }
            Monomial mono;  // relabel coefficient
            Polynomial down_c(reg);
            for (const auto& [m, coeff] : c.terms()) {
                Monomial nm(vars.size(), 0);
                for (std::size_t v = 0; v < m.size(); ++v) {
                    if (m[v] == 0) continue;
                    if (down[v] == SIZE_MAX)
                        throw invariant_violation("degenerate differential uses a new variable");
                    nm[down[v]] = m[v];
                }
                down_c.add_term(nm, coeff);
            }
            diff.terms[nw] = down_c;
        }
        gens.push_back({src.name, src.degree, diff});
    }
    DgAlgebra latch = DgAlgebra::make(ring, std::move(gens));
    std::vector<Polynomial> vi;
    for (auto v : var_embed) vi.push_back(L.algebra.base().var(v));
    std::vector<Element> gi;
    for (auto g : gen_embed) gi.push_back(element_gen(L.algebra, g));
    DgMorphism incl = DgMorphism::make(latch, L.algebra, std::move(vi), std::move(gi));
    return {latch, incl};
}

Skeleton skeleton(const Resolution& res, std::size_t n_plus_1, std::size_t j) {
    if (n_plus_1 < 1 || j + 1 > n_plus_1) throw context_error("skeleton indices out of range");
    if (j >= res.levels.size()) throw context_error("skeleton needs level j built");
    Skeleton sk;
    sk.level = n_plus_1;
    sk.j = j;
    std::vector<int> subset(j + 1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
        if (pos == j + 1) {
            sk.faces.push_back(subset);
            return;
        }
        for (int x = start; x <= static_cast<int>(n_plus_1); ++x) {
            subset[pos] = x;
            rec(pos + 1, x + 1);
        }
    };
    rec(0, 0);
    std::size_t pairs = 0;
    if (j >= 1) {
        for (std::size_t a = 0; a < sk.faces.size(); ++a)
            for (std::size_t b = a + 1; b < sk.faces.size(); ++b) {
                std::vector<int> inter;
                std::set_intersection(sk.faces[a].begin(), sk.faces[a].end(), sk.faces[b].begin(),
                                      sk.faces[b].end(), std::back_inserter(inter));
                if (inter.size() == j) ++pairs;
            }
    }
    sk.constraints = pairs;
    sk.equals_matching = (j + 1 == n_plus_1);
    // canonical tuple map from level n+1 when built
    sk.tuple_map_consistent = true;
    if (j >= 1 && n_plus_1 < res.levels.size()) {
        const DgAlgebra& top = res.levels[n_plus_1].algebra;
        for (std::size_t g = 0; g < top.gen_count() && sk.tuple_map_consistent; ++g) {
            Element e = element_gen(top, g);
            for (std::size_t a = 0; a < sk.faces.size() && sk.tuple_map_consistent; ++a) {
                for (std::size_t b = a + 1; b < sk.faces.size(); ++b) {
                    std::vector<int> inter;
                    std::set_intersection(sk.faces[a].begin(), sk.faces[a].end(), sk.faces[b].begin(),
                                          sk.faces[b].end(), std::back_inserter(inter));
                    if (inter.size() != j) continue;
                    Element ea = face_transport(res, n_plus_1, sk.faces[a], e);
                    Element eb = face_transport(res, n_plus_1, sk.faces[b], e);
                    // restrict further to the shared (j-1)-face
                    auto pos_of = [&](const std::vector<int>& F) {
                        std::vector<int> pos;
                        for (int x : inter)
                            pos.push_back(static_cast<int>(
                                std::find(F.begin(), F.end(), x) - F.begin()));
                        return pos;
                    };
                    Element ra = face_transport(res, j, pos_of(sk.faces[a]), ea);
                    Element rb = face_transport(res, j, pos_of(sk.faces[b]), eb);
                    if (!element_equal(res.levels[j - 1].algebra, ra, rb))
                        sk.tuple_map_consistent = false;
                }
            }
        }
    }
    return sk;
}

std::size_t skeleton_layer_dim(const Resolution& res, const Skeleton& sk, int degree,
                               const RationalPoint& input_point, std::size_t vertex) {
    const ResolutionLevel& Lj = res.levels[sk.j];
    std::size_t dim_j = graded_basis(Lj.algebra, degree).size();
    // surviving components: faces containing the vertex
    std::vector<std::size_t> comps;
    for (std::size_t a = 0; a < sk.faces.size(); ++a)
        if (std::find(sk.faces[a].begin(), sk.faces[a].end(), static_cast<int>(vertex)) !=
            sk.faces[a].end())
            comps.push_back(a);
    std::size_t total = comps.size() * dim_j;
    if (sk.j == 0 || total == 0) return total;

    std::map<std::size_t, std::size_t> slot;
    for (std::size_t b = 0; b < comps.size(); ++b) slot[comps[b]] = b;
    std::map<std::size_t, QVector> q_comp;
    for (auto a : comps) {
        std::size_t pos = static_cast<std::size_t>(
            std::find(sk.faces[a].begin(), sk.faces[a].end(), static_cast<int>(vertex)) -
            sk.faces[a].begin());
        q_comp[a] = vertex_point(res, sk.j, pos, input_point);
    }
    std::size_t dim_d = graded_basis(res.levels[sk.j - 1].algebra, degree).size();
    QMatrix constraints;
    for (std::size_t a = 0; a < comps.size(); ++a)
        for (std::size_t b = a + 1; b < comps.size(); ++b) {
            std::vector<int> inter;
            std::set_intersection(sk.faces[comps[a]].begin(), sk.faces[comps[a]].end(),
                                  sk.faces[comps[b]].begin(), sk.faces[comps[b]].end(),
                                  std::back_inserter(inter));
            if (inter.size() != sk.j) continue;
            auto missing_pos = [&](const std::vector<int>& fa) {
                for (std::size_t p = 0; p < fa.size(); ++p)
                    if (std::find(inter.begin(), inter.end(), fa[p]) == inter.end()) return p;
                return fa.size();
            };
            std::size_t ia = missing_pos(sk.faces[comps[a]]);
            std::size_t ib = missing_pos(sk.faces[comps[b]]);
            std::size_t vpos = static_cast<std::size_t>(
                std::find(inter.begin(), inter.end(), static_cast<int>(vertex)) - inter.begin());
            QVector q_shared = vertex_point(res, sk.j - 1, vpos, input_point);
            QMatrix Fa = numeric_face_matrix(res.face[sk.j][ia], degree, q_shared);
            QMatrix Fb = numeric_face_matrix(res.face[sk.j][ib], degree, q_shared);
            for (std::size_t r = 0; r < dim_d; ++r) {
                QVector row(total, Rational(0));
                for (std::size_t c = 0; c < dim_j; ++c) {
                    row[slot[comps[a]] * dim_j + c] += Fa[r][c];
                    row[slot[comps[b]] * dim_j + c] -= Fb[r][c];
                }
                constraints.push_back(std::move(row));
            }
        }
    return constraints.empty() ? total : total - rank(constraints);
}

std::vector<std::string> check_simplicial_identities(const Resolution& res) {
    std::vector<std::string> failures;
    std::size_t N = res.levels.size() - 1;
    auto note = [&](const std::string& s) { failures.push_back(s); };
    // face-face
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t i = 0; i + 1 <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                if (!morphism_equal(compose(res.face[n - 1][i], res.face[n][j]),
                                    compose(res.face[n - 1][j - 1], res.face[n][i])))
                    note("face-face failure at level " + std::to_string(n) + " (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
    // degeneracy-degeneracy: tau_i tau_j with i <= j
    for (std::size_t n = 0; n + 2 <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j)
                if (!morphism_equal(compose(res.degen[n + 1][i], res.degen[n][j]),
                                    compose(res.degen[n + 1][j + 1], res.degen[n][i])))
                    note("degeneracy-degeneracy failure at level " + std::to_string(n));
    // mixed
    for (std::size_t n = 1; n <= N - 1 && N >= 1; ++n) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i <= n; ++i) {
                DgMorphism lhs = compose(res.face[n][i], res.degen[n - 1][j]);
                if (i < j) {
                    if (n >= 2 && !morphism_equal(lhs, compose(res.degen[n - 2][j - 1],
                                                               res.face[n - 1][i])))
                        note("face-degeneracy failure (i<j) at level " + std::to_string(n));
                } else if (i == j || i == j + 1) {
                    if (!morphism_equal(lhs, DgMorphism::identity(res.levels[n - 1].algebra)))
                        note("face-degeneracy failure (identity case) at level " + std::to_string(n));
                } else {
                    if (n >= 2 && !morphism_equal(lhs, compose(res.degen[n - 2][j],
                                                               res.face[n - 1][i - 1])))
                        note("face-degeneracy failure (i>j+1) at level " + std::to_string(n));
                }
            }
        }
    }
    return failures;
}

SpecialReport verify_special(const Resolution& res, const std::vector<RationalPoint>& samples,
                             int depth) {
    SpecialReport report;
    // zero-H^0-fiber flags on the input
    BaseRing h0 = h0_ring(res.input);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        check_point(res.input, samples[s]);
        for (const auto& g : h0.relations())
            if (g.eval(samples[s].values) != 0) {
                report.zero_h0_samples.push_back(s);
                break;
            }
    }
    auto id_failures = check_simplicial_identities(res);

    for (std::size_t n = 1; n < res.levels.size(); ++n) {
        SpecialReport::LevelEntry entry;
        entry.level = n;
        // (a) free extension on acyclic two-term pairs
        entry.pairing_ok = true;
        const ResolutionLevel& L = res.levels[n];
        for (const auto& item : L.new_items) {
            const Element& d = L.algebra.gen(item.e_gen).diff;
            bool ok;
            if (item.f_var >= 0) {
                Polynomial expect = L.algebra.base().var(item.f_var);
                ok = d.terms.size() == 1 && d.terms.begin()->first == GenWord{} &&
                     d.terms.begin()->second == expect;
            } else {
                ok = d.terms.size() == 1 &&
                     d.terms.begin()->first ==
                         GenWord{static_cast<std::uint32_t>(item.f_gen)} &&
                     d.terms.begin()->second.is_one() &&
                     L.algebra.gen(item.f_gen).diff.is_zero();
            }
            if (!ok) {
                entry.pairing_ok = false;
                entry.failures.push_back("generator pair broken at level " + std::to_string(n));
            }
        }
        entry.identities_ok = id_failures.empty();
        for (const auto& f : id_failures) entry.failures.push_back(f);
        // (c) fiberwise layer surjectivity onto the matching object
        for (int k = -1; k >= -depth; --k) {
            for (const auto& p : samples) {
                for (std::size_t v = 0; v <= n; ++v) {
                    MatchingLayer layer = matching_layer(res, n, k, p, v);
                    if (!layer.surjective()) {
                        entry.surjective_everywhere = false;
                        entry.failures.push_back("matching fiber not hit at level " +
                                                 std::to_string(n) + ", degree " + std::to_string(k) +
                                                 ", vertex " + std::to_string(v));
                    }
                    entry.layers.push_back(layer);
                }
            }
        }
        report.levels.push_back(std::move(entry));
    }
    return report;
}

std::vector<DgMorphism> induced_resolution_maps(const Resolution& resA, const Resolution& resB,
                                                const DgMorphism& phi) {
    if (resA.levels.size() != resB.levels.size())
        throw context_error("resolutions have different level counts");
    if (!phi.src().structurally_equal(resA.input) || !phi.dst().structurally_equal(resB.input))
        throw context_error("morphism endpoints do not match the resolutions");
    std::vector<DgMorphism> maps;
    maps.push_back(phi);
    for (std::size_t n = 1; n < resA.levels.size(); ++n) {
        const ResolutionLevel& LA = resA.levels[n];
        const ResolutionLevel& LB = resB.levels[n];
        LevelMaps mb = level_maps(LB);
        std::vector<Polynomial> var_images(LA.var_info.size(),
                                           Polynomial(LB.algebra.base().vars()));
        std::vector<Element> gen_images(LA.gen_info.size());

        // input part
        std::vector<std::size_t> relabel_map(phi.dst().base().arity());
        for (std::size_t i = 0; i < relabel_map.size(); ++i) relabel_map[i] = i;
        // generators: new E blocks first need kernel coordinates
        for (std::size_t g = 0; g < LA.gen_info.size(); ++g) {
            const auto& gi = LA.gen_info[g];
            if (gi.kind == ResolutionLevel::GenInfo::Kind::FromInput) {
                Element img = phi.gen_images()[gi.input_index];
                // lift into level n of B (input generators are the prefix)
                Element lifted;
                lifted.degree = img.degree;
                for (const auto& [w, c] : img.terms)
                    lifted.terms[w] = c.relabel(LB.algebra.base().vars(), relabel_map);
                gen_images[g] = lifted;
            } else if (gi.kind == ResolutionLevel::GenInfo::Kind::Degenerate) {
                const ResolutionLevel& srcB = resB.levels[gi.src_level];
                const auto& srcA_item = resA.levels[gi.src_level].new_items[gi.src_item];
                std::size_t a_gen = gi.partner ? srcA_item.f_gen : srcA_item.e_gen;
                Element low = maps[gi.src_level].apply(
                    element_gen(resA.levels[gi.src_level].algebra, a_gen));
                gen_images[g] = degeneracy_transport(resB, gi.src_level, n, gi.rho, low);
                (void)srcB;
            } else if (!gi.partner) {
                std::size_t j = gi.subset.size() - 1;
                const Element& vA = resA.levels[j].kernel_basis.at(gi.degree)[gi.index];
                Element u = maps[j].apply(vA);
                auto coords = kernel_coordinates(resB, j, gi.degree, u);
                Element img = element_zero(gi.degree);
                auto blk = mb.blocks.find(std::make_pair(gi.degree, gi.subset));
                for (std::size_t m = 0; m < coords.size(); ++m) {
                    if (coords[m].is_zero()) continue;
                    if (blk == mb.blocks.end()) throw invariant_violation("missing target block");
                    Monotone pi(n + 1);
                    for (int x = 0; x <= static_cast<int>(n); ++x) {
                        int below = 0;
                        for (int a : gi.subset)
                            if (a <= x) ++below;
                        pi[x] = std::max(0, below - 1);
                    }
                    Tables tt = degeneracy_tables(resB, j, n, pi);
                    Polynomial c = coords[m].substitute(tt.vars, LB.algebra.base().vars());
                    img = element_add(LB.algebra, img,
                                      element_scale(LB.algebra, c,
                                                    element_gen(LB.algebra,
                                                                LB.new_items[blk->second[m]].e_gen)));
                }
                img.degree = gi.degree;
                gen_images[g] = img;
            }
        }
        // partner generators: differentials of the E images
        for (std::size_t g = 0; g < LA.gen_info.size(); ++g) {
            const auto& gi = LA.gen_info[g];
            if (gi.kind != ResolutionLevel::GenInfo::Kind::NewGen || !gi.partner) continue;
            // find the buddy item
            for (const auto& item : LA.new_items) {
                if (item.f_gen == static_cast<long>(g)) {
                    Element d = differential(LB.algebra, gen_images[item.e_gen]);
                    d.degree = gi.degree + 1;
                    gen_images[g] = d;
                    break;
                }
            }
        }
        // variables
        for (std::size_t v = 0; v < LA.var_info.size(); ++v) {
            const auto& vi = LA.var_info[v];
            if (vi.kind == ResolutionLevel::VarInfo::Kind::FromInput) {
                var_images[v] =
                    phi.var_images()[vi.input_index].relabel(LB.algebra.base().vars(), relabel_map);
            } else if (vi.kind == ResolutionLevel::VarInfo::Kind::Degenerate) {
                const auto& srcA_item = resA.levels[vi.src_level].new_items[vi.src_item];
                Polynomial low = maps[vi.src_level].apply(
                    resA.levels[vi.src_level].algebra.base().var(srcA_item.f_var));
                Tables tt = degeneracy_tables(resB, vi.src_level, n, vi.rho);
                var_images[v] = low.substitute(tt.vars, LB.algebra.base().vars());
            } else {
                // partner of a new E generator: differential of its image
                for (const auto& item : LA.new_items) {
                    if (item.f_var == static_cast<long>(v)) {
                        Element d = differential(LB.algebra, gen_images[item.e_gen]);
                        Polynomial p(LB.algebra.base().vars());
                        auto it = d.terms.find(GenWord{});
                        if (it != d.terms.end()) p = it->second;
                        var_images[v] = p;
                        break;
                    }
                }
            }
        }
        maps.push_back(DgMorphism::make(LA.algebra, LB.algebra, std::move(var_images),
                                        std::move(gen_images)));
    }
    return maps;
}

std::optional<bool> matching_surjectivity_symbolic(const Resolution& res, std::size_t n, int degree,
                                                   std::size_t size_gate) {
    if (n < 1 || n >= res.levels.size()) throw context_error("matching level out of range");
    if (n != 1) return std::nullopt;  // symbolic route covers the product case only
    const ResolutionLevel& Ln = res.levels[1];
    const ResolutionLevel& Lm = res.levels[0];
    const BaseRing& R = Ln.algebra.base();
    auto basis_m = graded_basis(Lm.algebra, degree);
    auto basis_n = graded_basis(Ln.algebra, degree);
    std::size_t dim = basis_m.size();
    std::size_t total = 2 * dim;
    if (total == 0) return true;
    if (total > size_gate || basis_n.size() > size_gate) return std::nullopt;

    // target components carry the sigma_i-twisted module structure; its kernel
    // is generated by v - tau(sigma(v)) on the level-1 variables
    std::vector<Column> span;
    for (std::size_t i = 0; i <= 1; ++i) {
        const DgMorphism& sigma = res.face[1][i];
        const DgMorphism& tau = res.degen[0][0];
        for (std::size_t v = 0; v < R.arity(); ++v) {
            Polynomial ker_gen = R.var(v) - tau.apply(sigma.var_images()[v]);
            if (ker_gen.is_zero()) continue;
            for (std::size_t w = 0; w < dim; ++w) {
                Column c(total, Polynomial(R.vars()));
                c[i * dim + w] = ker_gen;
                span.push_back(std::move(c));
            }
        }
    }
    std::map<GenWord, std::size_t> row_m;
    for (std::size_t r = 0; r < basis_m.size(); ++r) row_m[basis_m[r]] = r;
    // lift of level-0 coefficients through the degeneracy
    const DgMorphism& tau0 = res.degen[0][0];
    for (const auto& w : basis_n) {
        Element e;
        e.degree = degree;
        e.terms[w] = R.constant(1);
        Column c(total, Polynomial(R.vars()));
        for (std::size_t i = 0; i <= 1; ++i) {
            Element img = res.face[1][i].apply(e);
            for (const auto& [word, poly] : img.terms)
                c[i * dim + row_m.at(word)] = tau0.apply(poly);
        }
        span.push_back(std::move(c));
    }
    for (std::size_t i = 0; i <= 1; ++i) {
        for (std::size_t w = 0; w < dim; ++w) {
            Column target(total, Polynomial(R.vars()));
            target[i * dim + w] = R.constant(1);
            if (!module_membership(target, span, total, R).member) return false;
        }
    }
    return true;
}

}  // namespace dgwb
