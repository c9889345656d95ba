#include "dgwb/dg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dgwb/expr_parser.hpp"

namespace dgwb {

namespace {

bool valid_name(const std::string& n) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) return false;
    for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

DgAlgebra DgAlgebra::make(BaseRing base, std::vector<Generator> gens) {
    auto data = std::make_shared<Data>();
    data->base = std::move(base);
    data->gens = std::move(gens);

    for (std::size_t i = 0; i < data->gens.size(); ++i) {
        const Generator& g = data->gens[i];
        if (!valid_name(g.name)) throw error("bad generator name: " + g.name);
        if (g.degree >= 0) throw error("generator degree must be negative: " + g.name);
        if (data->index.count(g.name)) throw error("duplicate generator name: " + g.name);
        if (data->base.var_index(g.name)) throw error("generator shadows a base variable: " + g.name);
        data->index[g.name] = static_cast<std::uint32_t>(i);
    }
    // canonical rank: degree descending (closest to 0 first), then name
    data->by_rank.resize(data->gens.size());
    std::iota(data->by_rank.begin(), data->by_rank.end(), 0);
    std::sort(data->by_rank.begin(), data->by_rank.end(), [&](std::uint32_t a, std::uint32_t b) {
        const Generator& ga = data->gens[a];
        const Generator& gb = data->gens[b];
        if (ga.degree != gb.degree) return ga.degree > gb.degree;
        return ga.name < gb.name;
    });
    data->rank_of.resize(data->gens.size());
    for (std::uint32_t r = 0; r < data->by_rank.size(); ++r) data->rank_of[data->by_rank[r]] = r;

    DgAlgebra A;
    A.d_ = data;

    // normalize differentials (coefficient normal forms, degree bookkeeping)
    auto mutable_data = std::const_pointer_cast<Data>(A.d_);
    for (auto& g : mutable_data->gens) {
        if (g.diff.is_zero()) {
            g.diff.degree = g.degree + 1;
            continue;
        }
        if (g.diff.degree != g.degree + 1)
            throw error("differential of " + g.name + " has degree " +
                        std::to_string(g.diff.degree) + ", expected " + std::to_string(g.degree + 1));
        g.diff = element_nf(A, g.diff);
        g.diff.degree = g.degree + 1;
    }
    return A;
}

std::optional<std::size_t> DgAlgebra::gen_index(const std::string& name) const {
    auto it = d_->index.find(name);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

bool DgAlgebra::structurally_equal(const DgAlgebra& o) const {
    if (d_ == o.d_) return true;
    if (!d_->base.structurally_equal(o.d_->base)) return false;
    if (d_->gens.size() != o.d_->gens.size()) return false;
    for (std::size_t i = 0; i < d_->gens.size(); ++i) {
        const Generator& a = d_->gens[i];
        const Generator& b = o.d_->gens[i];
        if (a.name != b.name || a.degree != b.degree) return false;
        if (!(a.diff.terms == b.diff.terms)) return false;
    }
    return true;
}

int word_degree(const DgAlgebra& A, const GenWord& w) {
    int d = 0;
    for (auto i : w) d += A.gen(i).degree;
    return d;
}

std::optional<std::pair<GenWord, int>> word_mul(const DgAlgebra& A, const GenWord& a,
                                                const GenWord& b) {
    GenWord out;
    out.reserve(a.size() + b.size());
    int sign = 1;
    // suffix count of odd generators remaining in a
    std::size_t odd_left = 0;
    for (auto i : a)
        if (A.gen_is_odd(i)) ++odd_left;
    std::size_t ia = 0, ib = 0;
    std::size_t odd_remaining = odd_left;
    while (ia < a.size() || ib < b.size()) {
        bool take_a;
        if (ia == a.size()) {
            take_a = false;
        } else if (ib == b.size()) {
            take_a = true;
        } else {
            std::uint32_t ra = A.rank_of(a[ia]), rb = A.rank_of(b[ib]);
            if (ra < rb) {
                take_a = true;
            } else if (ra > rb) {
                take_a = false;
            } else {
                if (A.gen_is_odd(a[ia])) return std::nullopt;  // odd square
                take_a = true;
            }
        }
        if (take_a) {
            if (A.gen_is_odd(a[ia])) --odd_remaining;
            out.push_back(a[ia++]);
        } else {
            // move b's element past the a-elements still pending
            if (A.gen_is_odd(b[ib]) && (odd_remaining % 2)) sign = -sign;
            out.push_back(b[ib++]);
        }
    }
    return std::make_pair(std::move(out), sign);
}

Element element_zero(int degree) {
    Element e;
    e.degree = degree;
    return e;
}

Element element_from_poly(const DgAlgebra& A, const Polynomial& p) {
    Element e;
    e.degree = 0;
    Polynomial q = A.base().nf(p);
    if (!q.is_zero()) e.terms[GenWord{}] = q;
    return e;
}

Element element_gen(const DgAlgebra& A, std::size_t gen_index) {
    Element e;
    e.degree = A.gen(gen_index).degree;
    e.terms[GenWord{static_cast<std::uint32_t>(gen_index)}] = A.base().constant(1);
    return e;
}

namespace {

void add_into(Element& acc, const GenWord& w, const Polynomial& c) {
    if (c.is_zero()) return;
    auto it = acc.terms.find(w);
    if (it == acc.terms.end()) {
        acc.terms.emplace(w, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) acc.terms.erase(it);
    }
}

void check_degrees(const Element& a, const Element& b) {
    if (!a.is_zero() && !b.is_zero() && a.degree != b.degree)
        throw context_error("adding elements of different degrees");
}

}  // namespace

Element element_add(const DgAlgebra& A, const Element& a, const Element& b) {
    (void)A;
    check_degrees(a, b);
    Element out = a;
    if (out.is_zero()) out.degree = b.degree;
    for (const auto& [w, c] : b.terms) add_into(out, w, c);
    return out;
}

Element element_sub(const DgAlgebra& A, const Element& a, const Element& b) {
    return element_add(A, a, element_neg(b));
}

Element element_neg(const Element& a) {
    Element out;
    out.degree = a.degree;
    for (const auto& [w, c] : a.terms) out.terms[w] = -c;
    return out;
}

Element element_scale(const DgAlgebra& A, const Polynomial& c, const Element& a) {
    Element out;
    out.degree = a.degree;
    for (const auto& [w, k] : a.terms) {
        Polynomial p = A.base().nf(c * k);
        if (!p.is_zero()) out.terms[w] = p;
    }
    return out;
}

Element element_mul(const DgAlgebra& A, const Element& a, const Element& b) {
    Element out;
    out.degree = (a.is_zero() || b.is_zero()) ? 0 : a.degree + b.degree;
    for (const auto& [wa, ca] : a.terms) {
        for (const auto& [wb, cb] : b.terms) {
            auto prod = word_mul(A, wa, wb);
            if (!prod) continue;
            Polynomial c = A.base().nf(ca * cb);
            if (prod->second < 0) c = -c;
            add_into(out, prod->first, c);
        }
    }
    return out;
}

Element element_nf(const DgAlgebra& A, const Element& a) {
    Element out;
    out.degree = a.degree;
    for (const auto& [w, c] : a.terms) {
        Polynomial p = A.base().nf(c);
        if (!p.is_zero()) out.terms[w] = p;
    }
    return out;
}

bool element_is_zero(const DgAlgebra& A, const Element& a) {
    return element_nf(A, a).is_zero();
}

bool element_equal(const DgAlgebra& A, const Element& a, const Element& b) {
    return element_is_zero(A, element_sub(A, a, b));
}

Element differential(const DgAlgebra& A, const Element& a) {
    Element out;
    out.degree = a.degree + 1;
    for (const auto& [w, c] : a.terms) {
        int prefix_parity = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Element& dg = A.gen(w[i]).diff;
            if (!dg.is_zero()) {
                Element prefix = element_from_poly(A, A.base().constant(1));
                prefix.degree = 0;
                GenWord pre(w.begin(), w.begin() + i);
                GenWord post(w.begin() + i + 1, w.end());
                Element pre_e;
                pre_e.degree = word_degree(A, pre);
                pre_e.terms[pre] = A.base().constant(1);
                Element post_e;
                post_e.degree = word_degree(A, post);
                post_e.terms[post] = A.base().constant(1);
                Element piece = element_mul(A, element_mul(A, pre_e, dg), post_e);
                Polynomial coeff = (prefix_parity % 2) ? -c : c;
                piece = element_scale(A, coeff, piece);
                if (!piece.is_zero()) {
                    piece.degree = a.degree + 1;
                    out = element_add(A, out, piece);
                }
            }
            prefix_parity += A.gen(w[i]).degree;
        }
    }
    out.degree = a.degree + 1;
    return out;
}

std::string element_str(const DgAlgebra& A, const Element& a) {
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        std::string word;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            if (!word.empty()) word += "*";
            word += A.gen(w[i]).name;
            if (j - i > 1) word += "^" + std::to_string(j - i);
            i = j;
        }
        if (!first) out << "+";
        first = false;
        if (word.empty()) {
            out << "(" << poly_str(c) << ")";
        } else if (c.is_one()) {
            out << word;
        } else {
            out << "(" << poly_str(c) << ")*" << word;
        }
    }
    return out.str();
}

namespace {

struct ElementOps {
    using Value = Element;
    const DgAlgebra* A;
    Value from_rational(const Rational& q) const {
        return element_from_poly(*A, A->base().constant(q));
    }
    Value lookup(const std::string& name, int line, int col) const {
        if (auto vi = A->base().var_index(name)) return element_from_poly(*A, A->base().var(*vi));
        if (auto gi = A->gen_index(name)) return element_gen(*A, *gi);
        throw parse_error("unknown symbol " + name, line, col);
    }
    Value add(Value a, Value b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.degree != b.degree) throw error("inhomogeneous expression");
        return element_add(*A, a, b);
    }
    Value sub(Value a, Value b) const { return add(std::move(a), element_neg(b)); }
    Value neg(Value a) const { return element_neg(a); }
    Value mul(Value a, Value b) const { return element_mul(*A, a, b); }
    Value pow(Value a, unsigned e, int, int) const {
        Value r = from_rational(1);
        for (unsigned i = 0; i < e; ++i) r = element_mul(*A, r, a);
        return r;
    }
};

}  // namespace

Element parse_element(const DgAlgebra& A, const std::string& text) {
    ExprParser<ElementOps> p(text, ElementOps{&A});
    return element_nf(A, p.parse());
}

ValidationReport validate(const DgAlgebra& A) {
    ValidationReport report;
    for (std::size_t i = 0; i < A.gen_count(); ++i) {
        const Generator& g = A.gen(i);
        if (g.degree >= 0)
            report.issues.push_back({"degree", g.name, "generator degree must be negative"});
        if (!g.diff.is_zero() && g.diff.degree != g.degree + 1)
            report.issues.push_back({"differential-degree", g.name, "differential has wrong degree"});
        Element dd = differential(A, g.diff);
        if (!element_is_zero(A, dd))
            report.issues.push_back(
                {"square-zero", g.name, "delta(delta(" + g.name + ")) = " + element_str(A, dd)});
    }
    return report;
}

std::vector<GenWord> graded_basis(const DgAlgebra& A, int k) {
    if (k > 0) throw context_error("graded pieces live in non-positive degrees");
    std::vector<GenWord> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    GenWord current;
    // descending multiplicity first so words come out lexicographically
    std::function<void(std::size_t, int)> rec = [&](std::size_t rank, int remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        if (rank >= A.by_rank().size()) return;
        std::uint32_t gi = A.by_rank()[rank];
        int d = A.gen(gi).degree;
        int max_mult = A.gen_is_odd(gi) ? 1 : (-remaining) / (-d);
        for (int m = std::min(max_mult, (-remaining) / (-d)); m >= 0; --m) {
            for (int t = 0; t < m; ++t) current.push_back(gi);
            rec(rank + 1, remaining - m * d);
            for (int t = 0; t < m; ++t) current.pop_back();
        }
    };
    rec(0, k);
    return out;
}

std::vector<Column> differential_matrix(const DgAlgebra& A, int k) {
    if (k >= 0) throw context_error("differential matrix needs k < 0");
    auto cols = graded_basis(A, k);
    auto rows = graded_basis(A, k + 1);
    std::map<GenWord, std::size_t> row_index;
    for (std::size_t r = 0; r < rows.size(); ++r) row_index[rows[r]] = r;
    std::vector<Column> m;
    for (const auto& w : cols) {
        Element e;
        e.degree = k;
        e.terms[w] = A.base().constant(1);
        Element de = differential(A, e);
        Column col(rows.size(), Polynomial(A.base().vars()));
        for (const auto& [rw, c] : de.terms) {
            auto it = row_index.find(rw);
            if (it == row_index.end()) throw invariant_violation("differential left the graded basis");
            col[it->second] = c;
        }
        m.push_back(std::move(col));
    }
    return m;
}

DgMorphism DgMorphism::make(DgAlgebra src, DgAlgebra dst, std::vector<Polynomial> var_images,
                            std::vector<Element> gen_images) {
    auto data = std::make_shared<Data>();
    data->src = std::move(src);
    data->dst = std::move(dst);
    data->var_images = std::move(var_images);
    data->gen_images = std::move(gen_images);

    const DgAlgebra& S = data->src;
    const DgAlgebra& D = data->dst;
    if (data->var_images.size() != S.base().arity())
        throw context_error("variable image count mismatch");
    if (data->gen_images.size() != S.gen_count()) throw context_error("generator image count mismatch");
    // images are kept as given (normal forms would erase structure over
    // degenerate bases); comparisons normalize on their own
    for (auto& p : data->var_images) {
        if (!same_registry(p.registry(), D.base().vars()))
            throw context_error("variable image not over the target base");
    }
    for (std::size_t i = 0; i < data->gen_images.size(); ++i) {
        Element& e = data->gen_images[i];
        if (!element_nf(D, e).is_zero() && e.degree != S.gen(i).degree)
            throw invariant_violation("image of " + S.gen(i).name + " has wrong degree");
        e.degree = S.gen(i).degree;
    }

    DgMorphism phi;
    phi.d_ = data;

    for (const auto& r : S.base().relations())
        if (!phi.apply(r).is_zero())
            throw invariant_violation("base relation not respected: " + poly_str(r));
    for (std::size_t i = 0; i < S.gen_count(); ++i) {
        Element lhs = phi.apply(S.gen(i).diff);
        Element rhs = differential(D, phi.apply(element_gen(S, i)));
        if (!element_equal(D, lhs, rhs))
            throw invariant_violation("morphism does not commute with the differential on " +
                                      S.gen(i).name);
    }
    return phi;
}

DgMorphism DgMorphism::identity(const DgAlgebra& A) {
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < A.base().arity(); ++i) vars.push_back(A.base().var(i));
    std::vector<Element> gens;
    for (std::size_t i = 0; i < A.gen_count(); ++i) gens.push_back(element_gen(A, i));
    return make(A, A, std::move(vars), std::move(gens));
}

Polynomial DgMorphism::apply(const Polynomial& p) const {
    if (!same_registry(p.registry(), d_->src.base().vars()))
        throw context_error("polynomial not over the source base");
    return d_->dst.base().nf(p.substitute(d_->var_images, d_->dst.base().vars()));
}

Element DgMorphism::apply(const Element& e) const {
    const DgAlgebra& D = d_->dst;
    Element out;
    out.degree = e.degree;
    for (const auto& [w, c] : e.terms) {
        Element piece = element_from_poly(D, apply(c));
        for (auto gi : w) piece = element_mul(D, piece, d_->gen_images[gi]);
        if (!piece.is_zero()) {
            piece.degree = e.degree;
            out = element_add(D, out, piece);
        }
    }
    out.degree = e.degree;
    return out;
}

DgMorphism compose(const DgMorphism& g, const DgMorphism& f) {
    if (!f.dst().structurally_equal(g.src()))
        throw context_error("composition target/source mismatch");
    std::vector<Polynomial> vars;
    for (const auto& p : f.var_images()) vars.push_back(g.apply(p));
    std::vector<Element> gens;
    for (const auto& e : f.gen_images()) gens.push_back(g.apply(e));
    return DgMorphism::make(f.src(), g.dst(), std::move(vars), std::move(gens));
}

Polynomial map_poly(const DgAlgebra& dst, const std::vector<Polynomial>& var_images,
                    const Polynomial& p) {
    return dst.base().nf(p.substitute(var_images, dst.base().vars()));
}

Element map_element(const DgAlgebra& dst, const std::vector<Polynomial>& var_images,
                    const std::vector<Element>& gen_images, const Element& e) {
    Element out;
    out.degree = e.degree;
    for (const auto& [w, c] : e.terms) {
        Element piece = element_from_poly(dst, map_poly(dst, var_images, c));
        for (auto gi : w) piece = element_mul(dst, piece, gen_images[gi]);
        if (!piece.is_zero()) {
            piece.degree = e.degree;
            out = element_add(dst, out, piece);
        }
    }
    out.degree = e.degree;
    return out;
}

bool morphism_equal(const DgMorphism& a, const DgMorphism& b) {
    if (!a.src().structurally_equal(b.src()) || !a.dst().structurally_equal(b.dst())) return false;
    for (std::size_t i = 0; i < a.var_images().size(); ++i)
        if (!a.dst().base().nf(a.var_images()[i] - b.var_images()[i]).is_zero()) return false;
    for (std::size_t i = 0; i < a.gen_images().size(); ++i)
        if (!element_equal(a.dst(), a.gen_images()[i], b.gen_images()[i])) return false;
    return true;
}

}  // namespace dgwb
