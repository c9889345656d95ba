#ifndef DGWB_DG_HPP
#define DGWB_DG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgwb/modgb.hpp"
#include "dgwb/ring.hpp"

namespace dgwb {

/// Product of generators in canonical order (indices sorted by the algebra's
/// canonical rank; odd generators never repeat).
using GenWord = std::vector<std::uint32_t>;

/// Homogeneous element: sparse combination of canonical monomials with
/// base-ring coefficients. degree is meaningful only when terms is nonempty.
struct Element {
    int degree = 0;
    std::map<GenWord, Polynomial> terms;
    bool is_zero() const { return terms.empty(); }
};

struct Generator {
    std::string name;
    int degree;        // strictly negative
    Element diff;      // degree+1, possibly zero
};

/// Finitely presented non-positively graded commutative dg algebra: a degree-0
/// base ring plus free negative generators with differentials. Immutable value
/// with shared innards.
class DgAlgebra {
public:
    DgAlgebra() = default;

    /// Structural normalization (degrees, homogeneity, coefficient normal
    /// forms, name hygiene). δ² is checked by validate(), not here.
    static DgAlgebra make(BaseRing base, std::vector<Generator> gens);

    const BaseRing& base() const { return d_->base; }
    const std::vector<Generator>& gens() const { return d_->gens; }
    std::size_t gen_count() const { return d_->gens.size(); }
    const Generator& gen(std::size_t i) const { return d_->gens[i]; }
    std::uint32_t rank_of(std::size_t gen_index) const { return d_->rank_of[gen_index]; }
    const std::vector<std::uint32_t>& by_rank() const { return d_->by_rank; }
    std::optional<std::size_t> gen_index(const std::string& name) const;
    bool gen_is_odd(std::size_t i) const { return d_->gens[i].degree % 2 != 0; }

    bool structurally_equal(const DgAlgebra& o) const;
    bool is_zero_algebra() const { return d_->base.is_zero_ring(); }

private:
    struct Data {
        BaseRing base;
        std::vector<Generator> gens;
        std::vector<std::uint32_t> rank_of;
        std::vector<std::uint32_t> by_rank;
        std::map<std::string, std::uint32_t> index;
    };
    std::shared_ptr<const Data> d_;
};

int word_degree(const DgAlgebra& A, const GenWord& w);

/// Koszul-signed product of canonical words; nullopt when an odd generator
/// squares to zero.
std::optional<std::pair<GenWord, int>> word_mul(const DgAlgebra& A, const GenWord& a,
                                                const GenWord& b);

Element element_zero(int degree = 0);
Element element_from_poly(const DgAlgebra& A, const Polynomial& p);
Element element_gen(const DgAlgebra& A, std::size_t gen_index);
Element element_add(const DgAlgebra& A, const Element& a, const Element& b);
Element element_sub(const DgAlgebra& A, const Element& a, const Element& b);
Element element_neg(const Element& a);
Element element_scale(const DgAlgebra& A, const Polynomial& c, const Element& a);
Element element_mul(const DgAlgebra& A, const Element& a, const Element& b);
Element element_nf(const DgAlgebra& A, const Element& a);
bool element_is_zero(const DgAlgebra& A, const Element& a);
bool element_equal(const DgAlgebra& A, const Element& a, const Element& b);

/// δ extended from the generators by the signed Leibniz rule.
Element differential(const DgAlgebra& A, const Element& a);

/// Canonical text form (terms ordered by word, coefficients parenthesized).
std::string element_str(const DgAlgebra& A, const Element& a);

/// Parses the graded-expression grammar (polynomial grammar plus generator
/// names); enforces homogeneity.
Element parse_element(const DgAlgebra& A, const std::string& text);

struct ValidationIssue {
    std::string check;
    std::string subject;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Degree bookkeeping and δ∘δ = 0 on every generator; failures are report
/// entries, never exceptions.
ValidationReport validate(const DgAlgebra& A);

/// Ordered monomial basis of A^k over the base (k <= 0; k = 0 gives the empty
/// word alone).
std::vector<GenWord> graded_basis(const DgAlgebra& A, int k);

/// Matrix of δ: A^k -> A^{k+1}; rows over graded_basis(A,k+1), columns over
/// graded_basis(A,k).
std::vector<Column> differential_matrix(const DgAlgebra& A, int k);

/// Unital degree-0 dg map given on base variables and generators; construction
/// verifies degrees, relations and δ-compatibility exactly.
class DgMorphism {
public:
    DgMorphism() = default;

    static DgMorphism make(DgAlgebra src, DgAlgebra dst, std::vector<Polynomial> var_images,
                           std::vector<Element> gen_images);
    static DgMorphism identity(const DgAlgebra& A);

    const DgAlgebra& src() const { return d_->src; }
    const DgAlgebra& dst() const { return d_->dst; }
    const std::vector<Polynomial>& var_images() const { return d_->var_images; }
    const std::vector<Element>& gen_images() const { return d_->gen_images; }

    Polynomial apply(const Polynomial& p) const;
    Element apply(const Element& e) const;

private:
    struct Data {
        DgAlgebra src, dst;
        std::vector<Polynomial> var_images;
        std::vector<Element> gen_images;
    };
    std::shared_ptr<const Data> d_;
};

DgMorphism compose(const DgMorphism& g, const DgMorphism& f);
bool morphism_equal(const DgMorphism& a, const DgMorphism& b);

/// Table-driven transport of polynomials/elements into another algebra,
/// without morphism validation (used while algebras are being assembled).
Polynomial map_poly(const DgAlgebra& dst, const std::vector<Polynomial>& var_images,
                    const Polynomial& p);
Element map_element(const DgAlgebra& dst, const std::vector<Polynomial>& var_images,
                    const std::vector<Element>& gen_images, const Element& e);

}  // namespace dgwb

#endif
