#ifndef DGWB_RESOLUTION_HPP
#define DGWB_RESOLUTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgwb/cohomology.hpp"
#include "dgwb/dg.hpp"

namespace dgwb {

/// Weakly monotone map between finite ordinals, stored by its value list.
using Monotone = std::vector<int>;

bool is_identity(const Monotone& m);
Monotone compose_monotone(const Monotone& outer, const Monotone& inner);  // outer ∘ inner
/// All monotone surjections [n] -> [j], lexicographically ordered.
std::vector<Monotone> surjections(int n, int j);
/// Epi-mono factorization of a monotone map: values = incl ∘ surj.
void epi_mono(const Monotone& map, Monotone& surj, std::vector<int>& image);

/// One level of a simplicial resolution, with full provenance bookkeeping for
/// every variable and generator.
struct ResolutionLevel {
    struct GenInfo {
        enum class Kind { FromInput, Degenerate, NewGen };
        Kind kind = Kind::FromInput;
        std::size_t input_index = 0;   // FromInput
        Monotone rho;                  // Degenerate: [n] ->> [j]
        std::size_t src_level = 0;     // Degenerate
        std::size_t src_item = 0;      // Degenerate: index into that level's new_items
        int degree = 0;                // NewGen
        std::vector<int> subset;       // NewGen: nonempty proper subset of {0..n}
        std::size_t index = 0;         // NewGen: kernel-basis index
        bool partner = false;          // NewGen: true for the F-side of the pair
    };
    struct VarInfo {
        enum class Kind { FromInput, Degenerate, NewPartner };
        Kind kind = Kind::FromInput;
        std::size_t input_index = 0;
        Monotone rho;
        std::size_t src_level = 0;
        std::size_t src_item = 0;      // Degenerate: index into new_vars of src level
        std::vector<int> subset;       // NewPartner
        std::size_t index = 0;
    };

    DgAlgebra algebra;
    std::vector<GenInfo> gen_info;   // parallel to algebra.gens()
    std::vector<VarInfo> var_info;   // parallel to base variables

    /// New generator pairs created at this level (E-generator with its partner
    /// generator or partner variable), in creation order.
    struct NewItem {
        int degree;                    // degree of the E side
        std::vector<int> subset;
        std::size_t index;
        std::size_t e_gen;             // index into algebra.gens()
        long f_gen = -1;               // partner generator, or
        long f_var = -1;               // partner base variable (degree -1 blocks)
    };
    std::vector<NewItem> new_items;
    std::vector<std::size_t> new_vars;  // partner variables, as base-var indices

    /// Kernel-of-all-faces bases per degree, with their indexing monomials.
    std::map<int, std::vector<Element>> kernel_basis;
    std::map<int, std::vector<GenWord>> kernel_monomials;
};

struct Resolution {
    DgAlgebra input;
    int depth = 3;  // construction degree bound: blocks in degrees -1..-depth
    std::vector<ResolutionLevel> levels;
    std::vector<std::vector<DgMorphism>> face;    // face[n][i]: level n -> n-1, n >= 1
    std::vector<std::vector<DgMorphism>> degen;   // degen[n][j]: level n -> n+1, n < N
};

/// The functorial simplicial resolution, levels 0..N. Generator blocks are
/// created in degrees -1..-depth only (exact for all data in that range).
Resolution resolve(const DgAlgebra& A, int levels, int depth = 3);

/// Generators-only count table: per level, per degree, the number of new
/// generators (degree 0 entries count partner variables).
std::map<int, std::size_t> new_generator_counts(const Resolution& res, std::size_t level);

/// Expected block rank from the binomial recursion, as pure integers.
std::size_t expected_block_rank(const Resolution& res, std::size_t level, int degree);

/// Matching object of the tower at level n: the equalizer of face tuples
/// inside the product of n+1 copies of level n-1.
struct MatchingObject {
    std::size_t level = 0;
    std::size_t components = 0;  // copies of level n-1
    std::size_t constraints = 0; // compatibility pairs
    bool tuple_map_consistent = false;  // canonical map lands in the equalizer
};

MatchingObject matching_object(const Resolution& res, std::size_t n);

/// Finite fiber of the matching comparison at a vertex-compatible point: the
/// sample on the input base is pushed through the vertex face-composite, which
/// yields a coherent system of points on every level, so all faces specialize
/// to exact linear maps. Components of the matching product not containing the
/// vertex collapse and are dropped.
struct MatchingLayer {
    int degree;
    std::size_t vertex;
    std::size_t matching_dim;
    std::size_t image_rank;
    bool surjective() const { return matching_dim == image_rank; }
};

MatchingLayer matching_layer(const Resolution& res, std::size_t n, int degree,
                             const RationalPoint& input_point, std::size_t vertex);

/// The coherent specialization of a level's base at a vertex: every variable
/// takes the value of its vertex face-composite image at the sample.
QVector vertex_point(const Resolution& res, std::size_t level, std::size_t vertex,
                     const RationalPoint& input_point);

/// Latching object: the subalgebra generated by the degenerate items, with its
/// inclusion into the level.
struct LatchingObject {
    DgAlgebra algebra;
    DgMorphism inclusion;
};

LatchingObject latching_object(const Resolution& res, std::size_t n);

/// j-skeleton of the (n+1)-simplex diagram: components indexed by j-faces.
struct Skeleton {
    std::size_t level = 0;  // n+1
    std::size_t j = 0;
    std::vector<std::vector<int>> faces;          // (j+1)-subsets of {0..n+1}
    std::size_t constraints = 0;
    bool tuple_map_consistent = false;
    bool equals_matching = false;                  // j == n
};

Skeleton skeleton(const Resolution& res, std::size_t n_plus_1, std::size_t j);

/// Per-degree fiber dimension of a skeleton at a vertex-compatible point;
/// components not containing the vertex are dropped.
std::size_t skeleton_layer_dim(const Resolution& res, const Skeleton& sk, int degree,
                               const RationalPoint& input_point, std::size_t vertex);

struct SpecialReport {
    struct LevelEntry {
        std::size_t level;
        bool pairing_ok = false;         // L_n -> A_n is free on acyclic two-term pairs
        bool identities_ok = false;
        std::vector<std::string> failures;
        // per degree, per sample: matching-layer surjectivity
        std::vector<MatchingLayer> layers;
        bool surjective_everywhere = true;
    };
    std::vector<LevelEntry> levels;
    std::vector<std::size_t> zero_h0_samples;  // sample indices with zero H^0 fiber
    bool ok() const {
        for (const auto& l : levels)
            if (!l.pairing_ok || !l.identities_ok || !l.surjective_everywhere) return false;
        return true;
    }
};

SpecialReport verify_special(const Resolution& res, const std::vector<RationalPoint>& samples,
                             int depth);

/// All five simplicial identity families, checked exactly on generators.
std::vector<std::string> check_simplicial_identities(const Resolution& res);

/// Level maps of the induced morphism resolve(A) -> resolve(B); commutes with
/// every face and degeneracy (re-checked exactly).
std::vector<DgMorphism> induced_resolution_maps(const Resolution& resA, const Resolution& resB,
                                                const DgMorphism& phi);

/// Symbolic (Gröbner) surjectivity of level n -> matching at one degree, for
/// small instances; nullopt when the instance exceeds the size gate.
std::optional<bool> matching_surjectivity_symbolic(const Resolution& res, std::size_t n,
                                                   int degree, std::size_t size_gate = 64);

}  // namespace dgwb

#endif
