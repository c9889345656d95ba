#ifndef DGWB_CONSTRUCTIONS_HPP
#define DGWB_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "dgwb/dg.hpp"

namespace dgwb {

/// Picks a name not used by base variables or generators of the context,
/// starting from `base` and appending suffixes deterministically.
std::string fresh_name(const std::vector<std::string>& taken, const std::string& base);

struct LocalizationResult {
    DgAlgebra algebra;
    DgMorphism incl;
    std::string inverse_var;
};

/// A[1/f]: fresh inverse variable t with relation f·t - 1; rejects f ≡ 0.
LocalizationResult localize(const DgAlgebra& A, const Polynomial& f);

/// Staged description of an almost-free extension: the target is the source
/// base extended by fresh variables, localizations and declared-étale steps,
/// followed by freely adjoined negative generators. Replaying the stages
/// reconstructs the target exactly.
struct FibrationWitness {
    enum class StageKind { FreshVar, Localization, DeclaredEtale };
    struct BaseStage {
        StageKind kind;
        std::size_t var;                        // target variable introduced
        std::optional<std::size_t> relation;    // target relation consumed (loc/étale)
    };
    std::vector<std::size_t> var_image;         // source var -> target var
    std::vector<std::size_t> gen_image;         // source gen -> target gen
    std::vector<BaseStage> stages;              // in target variable order
    std::vector<std::size_t> rel_image;         // source relation -> target relation
    std::vector<std::size_t> new_gens;          // target gens outside the image
};

/// Structural recognition: Some(witness) iff the target is an almost-free
/// extension of the source with φ the canonical inclusion up to renaming.
std::optional<FibrationWitness> recognize_fibration(const DgMorphism& phi,
                                                    std::string* reason = nullptr);

/// Declared standard-étale data for a covering member: B0 = A0[t]_g/(p).
struct EtaleDeclaration {
    std::string var;
    Polynomial relation;              // p, over the target base
    std::optional<Polynomial> denom;  // g, when a localization is part of the step
};

/// Re-builds the target of φ from the witness and compares structurally.
bool witness_replays(const FibrationWitness& w, const DgMorphism& phi);

struct PushoutResult {
    DgAlgebra algebra;                 // B ⊗_A C built along the witnessed leg
    DgMorphism from_witnessed;         // B -> P
    DgMorphism from_other;             // C -> P
};

/// Pushout of φ: A→B (almost-free, witnessed) along ψ: A→C, by replaying the
/// witness stages over C. Throws when neither leg is recognizable.
PushoutResult pushout(const DgMorphism& phi, const FibrationWitness& w, const DgMorphism& psi);

/// Symmetric front-end: recognizes one of the two legs and dispatches. The
/// returned pair is (leg from φ's target, leg from ψ's target).
PushoutResult pushout(const DgMorphism& phi, const DgMorphism& psi);

/// Cocone-induced map P -> T for β: B→T, γ: C→T with β∘φ = γ∘ψ.
DgMorphism pushout_induce(const PushoutResult& P, const DgMorphism& phi, const DgMorphism& psi,
                          const DgMorphism& beta, const DgMorphism& gamma);

struct TensorSquare {
    DgAlgebra algebra;    // A ⊗ A over ℚ, right copy renamed
    DgMorphism left;      // A -> A⊗A
    DgMorphism right;     // A -> A⊗A
    DgMorphism mult;      // A⊗A -> A
};

TensorSquare tensor_square(const DgAlgebra& A);

/// Relative Kähler differentials of φ: A→B as a dg module presentation, with
/// degreewise acyclicity verdicts for -K <= k <= 0.
struct KahlerDegreeVerdict {
    int degree;
    bool acyclic;
    std::string witness;  // description of a surviving class when not acyclic
};

struct KahlerReport {
    std::size_t symbol_count = 0;  // module generators d(v)
    std::vector<KahlerDegreeVerdict> degrees;
    bool acyclic_in_range() const {
        for (const auto& d : degrees)
            if (!d.acyclic) return false;
        return true;
    }
};

KahlerReport relative_kahler(const DgMorphism& phi, int depth);

}  // namespace dgwb

#endif
