#ifndef DGWB_HOMOTOPY_HPP
#define DGWB_HOMOTOPY_HPP

#include <optional>
#include <string>
#include <vector>

#include "dgwb/cohomology.hpp"
#include "dgwb/constructions.hpp"

namespace dgwb {

enum class Verdict { Certified, Refuted, Inconclusive };

std::string verdict_name(Verdict v);

/// Mutually inverse normal-form maps between the H^0 presentations.
struct H0Iso {
    std::vector<Polynomial> forward;  // source variable -> polynomial over target
    std::vector<Polynomial> inverse;  // target variable -> polynomial over source
};

struct DegreeCheck {
    int degree;
    bool kernel_zero = false;
    bool cokernel_zero = false;
    std::string witness;
};

struct QisoVerdict {
    int depth = 0;
    Verdict verdict = Verdict::Inconclusive;
    Verdict h0 = Verdict::Inconclusive;
    std::string h0_witness;
    std::optional<H0Iso> h0_iso;
    std::vector<DegreeCheck> degrees;        // -1 down to -depth
    std::optional<int> refuted_degree;
    std::optional<KahlerReport> cotangent;   // alternative criterion, on request
};

struct QisoOptions {
    int inverse_degree_bound = 3;  // search bound for H^0 preimages
    bool cotangent = false;        // also record the relative-cotangent check
};

/// H^0 isomorphism by ideal contraction (elimination) plus bounded preimage
/// search; negative degrees by certified-zero kernel and cokernel of the
/// base-changed comparison map. Exact throughout.
QisoVerdict certify_quasi_iso(const DgMorphism& phi, int depth, const QisoOptions& opts = {});

/// Weak-equivalence-then-fibration factorization data. composite_input is the
/// morphism the two legs compose to, exactly.
struct Factorization {
    DgAlgebra middle;
    DgMorphism input;                                  // what gets factored
    DgMorphism fibration_leg;                          // outer -> middle
    std::optional<FibrationWitness> fibration_witness;
    DgMorphism weq_leg;                                // middle -> target
    QisoVerdict weq_verdict;
    std::optional<DgMorphism> section;                 // target -> middle
};

/// Path object by killing cocycles: A⊗A -> P -> A with the first leg a
/// recognized fibration and the second certified to the given depth. New
/// generators in degree k-1 are indexed by reduced module-Gröbner generators
/// of the cocycle/chain pair module at stage k.
struct PathObject {
    TensorSquare tensor;
    Factorization factorization;
    std::vector<std::size_t> stage_gen_counts;  // generators added per stage
};

PathObject path_object(const DgAlgebra& A, int depth, const QisoOptions& opts = {});

/// Brown factorization of φ: B -> A through A ⊗_B Path(B): the first leg is a
/// fibration, the second a quasi-isomorphism with an exact section.
Factorization brown_factorize(const DgMorphism& phi, int depth, const QisoOptions& opts = {});

}  // namespace dgwb

#endif
