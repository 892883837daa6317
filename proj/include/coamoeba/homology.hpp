#pragma once

// Z/2 homology of the coamoeba and of the real part, the action of complex
// conjugation on H_{n-1}, and the Galois-maximality defect. Every quantity
// that has a closed form is also assembled independently and compared.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coamoeba/coamoeba.hpp"
#include "coamoeba/exactmath.hpp"
#include "coamoeba/model.hpp"

namespace coamoeba {

/// The literal tag attached to any statement about the complex part that
/// relies on the conjectured conjugation-compatible homotopy equivalence.
inline constexpr const char* kConjectureFlag = "conditional-on-conjecture-1.1";

struct HomologyProfile {
    std::vector<Integer> betti; // b_0 .. b_n
    Integer total;

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// b_k = C(n,k) for k <= n-2, b_{n-1} = n + d_1...d_n - 1, b_n = 0.
HomologyProfile betti_coamoeba(const NormalizedModel& model, const SmithDecomposition& snf);

/// Image of 1 + c_* on the basis {B_1..B_n} u {[dZ_alpha]} of H_{n-1},
/// written in the [dZ_alpha] block (which every image lies in). The block
/// is taken modulo w = sum_alpha [dZ_alpha].
struct CStarPresentation {
    std::size_t n = 0;
    std::size_t omega = 0;
    std::vector<BitVector> images; // n rows for B_i, then one row per alpha
    BitVector relation;            // w

    std::size_t generator_count() const { return n + omega; }
};

CStarPresentation cstar_presentation(const ZonotopeArrangement& arr, const ConjugationAction& action,
                                     const std::vector<std::vector<std::size_t>>& parity_sets);

/// rank(images u {w}) - 1: the rank of 1 + c_* on the quotient.
std::size_t rank_assembled(const CStarPresentation& pres);

/// Closed form: d/2 - 1 when I10 is nonempty, else |I00| + (d - 2^|I00|)/2,
/// with d = d_1 ... d_n.
Integer rank_closed(const IndexPartition& part, const std::vector<Integer>& D);

struct RealPartProfile {
    BitVector quadrant_mask; // bit gamma set iff RX meets Q_gamma
    Integer component_count;
    bool all_quadrants_hit = false;

    friend bool operator==(const RealPartProfile&, const RealPartProfile&) = default;
};

/// Quadrant gamma is encoded with bit j set iff gamma_{j+1} = -1.
/// RX misses Q_gamma iff delta(epsilon) = A . delta(gamma) over GF(2); every
/// nonempty intersection is one contractible component.
RealPartProfile quadrant_mask(const NormalizedModel& model);

/// rank of A reduced modulo 2.
std::size_t rank2(const IntMatrix& a);

struct GaloisVerdict {
    Integer kernel_mod_image_dim;
    Integer defect;
    bool galois_maximal_coamoeba = false;
    /// Same value as the coamoeba verdict; only valid under kConjectureFlag.
    bool galois_maximal_CX = false;
    std::size_t rank2_A = 0;

    friend bool operator==(const GaloisVerdict&, const GaloisVerdict&) = default;
};

/// Computes dim(Ker/Im) = total - 2 rank and the defect, then checks the
/// defect against 2(2^{n-r} - 1 - (n-r)) and the equivalence
/// all-quadrants <=> delta not in Im(A mod 2) <=> I10 nonempty.
/// Throws ConsistencyFailure on any disagreement.
GaloisVerdict defect_and_verdict(const NormalizedModel& model, const HomologyProfile& homology,
                                 const Integer& rank, const RealPartProfile& real_part,
                                 const IndexPartition& part);

struct AnalysisReport {
    NormalizedModel model;
    SmithDecomposition snf;
    BitVector deltaG;
    IndexPartition partition;
    HomologyProfile homology;
    Integer rank_closed;
    std::size_t rank_assembled = 0;
    bool ranks_agree = false;
    std::size_t fixed_point_count = 0;
    RealPartProfile real_part;
    GaloisVerdict verdict;
};

AnalysisReport analyze_model(const NormalizedModel& model);
AnalysisReport analyze(const PolynomialSpec& spec, std::optional<std::size_t> origin = std::nullopt);

} // namespace coamoeba
