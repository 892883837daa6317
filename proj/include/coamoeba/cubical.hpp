#pragma once

// Brute-force oracle: a cubical subcomplex of a grid on T^n (n <= 3) that
// retracts to the coamoeba, its Z/2 Betti numbers, and the rank of 1 + c on
// H_{n-1} induced by the cellular negation map. This is a verification
// device, not a certified homotopy model; resolution stability is checked.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coamoeba/coamoeba.hpp"
#include "coamoeba/model.hpp"

namespace coamoeba {

/// Sparse GF(2) column: sorted row indices.
using SparseColumn = std::vector<std::uint32_t>;

/// A grid cell is named per axis by a position in [0, 2 m_i): even
/// positions are vertices j = p/2, odd positions the interval [j, j+1].
class CubicalComplex {
public:
    /// Label of a grid vertex: the zonotope lift containing it (if any).
    /// `wrap_shift[i]` is added to component i when a cell crosses the seam
    /// psi_i = 1 == 0, so labels of one lift compare equal across it.
    using VertexLabel = std::function<std::optional<std::vector<long>>(const std::vector<long>& vertex)>;

    CubicalComplex(std::vector<long> resolution, std::vector<long> wrap_shift, const VertexLabel& label);

    std::size_t dimension() const { return n_; }
    const std::vector<long>& resolution() const { return m_; }

    std::size_t cell_count(std::size_t k) const { return cells_[k].size(); }
    /// Grid position vector of the local k-cell `idx`.
    std::vector<long> cell_position(std::size_t k, std::size_t idx) const;
    /// Columns of d_k (k-cells), rows are local (k-1)-cell indices. k >= 1.
    const std::vector<SparseColumn>& boundary(std::size_t k) const { return boundary_[k]; }

    /// Local index of the image of a kept k-cell under x -> -x, if kept.
    std::optional<std::uint32_t> negate(std::size_t k, std::size_t idx) const;

    bool boundary_squared_is_zero() const;
    bool negation_symmetric() const;
    bool closed_under_faces() const;
    long euler_characteristic() const;

private:
    std::uint64_t linear(const std::vector<long>& pos) const;
    std::vector<long> position(std::uint64_t lin) const;

    std::size_t n_;
    std::vector<long> m_;
    std::vector<std::vector<std::uint64_t>> cells_;    // per dimension, sorted grid ids
    std::vector<std::int64_t> local_;                  // grid id -> local index or -1
    std::vector<std::vector<SparseColumn>> boundary_;  // index k holds d_k
};

/// Per-axis default: 8 * lcm(2 d_i), capped (128 for n <= 2, 24 for n = 3)
/// and rounded down to a multiple of 2 d_i.
std::vector<long> default_resolution(const std::vector<Integer>& D);

/// Rounds a scalar target up to a multiple of 2 d_i on every axis.
std::vector<long> resolution_from_target(long target, const std::vector<Integer>& D);

/// Throws UnsupportedDimension (n > 3) or BadResolution (m_i not a positive
/// multiple of 2 d_i).
CubicalComplex build_complex(const ZonotopeArrangement& arr, const std::vector<long>& m);

std::vector<std::size_t> betti_z2(const CubicalComplex& complex);

/// dim((f(Z) + B)/B) with f = 1 + c# on (n-1)-chains. Throws
/// SymmetryViolation if c# leaves the complex.
std::size_t conjugation_rank(const CubicalComplex& complex);

struct VerificationOptions {
    std::optional<std::vector<long>> resolution; // default_resolution when empty
    bool skip_cubical = false;
    bool check_doubled = true;
    std::size_t membership_samples = 1000;
    std::uint64_t seed = 0x5eed;
};

struct VerificationRecord {
    std::string id;
    std::size_t n = 0;
    std::vector<long> resolution;

    std::vector<Integer> closed_betti;
    Integer closed_rank;
    std::size_t assembled_rank = 0;

    bool cubical_ran = false;
    std::vector<std::size_t> cubical_betti;
    std::size_t cubical_rank = 0;
    std::vector<std::size_t> doubled_betti;
    std::size_t doubled_rank = 0;
    std::vector<std::size_t> cell_counts;

    std::size_t membership_samples = 0;
    std::size_t membership_disagreements = 0;

    bool betti_agree = true;
    bool rank_agree = true;
    bool assembled_agree = true;
    bool stable = true;
    bool complex_sound = true; // d.d = 0, closure, negation symmetry, Euler
    bool membership_agree = true;

    double build_ms = 0;
    double homology_ms = 0;
    double total_ms = 0;

    bool ok() const {
        return betti_agree && rank_agree && assembled_agree && stable && complex_sound && membership_agree;
    }
    /// Human-readable list of disagreeing quantities.
    std::vector<std::string> diff() const;
};

VerificationRecord verify(const NormalizedModel& model, const VerificationOptions& options = {});

} // namespace coamoeba
