#pragma once

// Exact geometry of the coamoeba on the argument torus. Angles are measured
// in turns (1 turn = 2*pi radians) and stored as rationals, so every
// predicate below is decided exactly.

#include <cstddef>
#include <optional>
#include <vector>

#include "coamoeba/exactmath.hpp"
#include "coamoeba/model.hpp"

namespace coamoeba {

/// Fractional part in [0, 1).
Rational wrap_turn(const Rational& x);

/// An angle on the circle, canonically represented in [0, 1).
class Turn {
public:
    Turn() = default;
    explicit Turn(const Rational& value) : value_(wrap_turn(value)) {}
    Turn(long num, unsigned long den) : Turn(Rational(num, den)) {}

    const Rational& value() const { return value_; }
    Turn operator-() const { return Turn(-value_); }
    friend bool operator==(const Turn&, const Turn&) = default;

private:
    Rational value_ = 0;
};

using TurnVector = std::vector<Turn>;
using RationalVector = std::vector<Rational>;

struct Facet {
    std::vector<Integer> normal; // primitive, first nonzero entry positive
    Rational offset;             // half-width along `normal`
};

/// center + sum_j [-g_j/2, g_j/2], kept as both V- and H-data.
struct Zonotope {
    RationalVector center;
    std::vector<RationalVector> generators;
    std::vector<Facet> facets;

    std::size_t dimension() const { return center.size(); }
    /// |normal . (p - center)| < offset for every facet.
    bool contains_strictly(const RationalVector& p) const;
    /// Total width along coordinate axis i.
    Rational extent(std::size_t axis) const;
    Rational volume() const;
};

/// Builds the facet list by enumerating (n-1)-subsets of generators.
Zonotope make_zonotope(RationalVector center, std::vector<RationalVector> generators);

/// The hole of the coamoeba of 1 + z_1 + ... + z_n: generators e_k/2 and
/// -(1,...,1)/2, centered at the origin.
Zonotope standard_zonotope(std::size_t n);

/// Vertices of a 2-dimensional zonotope in counter-clockwise order.
std::vector<RationalVector> zonogon_vertices(const Zonotope& z);

using OmegaIndex = std::vector<long>;

/// The d_1 ... d_n translated zonotopes whose complement is the coamoeba,
/// expressed in the coordinates psi = H^{-1} theta in which the model's
/// matrix reads G^{-1} D.
struct ZonotopeArrangement {
    std::size_t n = 0;
    std::vector<Integer> D;
    IntMatrix G;
    IntMatrix H_inverse;
    BitVector deltaG;
    Zonotope shape;           // centered at the origin
    RationalVector extents;   // L_i

    std::size_t omega_size() const;
    std::vector<long> radices() const;
    OmegaIndex omega_at(std::size_t linear) const;
    std::size_t omega_linear(const OmegaIndex& alpha) const;
    bool in_omega(const OmegaIndex& alpha) const;

    /// Canonical lift in [0,1)^n of the center of Z_alpha.
    RationalVector center(const OmegaIndex& alpha) const;
    /// Center of the zonotope lift labelled by an arbitrary integer vector
    /// m = alpha + d * k.
    RationalVector lift_center(const std::vector<long>& m) const;
    /// theta -> psi = H^{-1} theta, wrapped into [0,1)^n.
    RationalVector to_arrangement_coords(const TurnVector& theta) const;
};

/// Largest |Omega| any enumeration will accept.
inline constexpr std::size_t kMaxOmega = std::size_t{1} << 16;

ZonotopeArrangement arrangement(const NormalizedModel& model, const SmithDecomposition& snf);

enum class Region { Coamoeba, Complement };

/// Allowed-configuration test: phi = A.theta - delta/2; the point lies in
/// the complement iff {0, phi_1, ..., phi_n} fits in an open half-circle,
/// i.e. the largest cyclic gap exceeds 1/2.
Region membership(const NormalizedModel& model, const TurnVector& theta);

/// Largest cyclic gap of {0} union phi, in turns.
Rational max_cyclic_gap(const RationalVector& phi);

/// Which zonotope lift strictly contains a point in arrangement coordinates.
/// The result is m = alpha + d * k: alpha = m mod d names the zonotope and k
/// the lattice translate.
std::optional<std::vector<long>> containing_lift(const ZonotopeArrangement& arr, const RationalVector& psi);

/// Oracle counterpart of membership built only from the arrangement.
Region membership_by_zonotope(const ZonotopeArrangement& arr, const TurnVector& theta);

struct ConjugationAction {
    std::vector<std::size_t> image; // indexed by linear Omega index
    std::vector<std::size_t> fixed; // sorted linear indices
};

OmegaIndex conjugate_index(const ZonotopeArrangement& arr, const OmegaIndex& alpha);
ConjugationAction conjugation_action(const ZonotopeArrangement& arr);
std::vector<OmegaIndex> fixed_indices(const ZonotopeArrangement& arr);

/// Number of components of {psi_i = 0} intersected with the open Z_alpha.
Integer slice_count(const ZonotopeArrangement& arr, std::size_t axis, const OmegaIndex& alpha);

/// J_i: linear indices alpha whose slice count along `axis` is odd.
std::vector<std::size_t> parity_set(const ZonotopeArrangement& arr, std::size_t axis);

} // namespace coamoeba
