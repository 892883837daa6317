#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coamoeba/exactmath.hpp"

namespace coamoeba {

struct Term {
    std::vector<long> exponent;
    Rational coefficient;
};

/// A simplicial Laurent polynomial: n + 1 monomials in n variables.
struct PolynomialSpec {
    std::size_t n = 0;
    std::vector<Term> terms;
};

/// Signs are stored as +1 / -1.
using SignVector = std::vector<int>;

/// Canonical data after translating one vertex to the origin and making
/// the constant term positive. Row i of A is the i-th nonzero vertex.
struct NormalizedModel {
    std::size_t n = 0;
    IntMatrix A;
    SignVector epsilon;
    std::size_t origin_index = 0;
    bool globally_negated = false;

    friend bool operator==(const NormalizedModel&, const NormalizedModel&) = default;
};

/// Throws WrongTermCount, DuplicateExponent, DimensionMismatch or
/// InvalidInput when the polynomial is malformed (dimension, zero coefficient).
void validate(const PolynomialSpec& spec);

/// Origin vertex: the lexicographically smallest exponent unless `origin`
/// forces another term. Remaining vertices become rows of A in decreasing
/// lexicographic order, so the standard simplex maps to the identity.
NormalizedModel normalize(const PolynomialSpec& spec, std::optional<std::size_t> origin = std::nullopt);

/// Inverse of normalize up to the choice of representative: constant term
/// +1 at the origin, coefficient epsilon_i on row i.
PolynomialSpec to_spec(const NormalizedModel& model);

/// delta_i = 0 iff epsilon_i = +1.
BitVector delta(const SignVector& epsilon);

/// Indices are 0-based internally; reports print them 1-based.
struct IndexPartition {
    std::vector<std::size_t> I00; // delta^G_i = 0, d_i even
    std::vector<std::size_t> I10; // delta^G_i = 1, d_i even
    std::vector<std::size_t> I01; // delta^G_i = 0, d_i odd
    std::vector<std::size_t> I11; // delta^G_i = 1, d_i odd

    friend bool operator==(const IndexPartition&, const IndexPartition&) = default;
};

IndexPartition partition(const std::vector<Integer>& D, const BitVector& deltaG);

/// G * delta over GF(2).
BitVector transformed_delta(const IntMatrix& G, const BitVector& delta);

/// Parses a coefficient such as "3", "-2/7" or "0.125".
Rational parse_rational(const std::string& text);

} // namespace coamoeba
