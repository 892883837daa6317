#pragma once

// Exact integer matrices, Smith normal form over Z, and linear algebra over
// the two-element field on bit-packed rows.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace coamoeba {

using Integer = mpz_class;
using Rational = mpq_class;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::span<const Integer> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transposed() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws SingularMatrix if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// G * A * H = diag(d), d_1 | d_2 | ... | d_n, all d_i > 0.
struct SmithDecomposition {
    IntMatrix G;
    IntMatrix H;
    std::vector<Integer> D;

    Integer product() const;
};

/// Smith normal form of a square nonsingular matrix.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by lowest (row, col). When the pivot fails to
/// divide a remaining entry, that entry's row is added to the pivot row and
/// elimination restarts. Negative diagonal entries are fixed by negating the
/// corresponding row of G. Output is a pure function of the input.
SmithDecomposition snf(const IntMatrix& a);

/// gcd of all k x k minors by exhaustive enumeration (0 if all vanish).
Integer minor_gcd(const IntMatrix& a, std::size_t k);

/// A dense bit vector packed in 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);
    BitVector(std::initializer_list<int> bits);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool any() const;
    std::size_t count() const;
    /// Index of the lowest set bit, or size() if none.
    std::size_t first() const;

    BitVector& operator^=(const BitVector& other);
    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class Z2Matrix {
public:
    Z2Matrix() = default;
    Z2Matrix(std::size_t rows, std::size_t cols);
    Z2Matrix(std::initializer_list<std::initializer_list<int>> rows);

    static Z2Matrix identity(std::size_t n);
    /// Entrywise reduction modulo 2.
    static Z2Matrix from_integers(const IntMatrix& a);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

    const BitVector& row(std::size_t r) const { return rows_[r]; }
    void append_row(BitVector row);

    /// M * v over GF(2).
    BitVector apply(const BitVector& v) const;
    Z2Matrix transposed() const;

    friend Z2Matrix operator*(const Z2Matrix& a, const Z2Matrix& b);

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

std::size_t z2_rank(const Z2Matrix& m);

/// True iff v lies in the row span of m. Throws DimensionMismatch.
bool z2_in_span(const Z2Matrix& m, const BitVector& v);

/// Incremental row-echelon basis over GF(2). Adding a vector reports whether
/// it was independent of everything added so far.
class Z2EchelonBasis {
public:
    explicit Z2EchelonBasis(std::size_t cols) : cols_(cols) {}

    bool add(BitVector v);
    bool contains(BitVector v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    void reduce(BitVector& v) const;

    std::size_t cols_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace coamoeba
