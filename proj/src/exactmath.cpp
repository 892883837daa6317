#include "coamoeba/exactmath.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "coamoeba/errors.hpp"

namespace coamoeba {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("IntMatrix: ragged initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> diag) {
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("IntMatrix product: inner dimensions differ");
    IntMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
        }
    return p;
}

Integer determinant(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("determinant: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("unimodular_inverse: matrix is not square");
    const std::size_t n = a.rows();
    std::vector<Rational> aug(n * 2 * n);
    auto at = [&](std::size_t r, std::size_t c) -> Rational& { return aug[r * 2 * n + c]; };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) at(r, c) = Rational(a(r, c));
        at(r, n + r) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && at(p, k) == 0) ++p;
        if (p == n) throw SingularMatrix();
        if (p != k)
            for (std::size_t c = 0; c < 2 * n; ++c) std::swap(at(p, c), at(k, c));
        const Rational piv = at(k, k);
        for (std::size_t c = 0; c < 2 * n; ++c) at(k, c) /= piv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || at(r, k) == 0) continue;
            const Rational f = at(r, k);
            for (std::size_t c = 0; c < 2 * n; ++c) at(r, c) -= f * at(k, c);
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const Rational& v = at(r, n + c);
            if (v.get_den() != 1) throw InvalidInput("unimodular_inverse: matrix is not unimodular");
            inv(r, c) = v.get_num();
        }
    return inv;
}

Integer SmithDecomposition::product() const {
    Integer p = 1;
    for (const auto& d : D) p *= d;
    return p;
}

namespace {

struct SnfState {
    IntMatrix m;
    IntMatrix g;
    IntMatrix h;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
        for (std::size_t c = 0; c < g.cols(); ++c) std::swap(g(a, c), g(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
        for (std::size_t r = 0; r < h.rows(); ++r) std::swap(h(r, a), h(r, b));
    }
    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += f * m(src, c);
        for (std::size_t c = 0; c < g.cols(); ++c) g(dst, c) += f * g(src, c);
    }
    // col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += f * m(r, src);
        for (std::size_t r = 0; r < h.rows(); ++r) h(r, dst) += f * h(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
        for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = -g(r, c);
    }
};

} // namespace

SmithDecomposition snf(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("snf: matrix is not square");
    if (determinant(a) == 0) throw SingularMatrix();
    const std::size_t n = a.rows();
    SnfState s{a, IntMatrix::identity(n), IntMatrix::identity(n)};

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t pr = n, pc = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (s.m(i, j) == 0) continue;
                    if (pr == n || mpz_cmpabs(s.m(i, j).get_mpz_t(), s.m(pr, pc).get_mpz_t()) < 0) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == n) throw SingularMatrix();
            s.swap_rows(t, pr);
            s.swap_cols(t, pc);

            const Integer pivot = s.m(t, t);
            bool cleared = true;
            Integer q;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (s.m(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), s.m(i, t).get_mpz_t(), pivot.get_mpz_t());
                if (q != 0) s.add_row(i, t, -q);
                if (s.m(i, t) != 0) cleared = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.m(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), s.m(t, j).get_mpz_t(), pivot.get_mpz_t());
                if (q != 0) s.add_col(j, t, -q);
                if (s.m(t, j) != 0) cleared = false;
            }
            if (!cleared) continue;

            // Divisibility: fold the first offending row into the pivot row.
            std::size_t bad_row = n;
            for (std::size_t i = t + 1; i < n && bad_row == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s.m(i, j).get_mpz_t(), pivot.get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == n) break;
            s.add_row(t, bad_row, 1);
        }
        if (s.m(t, t) < 0) s.negate_row(t);
    }

    SmithDecomposition out{std::move(s.g), std::move(s.h), {}};
    out.D.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.D.push_back(s.m(i, i));
    return out;
}

namespace {

// Advance `idx` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

Integer minor_gcd(const IntMatrix& a, std::size_t k) {
    if (k == 0 || k > a.rows() || k > a.cols())
        throw InvalidInput("minor_gcd: k must satisfy 1 <= k <= min(rows, cols)");
    Integer g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    for (std::size_t i = 0; i < k; ++i) rs[i] = i;
    do {
        for (std::size_t i = 0; i < k; ++i) cs[i] = i;
        do {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rs[i], cs[j]);
            Integer d = determinant(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        } while (next_combination(cs, a.cols()));
    } while (next_combination(rs, a.rows()));
    return g;
}

// ---------------------------------------------------------------------------
// GF(2)

BitVector::BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, (b & 1) != 0);
}

void BitVector::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVector::first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw DimensionMismatch("BitVector xor: sizes differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

Z2Matrix::Z2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

Z2Matrix::Z2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
    cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("Z2Matrix: ragged initializer");
        rows_.emplace_back(r);
    }
}

Z2Matrix Z2Matrix::identity(std::size_t n) {
    Z2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

Z2Matrix Z2Matrix::from_integers(const IntMatrix& a) {
    Z2Matrix m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, mpz_odd_p(a(r, c).get_mpz_t()) != 0);
    return m;
}

void Z2Matrix::append_row(BitVector row) {
    if (row.size() != cols_) throw DimensionMismatch("Z2Matrix::append_row: length differs from cols");
    rows_.push_back(std::move(row));
}

BitVector Z2Matrix::apply(const BitVector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("Z2Matrix::apply: vector length differs from cols");
    BitVector out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::uint64_t acc = 0;
        const auto a = rows_[r].words();
        const auto b = v.words();
        for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
        out.set(r, (std::popcount(acc) & 1) != 0);
    }
    return out;
}

Z2Matrix Z2Matrix::transposed() const {
    Z2Matrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r);
    return t;
}

Z2Matrix operator*(const Z2Matrix& a, const Z2Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("Z2Matrix product: inner dimensions differ");
    Z2Matrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVector acc(b.cols());
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) acc ^= b.row(k);
        p.rows_[i] = std::move(acc);
    }
    return p;
}

std::size_t z2_rank(const Z2Matrix& m) {
    Z2EchelonBasis basis(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) basis.add(m.row(r));
    return basis.rank();
}

bool z2_in_span(const Z2Matrix& m, const BitVector& v) {
    if (v.size() != m.cols()) throw DimensionMismatch("z2_in_span: vector length differs from cols");
    Z2EchelonBasis basis(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) basis.add(m.row(r));
    return basis.contains(v);
}

void Z2EchelonBasis::reduce(BitVector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.test(pivots_[i])) v ^= rows_[i];
}

bool Z2EchelonBasis::add(BitVector v) {
    if (v.size() != cols_) throw DimensionMismatch("Z2EchelonBasis: vector length differs");
    reduce(v);
    if (!v.any()) return false;
    pivots_.push_back(v.first());
    rows_.push_back(std::move(v));
    return true;
}

bool Z2EchelonBasis::contains(BitVector v) const {
    if (v.size() != cols_) throw DimensionMismatch("Z2EchelonBasis: vector length differs");
    reduce(v);
    return !v.any();
}

} // namespace coamoeba
