#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing
// here calls into the code under test except to build inputs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "coamoeba/coamoeba.hpp"
#include "coamoeba/exactmath.hpp"
#include "coamoeba/homology.hpp"
#include "coamoeba/model.hpp"

namespace testing_support {

using namespace coamoeba;

inline PolynomialSpec make_spec(const std::vector<std::vector<long>>& exponents,
                                const std::vector<std::string>& coefficients) {
    PolynomialSpec s;
    s.n = exponents.front().size();
    for (std::size_t i = 0; i < exponents.size(); ++i) s.terms.push_back({exponents[i], Rational(coefficients[i])});
    for (auto& t : s.terms) t.coefficient.canonicalize();
    return s;
}

/// 1 + sum_i eps_i z^{A_i}.
inline PolynomialSpec spec_from_matrix(const IntMatrix& a, const SignVector& eps) {
    PolynomialSpec s;
    s.n = a.rows();
    s.terms.push_back({std::vector<long>(s.n, 0), Rational(1)});
    for (std::size_t i = 0; i < s.n; ++i) {
        std::vector<long> e(s.n);
        for (std::size_t j = 0; j < s.n; ++j) e[j] = a(i, j).get_si();
        s.terms.push_back({e, Rational(eps[i])});
    }
    return s;
}

inline NormalizedModel model_of(const IntMatrix& a, const SignVector& eps) {
    return normalize(spec_from_matrix(a, eps));
}

/// Cofactor expansion over machine integers; small matrices only.
inline long long laplace_det(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<long long>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            sub.push_back(row);
        }
        det += (c % 2 ? -1 : 1) * m[0][c] * laplace_det(sub);
    }
    return det;
}

/// gcd of the k x k minors by cofactor expansion of every submatrix.
inline long long brute_minor_gcd(const IntMatrix& a, std::size_t k) {
    const std::size_t n = a.rows();
    long long g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    auto subsets = [n, k](auto&& self, std::vector<std::size_t>& cur, std::size_t start, std::size_t depth,
                          auto&& visit) -> void {
        if (depth == k) {
            visit(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur[depth] = i;
            self(self, cur, i + 1, depth + 1, visit);
        }
    };
    subsets(subsets, rows, 0, 0, [&](const std::vector<std::size_t>& rs) {
        subsets(subsets, cols, 0, 0, [&](const std::vector<std::size_t>& cs) {
            std::vector<std::vector<long long>> m(k, std::vector<long long>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rs[i], cs[j]).get_si();
            g = std::gcd(g, std::llabs(laplace_det(m)));
        });
    });
    return g;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
    return a;
}

inline IntMatrix random_nonsingular(std::mt19937_64& rng, std::size_t n, long bound) {
    for (;;) {
        IntMatrix a = random_matrix(rng, n, bound);
        if (determinant(a) != 0) return a;
    }
}

inline std::vector<SignVector> all_sign_vectors(std::size_t n) {
    std::vector<SignVector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        SignVector s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = (mask >> j) & 1 ? -1 : 1;
        out.push_back(s);
    }
    return out;
}

/// Deterministic corpus of distinct normalized matrices with entries in
/// [-4, 4]: the four 1x1 cases, 22 planar and 15 spatial matrices, each with
/// all sign vectors. 8 + 88 + 120 = 216 models.
inline std::vector<NormalizedModel> corpus() {
    std::vector<NormalizedModel> out;
    std::mt19937_64 rng(20240611);
    std::vector<IntMatrix> mats;
    auto accept = [&mats](const IntMatrix& raw) {
        const IntMatrix a = model_of(raw, SignVector(raw.rows(), 1)).A;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (abs(a(i, j)) > 4) return false;
        if (std::find(mats.begin(), mats.end(), a) != mats.end()) return false;
        mats.push_back(a);
        return true;
    };
    for (long a = 1; a <= 4; ++a) accept(IntMatrix{{a}});
    for (int i = 0; i < 22;) i += accept(random_nonsingular(rng, 2, 4));
    for (int i = 0; i < 15;) i += accept(random_nonsingular(rng, 3, 4));
    for (const auto& a : mats)
        for (const auto& eps : all_sign_vectors(a.rows())) out.push_back(model_of(a, eps));
    return out;
}

/// RX meets the open orthant of signs gamma iff, writing the polynomial as
/// 1 + sum c_i x^{A_i}, some signed monomial c_i gamma^{A_i} is negative:
/// the monomials are independent on the positive orthant.
inline bool quadrant_hit_by_signs(const NormalizedModel& m, std::size_t gamma) {
    for (std::size_t i = 0; i < m.n; ++i) {
        int sign = m.epsilon[i];
        for (std::size_t j = 0; j < m.n; ++j)
            if ((gamma >> j) & 1 && mpz_odd_p(m.A(i, j).get_mpz_t())) sign = -sign;
        if (sign < 0) return true;
    }
    return false;
}

/// Largest gap between consecutive points of {0} u phi on the circle.
inline Rational gap_oracle(std::vector<Rational> pts) {
    pts.push_back(0);
    for (auto& p : pts) {
        p -= Rational(Integer(p.get_num() / p.get_den()));
        if (p < 0) p += 1;
    }
    std::sort(pts.begin(), pts.end());
    Rational best = pts.front() + 1 - pts.back();
    for (std::size_t i = 1; i < pts.size(); ++i) best = std::max(best, Rational(pts[i] - pts[i - 1]));
    return best;
}

inline TurnVector random_turns(std::mt19937_64& rng, std::size_t n, long max_den = 60) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    TurnVector t;
    for (std::size_t i = 0; i < n; ++i) {
        const long den = den_dist(rng);
        std::uniform_int_distribution<long> num_dist(0, den - 1);
        t.emplace_back(num_dist(rng), static_cast<unsigned long>(den));
    }
    return t;
}

inline long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace testing_support
