#include "coamoeba/cubical.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "coamoeba/errors.hpp"
#include "coamoeba/homology.hpp"

namespace coamoeba {

namespace {

constexpr std::size_t kMaxCubicalDimension = 3;
constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 26;

// a <- a + b over GF(2); both sorted.
void add_into(SparseColumn& a, const SparseColumn& b) {
    SparseColumn out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a.swap(out);
}

struct Reduction {
    std::vector<SparseColumn> columns;      // reduced; empty unless a pivot column
    std::vector<std::int64_t> pivot_of_row; // row -> column, -1 if free
    std::size_t rank = 0;
    std::vector<SparseColumn> cycles;       // V_j of columns that reduced to zero
};

// Standard column reduction. Columns flagged in `cleared` are known to
// reduce to zero and are skipped. With `track_cycles`, the combination V_j
// of original columns is kept for every column that vanishes.
Reduction reduce(const std::vector<SparseColumn>& cols, std::size_t rows, const std::vector<std::uint8_t>& cleared,
                 bool track_cycles) {
    Reduction r;
    r.columns.resize(cols.size());
    r.pivot_of_row.assign(rows, -1);
    std::vector<SparseColumn> v;
    if (track_cycles) v.resize(cols.size());

    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!cleared.empty() && cleared[j]) continue;
        SparseColumn col = cols[j];
        SparseColumn comb;
        if (track_cycles) comb.push_back(static_cast<std::uint32_t>(j));
        while (!col.empty()) {
            const auto p = r.pivot_of_row[col.back()];
            if (p < 0) break;
            add_into(col, r.columns[static_cast<std::size_t>(p)]);
            if (track_cycles) add_into(comb, v[static_cast<std::size_t>(p)]);
        }
        if (col.empty()) {
            if (track_cycles) r.cycles.push_back(std::move(comb));
            continue;
        }
        r.pivot_of_row[col.back()] = static_cast<std::int64_t>(j);
        r.columns[j] = std::move(col);
        if (track_cycles) v[j] = std::move(comb);
        ++r.rank;
    }
    return r;
}

std::vector<std::uint8_t> clearing_mask(const Reduction& higher, std::size_t count) {
    std::vector<std::uint8_t> mask(count, 0);
    for (std::size_t row = 0; row < higher.pivot_of_row.size(); ++row)
        if (higher.pivot_of_row[row] >= 0) mask[row] = 1;
    return mask;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

} // namespace

CubicalComplex::CubicalComplex(std::vector<long> resolution, std::vector<long> wrap_shift, const VertexLabel& label)
    : n_(resolution.size()), m_(std::move(resolution)) {
    if (n_ == 0) throw UnsupportedDimension("cubical complex needs n >= 1");
    if (wrap_shift.size() != n_) throw DimensionMismatch("wrap_shift length differs from n");
    std::uint64_t total = 1;
    std::uint64_t vertices = 1;
    for (long mi : m_) {
        if (mi < 2) throw BadResolution("BadResolution: every axis needs at least 2 grid steps");
        total *= static_cast<std::uint64_t>(2 * mi);
        vertices *= static_cast<std::uint64_t>(mi);
        if (total > kMaxGridCells) throw BadResolution("BadResolution: grid too large");
    }

    // Vertex labels, indexed in mixed radix m_i.
    std::vector<long> labels(vertices * n_, 0);
    std::vector<std::uint8_t> labelled(vertices, 0);
    {
        std::vector<long> v(n_, 0);
        for (std::uint64_t idx = 0; idx < vertices; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t i = n_; i-- > 0;) {
                v[i] = static_cast<long>(rest % static_cast<std::uint64_t>(m_[i]));
                rest /= static_cast<std::uint64_t>(m_[i]);
            }
            if (auto l = label(v)) {
                labelled[idx] = 1;
                std::copy(l->begin(), l->end(), labels.begin() + static_cast<std::ptrdiff_t>(idx * n_));
            }
        }
    }
    auto vertex_index = [&](const std::vector<long>& v) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n_; ++i) idx = idx * static_cast<std::uint64_t>(m_[i]) + static_cast<std::uint64_t>(v[i]);
        return idx;
    };

    // A cell is interior to a zonotope iff all corners share one lift label.
    auto interior = [&](const std::vector<long>& pos) {
        std::vector<std::size_t> odd;
        for (std::size_t i = 0; i < n_; ++i)
            if (pos[i] & 1) odd.push_back(i);
        std::vector<long> v(n_), lab(n_), first(n_);
        for (std::uint32_t mask = 0; mask < (1U << odd.size()); ++mask) {
            std::fill(lab.begin(), lab.end(), 0);
            for (std::size_t i = 0; i < n_; ++i) v[i] = pos[i] / 2;
            for (std::size_t b = 0; b < odd.size(); ++b) {
                if (!((mask >> b) & 1U)) continue;
                const std::size_t i = odd[b];
                v[i] += 1;
                if (v[i] == m_[i]) {
                    v[i] = 0;
                    lab[i] += wrap_shift[i];
                }
            }
            const std::uint64_t vi = vertex_index(v);
            if (!labelled[vi]) return false;
            for (std::size_t i = 0; i < n_; ++i) lab[i] += labels[vi * n_ + i];
            if (mask == 0)
                first = lab;
            else if (lab != first)
                return false;
        }
        return true;
    };

    std::vector<std::vector<std::uint64_t>> by_dim(n_ + 1);
    for (std::uint64_t lin = 0; lin < total; ++lin) {
        const auto pos = position(lin);
        std::uint8_t d = 0;
        for (long p : pos) d += static_cast<std::uint8_t>(p & 1);
        by_dim[d].push_back(lin);
    }

    std::vector<std::uint8_t> kept(total, 0);
    for (std::size_t k = n_ + 1; k-- > 0;) {
        if (k < n_) {
            for (auto lin : by_dim[k + 1]) {
                if (!kept[lin]) continue;
                auto pos = position(lin);
                for (std::size_t i = 0; i < n_; ++i) {
                    if (!(pos[i] & 1)) continue;
                    const long p = pos[i];
                    pos[i] = p - 1;
                    kept[linear(pos)] = 1;
                    pos[i] = (p + 1) % (2 * m_[i]);
                    kept[linear(pos)] = 1;
                    pos[i] = p;
                }
            }
        }
        for (auto lin : by_dim[k])
            if (!kept[lin] && !interior(position(lin))) kept[lin] = 1;
    }

    cells_.assign(n_ + 1, {});
    local_.assign(total, -1);
    for (std::size_t k = 0; k <= n_; ++k)
        for (auto lin : by_dim[k])
            if (kept[lin]) {
                local_[lin] = static_cast<std::int64_t>(cells_[k].size());
                cells_[k].push_back(lin);
            }

    boundary_.assign(n_ + 1, {});
    boundary_[0].assign(cells_[0].size(), SparseColumn{});
    for (std::size_t k = 1; k <= n_; ++k) {
        boundary_[k].reserve(cells_[k].size());
        for (auto lin : cells_[k]) {
            auto pos = position(lin);
            SparseColumn col;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!(pos[i] & 1)) continue;
                const long p = pos[i];
                for (long q : {p - 1, (p + 1) % (2 * m_[i])}) {
                    pos[i] = q;
                    const auto l = local_[linear(pos)];
                    if (l < 0) throw ConsistencyFailure("cubical complex is not closed under faces");
                    col.push_back(static_cast<std::uint32_t>(l));
                }
                pos[i] = p;
            }
            std::sort(col.begin(), col.end());
            // Coinciding faces cancel over GF(2).
            SparseColumn reduced;
            for (std::size_t a = 0; a < col.size();) {
                std::size_t b = a;
                while (b < col.size() && col[b] == col[a]) ++b;
                if ((b - a) % 2 == 1) reduced.push_back(col[a]);
                a = b;
            }
            boundary_[k].push_back(std::move(reduced));
        }
    }
}

std::uint64_t CubicalComplex::linear(const std::vector<long>& pos) const {
    std::uint64_t lin = 0;
    for (std::size_t i = 0; i < n_; ++i) lin = lin * static_cast<std::uint64_t>(2 * m_[i]) + static_cast<std::uint64_t>(pos[i]);
    return lin;
}

std::vector<long> CubicalComplex::position(std::uint64_t lin) const {
    std::vector<long> pos(n_);
    for (std::size_t i = n_; i-- > 0;) {
        const auto radix = static_cast<std::uint64_t>(2 * m_[i]);
        pos[i] = static_cast<long>(lin % radix);
        lin /= radix;
    }
    return pos;
}

std::vector<long> CubicalComplex::cell_position(std::size_t k, std::size_t idx) const {
    return position(cells_[k].at(idx));
}

std::optional<std::uint32_t> CubicalComplex::negate(std::size_t k, std::size_t idx) const {
    auto pos = cell_position(k, idx);
    for (std::size_t i = 0; i < n_; ++i) {
        const long j = pos[i] / 2;
        if (pos[i] & 1)
            pos[i] = 2 * (m_[i] - 1 - j) + 1;
        else
            pos[i] = 2 * ((m_[i] - j) % m_[i]);
    }
    const auto l = local_[linear(pos)];
    if (l < 0) return std::nullopt;
    return static_cast<std::uint32_t>(l);
}

bool CubicalComplex::boundary_squared_is_zero() const {
    for (std::size_t k = 2; k <= n_; ++k)
        for (const auto& col : boundary_[k]) {
            SparseColumn acc;
            for (auto f : col) add_into(acc, boundary_[k - 1][f]);
            if (!acc.empty()) return false;
        }
    return true;
}

bool CubicalComplex::negation_symmetric() const {
    for (std::size_t k = 0; k <= n_; ++k)
        for (std::size_t idx = 0; idx < cells_[k].size(); ++idx)
            if (!negate(k, idx)) return false;
    return true;
}

bool CubicalComplex::closed_under_faces() const {
    for (std::size_t k = 1; k <= n_; ++k)
        for (auto lin : cells_[k]) {
            auto pos = position(lin);
            for (std::size_t i = 0; i < n_; ++i) {
                if (!(pos[i] & 1)) continue;
                const long p = pos[i];
                for (long q : {p - 1, (p + 1) % (2 * m_[i])}) {
                    pos[i] = q;
                    if (local_[linear(pos)] < 0) return false;
                }
                pos[i] = p;
            }
        }
    return true;
}

long CubicalComplex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t k = 0; k <= n_; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(cells_[k].size());
    return chi;
}

// ---------------------------------------------------------------------------

std::vector<long> default_resolution(const std::vector<Integer>& D) {
    const std::size_t n = D.size();
    const long cap = n <= 2 ? 128 : 24;
    long l = 1;
    for (const auto& d : D) {
        if (!d.fits_slong_p()) throw BadResolution("BadResolution: d_i exceeds machine range");
        l = lcm_long(l, 2 * d.get_si());
    }
    const long target = 8 * l;
    std::vector<long> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long step = 2 * D[i].get_si();
        const long capped = std::min(target, cap);
        m[i] = std::max(step, capped / step * step);
    }
    return m;
}

std::vector<long> resolution_from_target(long target, const std::vector<Integer>& D) {
    if (target < 1) throw BadResolution("BadResolution: resolution must be positive");
    std::vector<long> m;
    for (const auto& d : D) {
        const long step = 2 * d.get_si();
        m.push_back((target + step - 1) / step * step);
    }
    return m;
}

CubicalComplex build_complex(const ZonotopeArrangement& arr, const std::vector<long>& m) {
    if (arr.n > kMaxCubicalDimension)
        throw UnsupportedDimension("UnsupportedDimension: cubical oracle supports n <= 3");
    if (m.size() != arr.n) throw BadResolution("BadResolution: need one resolution per axis");
    for (std::size_t i = 0; i < arr.n; ++i) {
        const Integer step = 2 * arr.D[i];
        if (m[i] <= 0 || Integer(m[i]) % step != 0)
            throw BadResolution("BadResolution: m_" + std::to_string(i + 1) + " = " + std::to_string(m[i]) +
                                " is not a positive multiple of 2*d_i = " + step.get_str());
    }
    std::vector<long> shift;
    for (const auto& d : arr.D) shift.push_back(d.get_si());
    auto label = [&arr, &m](const std::vector<long>& v) {
        RationalVector psi(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) psi[i] = Rational(v[i], static_cast<unsigned long>(m[i]));
        for (auto& x : psi) x.canonicalize();
        return containing_lift(arr, psi);
    };
    return CubicalComplex(m, shift, label);
}

std::vector<std::size_t> betti_z2(const CubicalComplex& complex) {
    const std::size_t n = complex.dimension();
    std::vector<std::size_t> rank(n + 2, 0);
    Reduction higher;
    for (std::size_t k = n; k >= 1; --k) {
        const auto mask = k == n ? std::vector<std::uint8_t>{} : clearing_mask(higher, complex.cell_count(k));
        higher = reduce(complex.boundary(k), complex.cell_count(k - 1), mask, false);
        rank[k] = higher.rank;
    }
    std::vector<std::size_t> betti(n + 1);
    for (std::size_t k = 0; k <= n; ++k) betti[k] = complex.cell_count(k) - rank[k] - rank[k + 1];
    return betti;
}

std::size_t conjugation_rank(const CubicalComplex& complex) {
    const std::size_t n = complex.dimension();
    const std::size_t k = n - 1;
    const Reduction top = reduce(complex.boundary(n), complex.cell_count(k), {}, false);
    const std::size_t rows_below = k == 0 ? 0 : complex.cell_count(k - 1);
    const Reduction cyc = reduce(complex.boundary(k), rows_below, clearing_mask(top, complex.cell_count(k)), true);

    std::vector<std::uint32_t> neg(complex.cell_count(k));
    for (std::size_t idx = 0; idx < neg.size(); ++idx) {
        auto img = complex.negate(k, idx);
        if (!img) throw SymmetryViolation("SymmetryViolation: negation leaves the kept complex");
        neg[idx] = *img;
    }

    // Pivot rows: >= 0 indexes a reduced column of d_n (a basis of B),
    // <= -2 indexes basis[-2 - p] of the vectors added beyond B.
    std::vector<std::int64_t> pivot = top.pivot_of_row;
    std::vector<SparseColumn> basis;
    for (const auto& z : cyc.cycles) {
        SparseColumn image;
        image.reserve(z.size());
        for (auto c : z) image.push_back(neg[c]);
        std::sort(image.begin(), image.end());
        SparseColumn f = z;
        add_into(f, image);
        while (!f.empty()) {
            const auto p = pivot[f.back()];
            if (p == -1) break;
            if (p >= 0)
                add_into(f, top.columns[static_cast<std::size_t>(p)]);
            else
                add_into(f, basis[static_cast<std::size_t>(-2 - p)]);
        }
        if (f.empty()) continue;
        pivot[f.back()] = -2 - static_cast<std::int64_t>(basis.size());
        basis.push_back(std::move(f));
    }
    return basis.size();
}

// ---------------------------------------------------------------------------

std::vector<std::string> VerificationRecord::diff() const {
    std::vector<std::string> out;
    auto join = [](const auto& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, Integer>)
                s += v[i].get_str();
            else
                s += std::to_string(v[i]);
        }
        return s + ")";
    };
    if (!assembled_agree)
        out.push_back("rank_closed=" + closed_rank.get_str() + " rank_assembled=" + std::to_string(assembled_rank));
    if (!membership_agree)
        out.push_back("membership disagreements=" + std::to_string(membership_disagreements) + "/" +
                      std::to_string(membership_samples));
    if (!betti_agree) out.push_back("betti closed=" + join(closed_betti) + " cubical=" + join(cubical_betti));
    if (!rank_agree)
        out.push_back("rank closed=" + closed_rank.get_str() + " cubical=" + std::to_string(cubical_rank));
    if (!stable)
        out.push_back("resolution instability: betti " + join(cubical_betti) + " vs " + join(doubled_betti) +
                      ", rank " + std::to_string(cubical_rank) + " vs " + std::to_string(doubled_rank));
    if (!complex_sound) out.push_back("cubical complex failed an internal invariant");
    return out;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

struct CubicalResult {
    std::vector<std::size_t> betti;
    std::size_t rank = 0;
    std::vector<std::size_t> cells;
    bool sound = true;
    double build_ms = 0;
    double homology_ms = 0;
};

CubicalResult run_cubical(const ZonotopeArrangement& arr, const std::vector<long>& m) {
    CubicalResult r;
    auto t = std::chrono::steady_clock::now();
    const CubicalComplex cx = build_complex(arr, m);
    r.build_ms = ms_since(t);
    t = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k <= cx.dimension(); ++k) r.cells.push_back(cx.cell_count(k));
    r.betti = betti_z2(cx);
    r.rank = conjugation_rank(cx);
    long alt = 0;
    for (std::size_t k = 0; k < r.betti.size(); ++k) alt += (k % 2 == 0 ? 1 : -1) * static_cast<long>(r.betti[k]);
    r.sound = cx.boundary_squared_is_zero() && cx.closed_under_faces() && cx.negation_symmetric() &&
              alt == cx.euler_characteristic();
    r.homology_ms = ms_since(t);
    return r;
}

} // namespace

VerificationRecord verify(const NormalizedModel& model, const VerificationOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    VerificationRecord rec;
    rec.n = model.n;

    const SmithDecomposition s = snf(model.A);
    const ZonotopeArrangement arr = arrangement(model, s);
    const IndexPartition part = partition(s.D, arr.deltaG);
    rec.closed_betti = betti_coamoeba(model, s).betti;
    rec.closed_rank = rank_closed(part, s.D);

    const ConjugationAction action = conjugation_action(arr);
    std::vector<std::vector<std::size_t>> parity;
    for (std::size_t i = 0; i < model.n; ++i) parity.push_back(parity_set(arr, i));
    rec.assembled_rank = rank_assembled(cstar_presentation(arr, action, parity));
    rec.assembled_agree = rec.closed_rank == rec.assembled_rank;

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> den_dist(1, 48);
    for (std::size_t sample = 0; sample < options.membership_samples; ++sample) {
        TurnVector theta;
        for (std::size_t i = 0; i < model.n; ++i) {
            const long den = den_dist(rng);
            std::uniform_int_distribution<long> num_dist(0, den - 1);
            theta.emplace_back(num_dist(rng), static_cast<unsigned long>(den));
        }
        if (membership(model, theta) != membership_by_zonotope(arr, theta)) ++rec.membership_disagreements;
    }
    rec.membership_samples = options.membership_samples;
    rec.membership_agree = rec.membership_disagreements == 0;

    if (!options.skip_cubical) {
        if (model.n > kMaxCubicalDimension)
            throw UnsupportedDimension("UnsupportedDimension: cubical oracle supports n <= 3 (use --skip-cubical)");
        rec.resolution = options.resolution ? *options.resolution : default_resolution(s.D);
        const CubicalResult base = run_cubical(arr, rec.resolution);
        rec.cubical_ran = true;
        rec.cubical_betti = base.betti;
        rec.cubical_rank = base.rank;
        rec.cell_counts = base.cells;
        rec.complex_sound = base.sound;
        rec.build_ms = base.build_ms;
        rec.homology_ms = base.homology_ms;

        rec.betti_agree = rec.cubical_betti.size() == rec.closed_betti.size();
        for (std::size_t k = 0; rec.betti_agree && k < rec.closed_betti.size(); ++k)
            rec.betti_agree = rec.closed_betti[k] == rec.cubical_betti[k];
        rec.rank_agree = rec.closed_rank == rec.cubical_rank;

        if (options.check_doubled) {
            std::vector<long> doubled = rec.resolution;
            for (auto& x : doubled) x *= 2;
            const CubicalResult fine = run_cubical(arr, doubled);
            rec.doubled_betti = fine.betti;
            rec.doubled_rank = fine.rank;
            rec.stable = fine.betti == base.betti && fine.rank == base.rank;
            rec.complex_sound = rec.complex_sound && fine.sound;
        }
    }
    rec.total_ms = ms_since(start);
    return rec;
}

} // namespace coamoeba
