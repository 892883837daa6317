#include "coamoeba/coamoeba.hpp"

#include <algorithm>
#include <set>

#include "coamoeba/errors.hpp"

namespace coamoeba {

namespace {

Integer floor_of(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational rational_det(std::vector<RationalVector> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m[r][k] == 0) continue;
            const Rational f = m[r][k] / m[k][k];
            for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
        }
    }
    return det;
}

// Scales a rational vector by the lcm of its denominators.
std::vector<Integer> integral_direction(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_num() * (l / x.get_den()));
    return out;
}

Rational dot(const std::vector<Integer>& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += Rational(a[i]) * b[i];
    return s;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
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

Rational wrap_turn(const Rational& x) {
    Rational r = x - Rational(floor_of(x));
    r.canonicalize();
    return r;
}

bool Zonotope::contains_strictly(const RationalVector& p) const {
    if (p.size() != dimension()) throw DimensionMismatch("Zonotope::contains_strictly: point dimension");
    RationalVector rel(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) rel[i] = p[i] - center[i];
    for (const auto& f : facets)
        if (abs(dot(f.normal, rel)) >= f.offset) return false;
    return true;
}

Rational Zonotope::extent(std::size_t axis) const {
    Rational w = 0;
    for (const auto& g : generators) w += abs(g[axis]);
    return w;
}

Rational Zonotope::volume() const {
    const std::size_t n = dimension();
    if (generators.size() < n) return 0;
    Rational vol = 0;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    do {
        std::vector<RationalVector> m;
        for (auto j : idx) m.push_back(generators[j]);
        vol += abs(rational_det(std::move(m)));
    } while (next_subset(idx, generators.size()));
    return vol;
}

Zonotope make_zonotope(RationalVector center, std::vector<RationalVector> generators) {
    const std::size_t n = center.size();
    for (const auto& g : generators)
        if (g.size() != n) throw DimensionMismatch("make_zonotope: generator dimension");

    std::vector<std::vector<Integer>> dirs;
    dirs.reserve(generators.size());
    for (const auto& g : generators) dirs.push_back(integral_direction(g));

    std::set<std::vector<Integer>> normals;
    const std::size_t k = n - 1;
    if (generators.size() >= k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        do {
            std::vector<Integer> nu(n);
            for (std::size_t j = 0; j < n; ++j) {
                IntMatrix minor(k, k);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0, cc = 0; c < n; ++c) {
                        if (c == j) continue;
                        minor(r, cc++) = dirs[idx[r]][c];
                    }
                Integer d = determinant(minor);
                nu[j] = (j % 2 == 0) ? d : Integer(-d);
            }
            Integer g = 0;
            for (const auto& x : nu) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 0) continue;
            for (auto& x : nu) x /= g;
            auto lead = std::find_if(nu.begin(), nu.end(), [](const Integer& x) { return x != 0; });
            if (*lead < 0)
                for (auto& x : nu) x = -x;
            normals.insert(std::move(nu));
        } while (k > 0 && next_subset(idx, generators.size()));
    }

    Zonotope z{std::move(center), std::move(generators), {}};
    for (const auto& nu : normals) {
        Rational off = 0;
        for (const auto& g : z.generators) off += abs(dot(nu, g));
        off /= 2;
        z.facets.push_back(Facet{nu, off});
    }
    return z;
}

Zonotope standard_zonotope(std::size_t n) {
    if (n == 0) throw UnsupportedDimension("standard_zonotope: n must be at least 1");
    std::vector<RationalVector> gens;
    for (std::size_t k = 0; k < n; ++k) {
        RationalVector g(n, Rational(0));
        g[k] = Rational(1, 2);
        gens.push_back(std::move(g));
    }
    gens.emplace_back(n, Rational(-1, 2));
    return make_zonotope(RationalVector(n, Rational(0)), std::move(gens));
}

std::vector<RationalVector> zonogon_vertices(const Zonotope& z) {
    if (z.dimension() != 2) throw UnsupportedDimension("zonogon_vertices: zonotope is not 2-dimensional");
    std::vector<RationalVector> gens;
    for (auto g : z.generators) {
        if (g[0] == 0 && g[1] == 0) continue;
        if (g[1] < 0 || (g[1] == 0 && g[0] < 0)) {
            g[0] = -g[0];
            g[1] = -g[1];
        }
        gens.push_back(std::move(g));
    }
    // All directions lie in the upper half-plane, so the cross product
    // orders them by angle.
    std::stable_sort(gens.begin(), gens.end(), [](const RationalVector& a, const RationalVector& b) {
        return a[0] * b[1] - a[1] * b[0] > 0;
    });
    RationalVector p = z.center;
    for (const auto& g : gens) {
        p[0] -= g[0] / 2;
        p[1] -= g[1] / 2;
    }
    // Starting from the lowest point, the upper-half-plane directions sorted
    // by angle trace the right chain; negated, they trace the left chain.
    std::vector<RationalVector> out;
    for (const auto& g : gens) {
        out.push_back(p);
        p[0] += g[0];
        p[1] += g[1];
    }
    for (const auto& g : gens) {
        out.push_back(p);
        p[0] -= g[0];
        p[1] -= g[1];
    }
    return out;
}

// ---------------------------------------------------------------------------

std::size_t ZonotopeArrangement::omega_size() const {
    Integer p = 1;
    for (const auto& d : D) p *= d;
    if (p > kMaxOmega) throw InvalidInput("OmegaTooLarge: d_1...d_n = " + p.get_str() + " exceeds supported size");
    return p.get_ui();
}

std::vector<long> ZonotopeArrangement::radices() const {
    std::vector<long> r;
    r.reserve(D.size());
    for (const auto& d : D) {
        if (!d.fits_slong_p()) throw InvalidInput("OmegaTooLarge: d_i exceeds machine range");
        r.push_back(d.get_si());
    }
    return r;
}

OmegaIndex ZonotopeArrangement::omega_at(std::size_t linear) const {
    const auto r = radices();
    OmegaIndex alpha(n);
    for (std::size_t i = n; i-- > 0;) {
        alpha[i] = static_cast<long>(linear % static_cast<std::size_t>(r[i]));
        linear /= static_cast<std::size_t>(r[i]);
    }
    return alpha;
}

bool ZonotopeArrangement::in_omega(const OmegaIndex& alpha) const {
    if (alpha.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (alpha[i] < 0 || D[i] <= alpha[i]) return false;
    return true;
}

std::size_t ZonotopeArrangement::omega_linear(const OmegaIndex& alpha) const {
    if (!in_omega(alpha)) throw IndexOutOfRange("omega index out of range");
    const auto r = radices();
    std::size_t lin = 0;
    for (std::size_t i = 0; i < n; ++i) lin = lin * static_cast<std::size_t>(r[i]) + static_cast<std::size_t>(alpha[i]);
    return lin;
}

RationalVector ZonotopeArrangement::lift_center(const std::vector<long>& m) const {
    RationalVector c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = (Rational(deltaG.test(i) ? 1 : 0, 2) + m[i]) / Rational(D[i]);
        c[i].canonicalize();
    }
    return c;
}

RationalVector ZonotopeArrangement::center(const OmegaIndex& alpha) const {
    if (!in_omega(alpha)) throw IndexOutOfRange("center: omega index out of range");
    return lift_center(alpha);
}

RationalVector ZonotopeArrangement::to_arrangement_coords(const TurnVector& theta) const {
    if (theta.size() != n) throw DimensionMismatch("theta has wrong dimension");
    RationalVector psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) s += Rational(H_inverse(i, j)) * theta[j].value();
        psi[i] = wrap_turn(s);
    }
    return psi;
}

ZonotopeArrangement arrangement(const NormalizedModel& model, const SmithDecomposition& s) {
    const std::size_t n = model.n;
    if (s.D.size() != n || s.G.rows() != n) throw DimensionMismatch("arrangement: SNF does not match model");
    ZonotopeArrangement arr;
    arr.n = n;
    arr.D = s.D;
    arr.G = s.G;
    arr.H_inverse = unimodular_inverse(s.H);
    arr.deltaG = transformed_delta(s.G, delta(model.epsilon));

    const Zonotope std_shape = standard_zonotope(n);
    std::vector<RationalVector> gens;
    for (const auto& g : std_shape.generators) {
        RationalVector img(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) img[i] += Rational(s.G(i, k)) * g[k];
            img[i] /= Rational(s.D[i]);
        }
        gens.push_back(std::move(img));
    }
    arr.shape = make_zonotope(RationalVector(n, Rational(0)), std::move(gens));

    arr.extents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Integer abs_sum = 0, row_sum = 0;
        for (std::size_t k = 0; k < n; ++k) {
            abs_sum += abs(s.G(i, k));
            row_sum += s.G(i, k);
        }
        arr.extents[i] = Rational(abs_sum + abs(row_sum), 2 * s.D[i]);
        arr.extents[i].canonicalize();
    }
    return arr;
}

// ---------------------------------------------------------------------------

Rational max_cyclic_gap(const RationalVector& phi) {
    std::vector<Rational> pts;
    pts.reserve(phi.size() + 1);
    pts.emplace_back(0);
    for (const auto& p : phi) pts.push_back(wrap_turn(p));
    std::sort(pts.begin(), pts.end());
    Rational best = pts.front() + 1 - pts.back();
    for (std::size_t i = 1; i < pts.size(); ++i) best = std::max(best, Rational(pts[i] - pts[i - 1]));
    return best;
}

Region membership(const NormalizedModel& model, const TurnVector& theta) {
    if (theta.size() != model.n) throw DimensionMismatch("membership: theta has wrong dimension");
    RationalVector phi(model.n);
    for (std::size_t i = 0; i < model.n; ++i) {
        Rational s = model.epsilon[i] == -1 ? Rational(-1, 2) : Rational(0);
        for (std::size_t j = 0; j < model.n; ++j) s += Rational(model.A(i, j)) * theta[j].value();
        phi[i] = s;
    }
    return max_cyclic_gap(phi) > Rational(1, 2) ? Region::Complement : Region::Coamoeba;
}

std::optional<std::vector<long>> containing_lift(const ZonotopeArrangement& arr, const RationalVector& psi) {
    const std::size_t n = arr.n;
    // Per-axis candidates: |d_i psi_i - dG_i/2 - m_i| < d_i L_i / 2.
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational d(arr.D[i]);
        const Rational x = d * psi[i] - Rational(arr.deltaG.test(i) ? 1 : 0, 2);
        const Rational r = d * arr.extents[i] / 2;
        lo[i] = Integer(floor_of(x - r) + 1).get_si();
        hi[i] = Integer(ceil_of(x + r) - 1).get_si();
        if (lo[i] > hi[i]) return std::nullopt;
    }
    std::vector<long> m = lo;
    RationalVector rel(n);
    for (;;) {
        const RationalVector c = arr.lift_center(m);
        for (std::size_t i = 0; i < n; ++i) rel[i] = psi[i] - c[i];
        if (arr.shape.contains_strictly(rel)) return m;
        std::size_t i = 0;
        while (i < n && m[i] == hi[i]) {
            m[i] = lo[i];
            ++i;
        }
        if (i == n) return std::nullopt;
        ++m[i];
    }
}

Region membership_by_zonotope(const ZonotopeArrangement& arr, const TurnVector& theta) {
    return containing_lift(arr, arr.to_arrangement_coords(theta)) ? Region::Complement : Region::Coamoeba;
}

// ---------------------------------------------------------------------------

OmegaIndex conjugate_index(const ZonotopeArrangement& arr, const OmegaIndex& alpha) {
    if (!arr.in_omega(alpha)) throw IndexOutOfRange("conjugate_index: omega index out of range");
    const auto r = arr.radices();
    OmegaIndex out(arr.n);
    for (std::size_t i = 0; i < arr.n; ++i) {
        if (arr.deltaG.test(i))
            out[i] = (r[i] - 1) - alpha[i];
        else
            out[i] = (r[i] - alpha[i]) % r[i];
    }
    return out;
}

ConjugationAction conjugation_action(const ZonotopeArrangement& arr) {
    const std::size_t size = arr.omega_size();
    ConjugationAction act;
    act.image.resize(size);
    for (std::size_t lin = 0; lin < size; ++lin) {
        act.image[lin] = arr.omega_linear(conjugate_index(arr, arr.omega_at(lin)));
        if (act.image[lin] == lin) act.fixed.push_back(lin);
    }
    return act;
}

std::vector<OmegaIndex> fixed_indices(const ZonotopeArrangement& arr) {
    std::vector<OmegaIndex> out;
    for (auto lin : conjugation_action(arr).fixed) out.push_back(arr.omega_at(lin));
    return out;
}

Integer slice_count(const ZonotopeArrangement& arr, std::size_t axis, const OmegaIndex& alpha) {
    if (axis >= arr.n) throw IndexOutOfRange("slice_count: axis out of range");
    const Rational c = arr.center(alpha)[axis];
    const Rational half = arr.extents[axis] / 2;
    const Integer first = floor_of(c - half) + 1;
    const Integer last = ceil_of(c + half) - 1;
    return last >= first ? Integer(last - first + 1) : Integer(0);
}

std::vector<std::size_t> parity_set(const ZonotopeArrangement& arr, std::size_t axis) {
    const std::size_t size = arr.omega_size();
    std::vector<std::size_t> out;
    for (std::size_t lin = 0; lin < size; ++lin)
        if (mpz_odd_p(slice_count(arr, axis, arr.omega_at(lin)).get_mpz_t())) out.push_back(lin);
    return out;
}

} // namespace coamoeba
