#include "coamoeba/homology.hpp"

#include <algorithm>

#include "coamoeba/errors.hpp"

namespace coamoeba {

namespace {

Integer binomial(std::size_t n, std::size_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer pow2(std::size_t e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConsistencyFailure("ConsistencyFailure: " + what);
}

constexpr std::size_t kMaxQuadrantDimension = 24;

} // namespace

HomologyProfile betti_coamoeba(const NormalizedModel& model, const SmithDecomposition& s) {
    const std::size_t n = model.n;
    HomologyProfile h;
    h.betti.assign(n + 1, Integer(0));
    for (std::size_t k = 0; k + 2 <= n; ++k) h.betti[k] = binomial(n, k);
    h.betti[n - 1] = Integer(n) + s.product() - 1;
    h.total = 0;
    for (const auto& b : h.betti) h.total += b;
    return h;
}

CStarPresentation cstar_presentation(const ZonotopeArrangement& arr, const ConjugationAction& action,
                                     const std::vector<std::vector<std::size_t>>& parity_sets) {
    const std::size_t omega = action.image.size();
    if (parity_sets.size() != arr.n) throw DimensionMismatch("cstar_presentation: one parity set per axis");
    CStarPresentation p;
    p.n = arr.n;
    p.omega = omega;
    p.images.reserve(arr.n + omega);
    for (const auto& J : parity_sets) {
        BitVector row(omega);
        for (auto a : J) row.set(a);
        p.images.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < omega; ++a) {
        BitVector row(omega);
        row.flip(a);
        row.flip(action.image[a]);
        p.images.push_back(std::move(row));
    }
    p.relation = BitVector(omega);
    for (std::size_t a = 0; a < omega; ++a) p.relation.set(a);
    return p;
}

std::size_t rank_assembled(const CStarPresentation& pres) {
    Z2EchelonBasis basis(pres.omega);
    for (const auto& row : pres.images) basis.add(row);
    basis.add(pres.relation);
    return basis.rank() - 1;
}

Integer rank_closed(const IndexPartition& part, const std::vector<Integer>& D) {
    Integer d = 1;
    for (const auto& x : D) d *= x;
    if (!part.I10.empty()) return d / 2 - 1;
    return Integer(part.I00.size()) + (d - pow2(part.I00.size())) / 2;
}

std::size_t rank2(const IntMatrix& a) { return z2_rank(Z2Matrix::from_integers(a)); }

RealPartProfile quadrant_mask(const NormalizedModel& model) {
    const std::size_t n = model.n;
    if (n > kMaxQuadrantDimension)
        throw UnsupportedDimension("quadrant_mask: n > " + std::to_string(kMaxQuadrantDimension));
    const Z2Matrix a2 = Z2Matrix::from_integers(model.A);
    const BitVector d = delta(model.epsilon);
    const std::size_t quadrants = std::size_t{1} << n;

    RealPartProfile rp;
    rp.quadrant_mask = BitVector(quadrants);
    for (std::size_t gamma = 0; gamma < quadrants; ++gamma) {
        BitVector dg(n);
        for (std::size_t j = 0; j < n; ++j) dg.set(j, (gamma >> j) & 1U);
        rp.quadrant_mask.set(gamma, !(a2.apply(dg) == d));
    }
    rp.component_count = rp.quadrant_mask.count();
    rp.all_quadrants_hit = rp.component_count == quadrants;

    // Closed form: 2^n if delta is not in the column space of A mod 2,
    // otherwise 2^n - 2^{n - rank}.
    const bool in_image = z2_in_span(a2.transposed(), d);
    const Integer expected = in_image ? Integer(pow2(n) - pow2(n - z2_rank(a2))) : pow2(n);
    check(expected == rp.component_count, "quadrant census " + rp.component_count.get_str() +
                                              " != closed form " + expected.get_str());
    return rp;
}

GaloisVerdict defect_and_verdict(const NormalizedModel& model, const HomologyProfile& homology,
                                 const Integer& rank, const RealPartProfile& real_part,
                                 const IndexPartition& part) {
    const std::size_t n = model.n;
    GaloisVerdict v;
    v.rank2_A = rank2(model.A);
    v.kernel_mod_image_dim = homology.total - 2 * rank;
    v.defect = v.kernel_mod_image_dim - real_part.component_count;

    const Z2Matrix a2 = Z2Matrix::from_integers(model.A);
    const bool delta_in_image = z2_in_span(a2.transposed(), delta(model.epsilon));
    check(real_part.all_quadrants_hit == !delta_in_image, "all-quadrants <=> delta not in Im(A mod 2)");
    check(!delta_in_image == !part.I10.empty(), "delta not in Im(A mod 2) <=> I10 nonempty");

    const std::size_t corank = n - v.rank2_A;
    const Integer expected =
        real_part.all_quadrants_hit ? Integer(0) : Integer(2 * (pow2(corank) - 1 - Integer(corank)));
    check(v.defect == expected, "defect " + v.defect.get_str() + " != " + expected.get_str());
    check(v.defect >= 0, "negative defect");
    if (part.I10.empty()) check(part.I00.size() == corank, "n - rank2(A) != |I00|");

    v.galois_maximal_coamoeba = v.defect == 0;
    check(v.galois_maximal_coamoeba == (real_part.all_quadrants_hit || corank <= 1),
          "Galois maximality <=> all quadrants hit or n - rank2(A) in {0,1}");
    v.galois_maximal_CX = v.galois_maximal_coamoeba;
    return v;
}

AnalysisReport analyze_model(const NormalizedModel& model) {
    AnalysisReport r;
    r.model = model;
    r.snf = snf(model.A);
    r.deltaG = transformed_delta(r.snf.G, delta(model.epsilon));
    r.partition = partition(r.snf.D, r.deltaG);
    r.homology = betti_coamoeba(model, r.snf);

    const ZonotopeArrangement arr = arrangement(model, r.snf);
    const ConjugationAction action = conjugation_action(arr);
    r.fixed_point_count = action.fixed.size();
    const Integer expected_fixed = r.partition.I10.empty() ? pow2(r.partition.I00.size()) : Integer(0);
    check(expected_fixed == r.fixed_point_count, "fixed-point census");

    std::vector<std::vector<std::size_t>> parity;
    for (std::size_t i = 0; i < model.n; ++i) {
        parity.push_back(parity_set(arr, i));
        const auto& J = parity.back();
        for (auto a : J)
            check(std::binary_search(J.begin(), J.end(), action.image[a]), "parity set not closed under c");
    }
    const CStarPresentation pres = cstar_presentation(arr, action, parity);

    r.rank_closed = rank_closed(r.partition, r.snf.D);
    r.rank_assembled = rank_assembled(pres);
    r.ranks_agree = r.rank_closed == r.rank_assembled;
    check(r.ranks_agree, "rank(1+c*) closed form " + r.rank_closed.get_str() + " != assembled " +
                             std::to_string(r.rank_assembled));

    r.real_part = quadrant_mask(model);
    r.verdict = defect_and_verdict(model, r.homology, r.rank_closed, r.real_part, r.partition);
    return r;
}

AnalysisReport analyze(const PolynomialSpec& spec, std::optional<std::size_t> origin) {
    return analyze_model(normalize(spec, origin));
}

} // namespace coamoeba
