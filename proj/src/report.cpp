#include "coamoeba/report.hpp"

#include <sstream>

#include "coamoeba/errors.hpp"

namespace coamoeba {

namespace {

Json index_list(const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (auto i : idx) a.push_back(i + 1);
    return a;
}

template <typename Vec>
Json integer_list(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_to_json(Integer(x)));
    return a;
}

Json bits(const BitVector& b) {
    Json a = Json::array();
    for (std::size_t i = 0; i < b.size(); ++i) a.push_back(b.test(i) ? 1 : 0);
    return a;
}

long json_long(const nlohmann::json& j, const std::string& what) {
    if (!j.is_number_integer()) throw InvalidInput("InvalidJson: " + what + " must be an integer");
    return j.get<long>();
}

} // namespace

Json integer_to_json(const Integer& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

PolynomialSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("InvalidJson: spec must be an object");
    if (!j.contains("n")) throw InvalidInput("InvalidJson: missing field 'n'");
    if (!j.contains("terms") || !j["terms"].is_array()) throw InvalidInput("InvalidJson: missing array 'terms'");
    const long n = json_long(j["n"], "'n'");
    if (n < 1) throw InvalidInput("InvalidDimension: n must be at least 1");

    PolynomialSpec spec;
    spec.n = static_cast<std::size_t>(n);
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exponent") || !t.contains("coefficient"))
            throw InvalidInput("InvalidJson: each term needs 'exponent' and 'coefficient'");
        if (!t["exponent"].is_array()) throw InvalidInput("InvalidJson: 'exponent' must be an array");
        Term term;
        for (const auto& e : t["exponent"]) term.exponent.push_back(json_long(e, "exponent entry"));
        const auto& c = t["coefficient"];
        if (c.is_string())
            term.coefficient = parse_rational(c.get<std::string>());
        else if (c.is_number())
            term.coefficient = parse_rational(c.dump());
        else
            throw InvalidInput("InvalidJson: 'coefficient' must be a string or number");
        spec.terms.push_back(std::move(term));
    }
    validate(spec);
    return spec;
}

Json spec_to_json(const PolynomialSpec& spec) {
    Json j;
    j["n"] = spec.n;
    j["terms"] = Json::array();
    for (const auto& t : spec.terms) {
        Json term;
        term["exponent"] = t.exponent;
        term["coefficient"] = t.coefficient.get_str();
        j["terms"].push_back(std::move(term));
    }
    return j;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("InvalidJson: matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (const auto& r : j) {
        if (!r.is_array()) throw InvalidInput("InvalidJson: matrix rows must be arrays");
        if (cols == 0) cols = r.size();
        if (r.size() != cols || cols == 0) throw DimensionMismatch("DimensionMismatch: ragged matrix");
    }
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = j[r][c];
            if (e.is_number_integer())
                m(r, c) = e.get<long>();
            else if (e.is_string())
                m(r, c) = Integer(e.get<std::string>(), 10);
            else
                throw InvalidInput("InvalidJson: matrix entries must be integers");
        }
    return m;
}

Json matrix_to_json(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
        a.push_back(std::move(row));
    }
    return a;
}

Json snf_to_json(const SmithDecomposition& s) {
    Json j;
    j["G"] = matrix_to_json(s.G);
    j["H"] = matrix_to_json(s.H);
    j["D"] = integer_list(s.D);
    return j;
}

Json report_to_json(const AnalysisReport& r) {
    Json j;
    Json model;
    model["n"] = r.model.n;
    model["A"] = matrix_to_json(r.model.A);
    model["epsilon"] = r.model.epsilon;
    model["origin_index"] = r.model.origin_index;
    model["globally_negated"] = r.model.globally_negated;
    j["model"] = std::move(model);

    Json s;
    s["G"] = matrix_to_json(r.snf.G);
    s["D"] = integer_list(r.snf.D);
    j["snf"] = std::move(s);
    j["deltaG"] = bits(r.deltaG);

    Json part;
    part["I00"] = index_list(r.partition.I00);
    part["I10"] = index_list(r.partition.I10);
    part["I01"] = index_list(r.partition.I01);
    part["I11"] = index_list(r.partition.I11);
    j["partition"] = std::move(part);

    Json hom;
    hom["betti"] = integer_list(r.homology.betti);
    hom["total"] = integer_to_json(r.homology.total);
    j["homology"] = std::move(hom);

    j["rank_closed"] = integer_to_json(r.rank_closed);
    j["rank_assembled"] = r.rank_assembled;
    j["ranks_agree"] = r.ranks_agree;
    j["fixed_point_count"] = r.fixed_point_count;

    Json real;
    std::string mask;
    for (std::size_t g = 0; g < r.real_part.quadrant_mask.size(); ++g)
        mask.push_back(r.real_part.quadrant_mask.test(g) ? '1' : '0');
    real["quadrant_mask"] = mask;
    real["component_count"] = integer_to_json(r.real_part.component_count);
    real["all_quadrants_hit"] = r.real_part.all_quadrants_hit;
    j["real_part"] = std::move(real);

    j["kernel_mod_image_dim"] = integer_to_json(r.verdict.kernel_mod_image_dim);
    j["defect"] = integer_to_json(r.verdict.defect);
    j["galois_maximal_coamoeba"] = r.verdict.galois_maximal_coamoeba;
    j["galois_maximal_CX"] = r.verdict.galois_maximal_CX;
    j["galois_maximal_CX_condition"] = kConjectureFlag;
    j["rank2_A"] = r.verdict.rank2_A;
    return j;
}

Json verification_to_json(const VerificationRecord& r, bool include_timings) {
    Json j;
    j["id"] = r.id;
    j["n"] = r.n;
    j["ok"] = r.ok();
    j["closed_betti"] = integer_list(r.closed_betti);
    j["rank_closed"] = integer_to_json(r.closed_rank);
    j["rank_assembled"] = r.assembled_rank;
    j["assembled_agree"] = r.assembled_agree;
    j["membership_samples"] = r.membership_samples;
    j["membership_disagreements"] = r.membership_disagreements;
    j["membership_agree"] = r.membership_agree;
    j["cubical_ran"] = r.cubical_ran;
    if (r.cubical_ran) {
        j["resolution"] = r.resolution;
        j["cell_counts"] = r.cell_counts;
        j["cubical_betti"] = r.cubical_betti;
        j["cubical_rank"] = r.cubical_rank;
        j["doubled_betti"] = r.doubled_betti;
        j["doubled_rank"] = r.doubled_rank;
        j["betti_agree"] = r.betti_agree;
        j["rank_agree"] = r.rank_agree;
        j["stable"] = r.stable;
        j["complex_sound"] = r.complex_sound;
    }
    j["diff"] = r.diff();
    if (include_timings) {
        Json t;
        t["build_ms"] = r.build_ms;
        t["homology_ms"] = r.homology_ms;
        t["total_ms"] = r.total_ms;
        j["timings"] = std::move(t);
    }
    return j;
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    auto list = [&os](const auto& v, bool one_based = false) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ", ";
            if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, std::size_t>)
                os << (one_based ? v[i] + 1 : v[i]);
            else
                os << v[i];
        }
        os << ')';
    };
    os << "n                      " << r.model.n << '\n';
    os << "A                      ";
    for (std::size_t i = 0; i < r.model.n; ++i) {
        os << (i ? " " : "") << '[';
        for (std::size_t c = 0; c < r.model.n; ++c) os << (c ? "," : "") << r.model.A(i, c);
        os << ']';
    }
    os << "\nepsilon                ";
    list(r.model.epsilon);
    os << "\nD                      ";
    list(r.snf.D);
    os << "\npartition              I00=";
    list(r.partition.I00, true);
    os << " I10=";
    list(r.partition.I10, true);
    os << " I01=";
    list(r.partition.I01, true);
    os << " I11=";
    list(r.partition.I11, true);
    os << "\nbetti (coamoeba)       ";
    list(r.homology.betti);
    os << "  total " << r.homology.total;
    os << "\nrank(1+c*)             " << r.rank_closed << " (assembled " << r.rank_assembled << ")";
    os << "\nfixed zonotopes        " << r.fixed_point_count;
    os << "\nreal components        " << r.real_part.component_count
       << (r.real_part.all_quadrants_hit ? " (every quadrant)" : "");
    os << "\ndim Ker/Im             " << r.verdict.kernel_mod_image_dim;
    os << "\ndefect                 " << r.verdict.defect;
    os << "\nrank2(A)               " << r.verdict.rank2_A;
    os << "\nGalois maximal (C_X)   " << (r.verdict.galois_maximal_coamoeba ? "yes" : "no");
    os << "\nGalois maximal (CX)    " << (r.verdict.galois_maximal_CX ? "yes" : "no") << " [" << kConjectureFlag
       << "]\n";
    return os.str();
}

} // namespace coamoeba
