#include "coamoeba/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "coamoeba/errors.hpp"

namespace coamoeba {

void validate(const PolynomialSpec& spec) {
    if (spec.n == 0) throw InvalidInput("InvalidDimension: n must be at least 1");
    if (spec.terms.size() != spec.n + 1)
        throw WrongTermCount("WrongTermCount: expected " + std::to_string(spec.n + 1) + " terms, got " +
                             std::to_string(spec.terms.size()));
    std::set<std::vector<long>> seen;
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        const auto& term = spec.terms[t];
        if (term.exponent.size() != spec.n)
            throw DimensionMismatch("DimensionMismatch: term " + std::to_string(t) + " has exponent of length " +
                                    std::to_string(term.exponent.size()) + ", expected " +
                                    std::to_string(spec.n));
        if (term.coefficient == 0)
            throw InvalidInput("ZeroCoefficient: term " + std::to_string(t) + " has coefficient 0");
        if (!seen.insert(term.exponent).second)
            throw DuplicateExponent("DuplicateExponent: term " + std::to_string(t) + " repeats an exponent");
    }
}

NormalizedModel normalize(const PolynomialSpec& spec, std::optional<std::size_t> origin) {
    validate(spec);
    const std::size_t n = spec.n;

    std::size_t o = 0;
    if (origin) {
        if (*origin >= spec.terms.size()) throw IndexOutOfRange("normalize: origin term index out of range");
        o = *origin;
    } else {
        for (std::size_t t = 1; t < spec.terms.size(); ++t)
            if (spec.terms[t].exponent < spec.terms[o].exponent) o = t;
    }

    const bool negate = spec.terms[o].coefficient < 0;
    struct Vertex {
        std::vector<long> exponent;
        int sign;
    };
    std::vector<Vertex> vertices;
    vertices.reserve(n);
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        if (t == o) continue;
        Vertex v{spec.terms[t].exponent, 0};
        for (std::size_t j = 0; j < n; ++j) v.exponent[j] -= spec.terms[o].exponent[j];
        const int s = spec.terms[t].coefficient > 0 ? 1 : -1;
        v.sign = negate ? -s : s;
        vertices.push_back(std::move(v));
    }
    std::stable_sort(vertices.begin(), vertices.end(),
                     [](const Vertex& a, const Vertex& b) { return a.exponent > b.exponent; });

    NormalizedModel model;
    model.n = n;
    model.A = IntMatrix(n, n);
    model.epsilon.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) model.A(i, j) = vertices[i].exponent[j];
        model.epsilon[i] = vertices[i].sign;
    }
    model.origin_index = o;
    model.globally_negated = negate;
    if (determinant(model.A) == 0) throw DegenerateSimplex();
    return model;
}

PolynomialSpec to_spec(const NormalizedModel& model) {
    PolynomialSpec spec;
    spec.n = model.n;
    spec.terms.push_back(Term{std::vector<long>(model.n, 0), Rational(1)});
    for (std::size_t i = 0; i < model.n; ++i) {
        Term t;
        t.exponent.resize(model.n);
        for (std::size_t j = 0; j < model.n; ++j) {
            if (!model.A(i, j).fits_slong_p()) throw InvalidInput("to_spec: exponent exceeds machine range");
            t.exponent[j] = model.A(i, j).get_si();
        }
        t.coefficient = model.epsilon[i];
        spec.terms.push_back(std::move(t));
    }
    return spec;
}

BitVector delta(const SignVector& epsilon) {
    BitVector d(epsilon.size());
    for (std::size_t i = 0; i < epsilon.size(); ++i) {
        if (epsilon[i] != 1 && epsilon[i] != -1) throw InvalidInput("delta: signs must be +1 or -1");
        d.set(i, epsilon[i] == -1);
    }
    return d;
}

BitVector transformed_delta(const IntMatrix& G, const BitVector& delta) {
    return Z2Matrix::from_integers(G).apply(delta);
}

IndexPartition partition(const std::vector<Integer>& D, const BitVector& deltaG) {
    if (D.size() != deltaG.size()) throw DimensionMismatch("partition: D and delta^G lengths differ");
    IndexPartition p;
    for (std::size_t i = 0; i < D.size(); ++i) {
        const bool d_even = mpz_even_p(D[i].get_mpz_t()) != 0;
        const bool dg = deltaG.test(i);
        if (d_even)
            (dg ? p.I10 : p.I00).push_back(i);
        else
            (dg ? p.I11 : p.I01).push_back(i);
    }
    return p;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw InvalidInput("BadCoefficient: empty coefficient");

    auto parse_int = [&](const std::string& digits) {
        if (digits.empty() || digits == "+" || digits == "-") throw InvalidInput("BadCoefficient: '" + text + "'");
        std::size_t start = (digits[0] == '+' || digits[0] == '-') ? 1 : 0;
        for (std::size_t i = start; i < digits.size(); ++i)
            if (digits[i] < '0' || digits[i] > '9') throw InvalidInput("BadCoefficient: '" + text + "'");
        return Integer(digits[0] == '+' ? digits.substr(1) : digits, 10);
    };

    Rational r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num = parse_int(s.substr(0, slash));
        Integer den = parse_int(s.substr(slash + 1));
        if (den == 0) throw InvalidInput("BadCoefficient: zero denominator in '" + text + "'");
        r = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        const bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        Integer w = parse_int(whole);
        Integer f = frac.empty() ? Integer(0) : parse_int(frac);
        if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw InvalidInput("BadCoefficient: '" + text + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer num = abs(w) * scale + f;
        r = Rational(neg ? Integer(-num) : num, scale);
    } else {
        r = Rational(parse_int(s));
    }
    r.canonicalize();
    return r;
}

} // namespace coamoeba
