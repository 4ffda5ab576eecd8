#include "hqft/json_io.hpp"

#include <stdexcept>

namespace hqft {

static json int_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

static mpz_class int_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument("expected integer in scalar tuple");
}

json scalar_to_json(const Scalar& s) {
    return json::array({int_to_json(s.re().get_num()), int_to_json(s.re().get_den()), int_to_json(s.im().get_num()),
                        int_to_json(s.im().get_den())});
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (!j.is_array() || (j.size() != 4 && j.size() != 2)) throw std::invalid_argument("scalar must be [num,den,num_i,den_i]");
    mpq_class re(int_from_json(j[0]), int_from_json(j[1]));
    mpq_class im(0);
    if (j.size() == 4) im = mpq_class(int_from_json(j[2]), int_from_json(j[3]));
    return Scalar(re, im);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw std::invalid_argument("matrix row count mismatch");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw std::invalid_argument("matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
    }
    return m;
}

json complex_to_json(const CochainComplex& c) {
    json out;
    json degs = json::array();
    for (int n : c.degrees()) degs.push_back({{"n", n}, {"basis", c.labels(n)}});
    json diffs = json::array();
    for (int n : c.degrees())
        if (c.dim(n + 1) && c.has_diff(n)) diffs.push_back({{"n", n}, {"matrix", matrix_to_json(c.diff(n))}});
    out["degrees"] = degs;
    out["differentials"] = diffs;
    return out;
}

CochainComplex complex_from_json(const json& j) {
    GradedSpace s;
    for (const auto& d : j.at("degrees")) s.basis[d.at("n").get<int>()] = d.at("basis").get<std::vector<std::string>>();
    std::map<int, Matrix> diffs;
    if (j.contains("differentials"))
        for (const auto& d : j.at("differentials")) {
            int n = d.at("n").get<int>();
            diffs[n] = matrix_from_json(d.at("matrix"), s.dim(n + 1), s.dim(n));
        }
    return CochainComplex(std::move(s), std::move(diffs));
}

json map_to_json(const CochainMap& f) {
    json comps = json::array();
    for (int n : f.source->degrees())
        if (f.target->dim(n + f.degree)) comps.push_back({{"n", n}, {"matrix", matrix_to_json(f.component(n))}});
    return {{"degree", f.degree}, {"components", comps}};
}

json algebra_to_json(const PresentedDGA& A) {
    json gens = json::array();
    for (int g : A.declaration_order()) {
        json diff = json::array();
        for (const auto& [w, c] : A.generator_diff(g)) diff.push_back({A.name(w[0]), scalar_to_json(c)});
        gens.push_back({{"name", A.name(g)}, {"degree", A.degree(g)}, {"diff", diff}});
    }
    json tau = json::array();
    const auto& order = A.declaration_order();
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a; b < order.size(); ++b) {
            const Scalar& t = A.tau(order[a], order[b]);
            if (!t.is_zero()) tau.push_back({A.name(order[a]), A.name(order[b]), scalar_to_json(t)});
        }
    return {{"generators", gens}, {"tau", tau}, {"cutoff", A.cutoff()}};
}

AlgebraPtr algebra_from_json(const json& j) {
    std::vector<GeneratorSpec> gens;
    for (const auto& g : j.at("generators")) {
        GeneratorSpec s{g.at("name").get<std::string>(), g.at("degree").get<int>(), {}};
        if (g.contains("diff"))
            for (const auto& t : g.at("diff")) s.diff.emplace_back(t.at(0).get<std::string>(), scalar_from_json(t.at(1)));
        gens.push_back(std::move(s));
    }
    std::vector<TauEntry> tau;
    if (j.contains("tau"))
        for (const auto& t : j.at("tau"))
            tau.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(), scalar_from_json(t.at(2))});
    auto A = std::make_shared<PresentedDGA>(std::move(gens), tau, j.value("cutoff", 6));
    validate_algebra(*A);
    return A;
}

json element_to_json(const PresentedDGA& A, const NCElement& x) {
    json out = json::array();
    for (const auto& [w, c] : x) out.push_back({A.word_str(w), scalar_to_json(c)});
    return out;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hqft
