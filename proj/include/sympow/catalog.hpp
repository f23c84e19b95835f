#pragma once

#include <sympow/engine.hpp>
#include <sympow/geometry.hpp>
#include <sympow/polyring.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympow {

// Ordered, labelled list of pairwise non-proportional lines over a declared
// cyclotomic field, with provenance of how it was built.
struct Arrangement {
    const FieldSpec* field_spec;
    std::vector<ProjLine> lines;
    std::vector<std::string> labels;
    std::string construction;
    std::map<std::string, std::string> params;
    bool combinatorics_warning = false;

    const FieldSpec& spec() const { return *field_spec; }

    std::vector<HomogeneousForm> line_forms() const {
        std::vector<HomogeneousForm> fs;
        fs.reserve(lines.size());
        for (const auto& l : lines) fs.push_back(l.form(*field_spec));
        return fs;
    }

    HomogeneousForm product_of_lines() const { return expand_product(*field_spec, line_forms()); }

    SingularLocus locus() const { return singular_locus(lines); }
};

// cyclic substitution (x, y, z) -> (y, z, x), applied k times
inline HomogeneousForm rotate_variables(const HomogeneousForm& f, int k) {
    int r = ((k % 3) + 3) % 3;
    HomogeneousForm out(f.spec(), f.degree());
    for (const auto& [m, c] : f.terms()) {
        std::array<int, 3> e = m.e;
        for (int t = 0; t < r; ++t) e = {e[2], e[0], e[1]};
        out.set_coeff(Monomial{e}, c);
    }
    return out;
}

inline ProjLine rotate_line(const ProjLine& l, int k) {
    int r = ((k % 3) + 3) % 3;
    std::array<FieldElement, 3> c = l.coeffs();
    for (int t = 0; t < r; ++t) c = {c[2], c[0], c[1]};
    return ProjLine(c);
}

namespace detail {

inline void check_pairwise_distinct(const std::vector<ProjLine>& lines) {
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j])
                throw std::invalid_argument("arrangement has proportional lines at indices " + std::to_string(i) +
                                            ", " + std::to_string(j));
}

}  // namespace detail

// Yoshinaga's 18-line arrangement over Q(zeta_6), built as the linear
// factors of the deformation of the three sixfold pencils of the 6th Fermat
// arrangement: six factors of
//   (x^3 - y^3)(x + y - c z)(a x + a^5 y + c z)(a^5 x + a y + c z)
// plus their images under the cyclic substitutions of the variables. For
// nondegenerate c the singular locus has 48 triple and 9 double points; the
// warning flag is set when the parameter yields a different profile.
inline Arrangement yoshinaga(const Rational& c) {
    if (c.is_zero()) throw std::invalid_argument("deformation parameter c must be nonzero");
    const FieldSpec& spec = FieldSpec::of(6);
    const FieldElement one(spec, Rational(1));
    const FieldElement zero(spec);
    const FieldElement a = FieldElement::generator(spec);
    const FieldElement a5 = a.pow(5);
    const FieldElement cf(spec, c);

    std::vector<ProjLine> first = {
        ProjLine(one, -one, zero),        // x - y
        ProjLine(one, a, zero),           // x + a y
        ProjLine(one, one - a, zero),     // x + (1 - a) y
        ProjLine(one, one, -cf),          // x + y - c z
        ProjLine(a, a5, cf),              // a x + a^5 y + c z
        ProjLine(a5, a, cf),              // a^5 x + a y + c z
    };

    Arrangement arr;
    arr.field_spec = &spec;
    arr.construction = "yoshinaga";
    arr.params["c"] = c.str();
    for (int rot = 0; rot < 3; ++rot)
        for (const auto& l : first) arr.lines.push_back(rotate_line(l, rot));
    for (size_t i = 1; i <= arr.lines.size(); ++i) arr.labels.push_back("l" + std::to_string(i));

    detail::check_pairwise_distinct(arr.lines);
    auto prof = singular_locus(arr.lines).profile();
    arr.combinatorics_warning = !(prof.size() == 2 && prof.count(3) && prof.count(2) && prof.at(3) == 48 && prof.at(2) == 9);
    return arr;
}

// Fermat (CEVA) arrangement of 3n lines: the linear factors of
// (x^n - y^n)(y^n - z^n)(z^n - x^n) over Q(zeta_n).
inline Arrangement fermat(unsigned n) {
    if (n < 3) throw std::invalid_argument("fermat arrangement requires n >= 3");
    const FieldSpec& spec = FieldSpec::of(n);
    const FieldElement one(spec, Rational(1));
    const FieldElement zero(spec);

    Arrangement arr;
    arr.field_spec = &spec;
    arr.construction = "fermat";
    arr.params["n"] = std::to_string(n);
    for (unsigned k = 0; k < n; ++k) arr.lines.push_back(ProjLine(one, -power_of_generator(spec, k), zero));
    for (unsigned k = 0; k < n; ++k) arr.lines.push_back(ProjLine(zero, one, -power_of_generator(spec, k)));
    for (unsigned k = 0; k < n; ++k) arr.lines.push_back(ProjLine(-power_of_generator(spec, k), zero, one));
    for (size_t i = 1; i <= arr.lines.size(); ++i) arr.labels.push_back("l" + std::to_string(i));

    detail::check_pairwise_distinct(arr.lines);
    return arr;
}

// The Hesse-pencil member x^3 + y^3 + z^3 - (3379/225) xyz, the smooth cubic
// through the nine double points of yoshinaga(15).
inline HomogeneousForm hesse_cubic(const FieldSpec& spec) {
    HomogeneousForm f(spec, 3);
    f.set_coeff(Monomial{{3, 0, 0}}, FieldElement(spec, Rational(1)));
    f.set_coeff(Monomial{{0, 3, 0}}, FieldElement(spec, Rational(1)));
    f.set_coeff(Monomial{{0, 0, 3}}, FieldElement(spec, Rational(1)));
    f.set_coeff(Monomial{{1, 1, 1}}, FieldElement(spec, Rational(-3379, 225)));
    return f;
}

// ---------------------------------------------------------------------------
// arrangement files
//
// {"field": {"conductor": 6},
//  "lines": [{"label": "l1", "coeffs": ["1", "-1", "0"]}, ...],
//  "provenance": {"construction": "...", "params": {...}}}

inline nlohmann::json arrangement_to_json(const Arrangement& arr) {
    nlohmann::json j;
    j["field"] = {{"conductor", arr.spec().conductor()}};
    j["lines"] = nlohmann::json::array();
    for (size_t i = 0; i < arr.lines.size(); ++i) {
        j["lines"].push_back({{"label", i < arr.labels.size() ? arr.labels[i] : "l" + std::to_string(i + 1)},
                              {"coeffs",
                               {format_element(arr.lines[i][0]), format_element(arr.lines[i][1]),
                                format_element(arr.lines[i][2])}}});
    }
    j["provenance"] = {{"construction", arr.construction}, {"params", arr.params}};
    return j;
}

inline Arrangement arrangement_from_json(const nlohmann::json& j) {
    if (!j.contains("field") || !j["field"].contains("conductor"))
        throw std::invalid_argument("arrangement file missing field.conductor");
    unsigned n = j["field"]["conductor"].get<unsigned>();
    const FieldSpec& spec = FieldSpec::of(n);

    Arrangement arr;
    arr.field_spec = &spec;
    if (j.contains("provenance")) {
        arr.construction = j["provenance"].value("construction", "file");
        if (j["provenance"].contains("params"))
            for (auto& [k, v] : j["provenance"]["params"].items()) arr.params[k] = v.get<std::string>();
    } else {
        arr.construction = "file";
    }
    if (!j.contains("lines") || !j["lines"].is_array() || j["lines"].empty())
        throw std::invalid_argument("arrangement file has no lines");
    for (const auto& jl : j["lines"]) {
        const auto& co = jl.at("coeffs");
        if (!co.is_array() || co.size() != 3) throw std::invalid_argument("line coeffs must be a 3-element array");
        arr.lines.push_back(ProjLine(parse_element(co[0].get<std::string>(), spec),
                                     parse_element(co[1].get<std::string>(), spec),
                                     parse_element(co[2].get<std::string>(), spec)));
        arr.labels.push_back(jl.value("label", "l" + std::to_string(arr.lines.size())));
    }
    detail::check_pairwise_distinct(arr.lines);
    return arr;
}

inline void save_arrangement(const Arrangement& arr, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << arrangement_to_json(arr).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline Arrangement load_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    nlohmann::json j = nlohmann::json::parse(in);  // throws with byte position on malformed input
    return arrangement_from_json(j);
}

}  // namespace sympow
