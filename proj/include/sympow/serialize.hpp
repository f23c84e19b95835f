#pragma once

#include <sympow/engine.hpp>
#include <sympow/geometry.hpp>
#include <sympow/polyring.hpp>

#include <json.hpp>

#include <string>

namespace sympow {

// forms serialize as lists of {"monomial": [i,j,k], "coeff": <element text>}
inline nlohmann::json form_to_json(const HomogeneousForm& f) {
    nlohmann::json j;
    j["degree"] = f.degree();
    j["terms"] = nlohmann::json::array();
    for (const auto& [m, c] : f.terms())
        j["terms"].push_back({{"monomial", {m.e[0], m.e[1], m.e[2]}}, {"coeff", format_element(c)}});
    return j;
}

inline HomogeneousForm form_from_json(const nlohmann::json& j, const FieldSpec& spec) {
    if (!j.contains("degree")) throw std::invalid_argument("form JSON missing degree");
    HomogeneousForm f(spec, j["degree"].get<int>());
    for (const auto& jt : j.value("terms", nlohmann::json::array())) {
        const auto& e = jt.at("monomial");
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("monomial must be a 3-element array");
        Monomial m{{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}};
        f.add_to_coeff(m, parse_element(jt.at("coeff").get<std::string>(), spec));
    }
    return f;
}

inline nlohmann::json point_to_json(const ProjPoint& p) {
    return {format_element(p[0]), format_element(p[1]), format_element(p[2])};
}

inline nlohmann::json locus_to_json(const SingularLocus& locus) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& sp : locus.points()) {
        nlohmann::json lines = nlohmann::json::array();
        for (size_t li : sp.lines) lines.push_back(li + 1);  // 1-based, matching line labels
        j.push_back({{"point", point_to_json(sp.point)}, {"mult", sp.multiplicity}, {"lines", lines}});
    }
    return j;
}

inline nlohmann::json membership_to_json(const MembershipResult& m) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : m.certificates) {
        nlohmann::json jc = {{"point_index", c.point_index}, {"required_order", c.required_order}, {"ok", c.ok}};
        if (!c.ok) {
            jc["first_failing_partial"] = {c.first_failing_partial[0], c.first_failing_partial[1],
                                           c.first_failing_partial[2]};
            jc["value"] = c.failing_value;
        }
        certs.push_back(std::move(jc));
    }
    return {{"holds", m.holds}, {"certificates", std::move(certs)}};
}

inline nlohmann::json witness_report_to_json(const WitnessReport& w, const HomogeneousForm* witness = nullptr) {
    nlohmann::json j;
    j["scheme"] = w.scheme_label;
    j["points"] = w.point_count;
    j["m"] = w.m;
    j["r"] = w.r;
    j["degree"] = w.degree;
    if (witness) j["witness"] = form_to_json(*witness);
    j["symbolic_membership"] = membership_to_json(w.symbolic);
    j["ordinary_membership"] = w.ordinary_membership;
    j["dim_symbolic_piece"] = w.dim_symbolic_piece;
    j["dim_ordinary_piece"] = w.dim_ordinary_piece;
    j["verdict"] = w.verdict;
    return j;
}

}  // namespace sympow
