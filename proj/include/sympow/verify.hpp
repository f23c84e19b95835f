#pragma once

#include <sympow/catalog.hpp>
#include <sympow/engine.hpp>
#include <sympow/reference_data.hpp>
#include <sympow/serialize.hpp>
#include <sympow/version.hpp>

#include <chrono>
#include <map>
#include <string>
#include <vector>

namespace sympow {

// "t3=48 t2=9": descending point count, ties broken by ascending multiplicity
inline std::string profile_string(const std::map<int, size_t>& prof) {
    std::vector<std::pair<int, size_t>> v(prof.begin(), prof.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::string out;
    for (const auto& [mult, count] : v) {
        if (!out.empty()) out += " ";
        out += "t" + std::to_string(mult) + "=" + std::to_string(count);
    }
    return out.empty() ? "none" : out;
}

struct CheckEntry {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
    bool informative = false;  // reported but excluded from the overall status
};

struct VerifyOptions {
    Rational c = Rational(15);
    int threads = 1;
    bool size_heuristic = false;
    bool intermediate = false;        // also check schemes between the triples and the full locus
    bool exhaustive_subsets = false;  // all 2^9 double-point subsets instead of singletons + full
    // cross-check tables, overridable for negative controls
    const std::vector<ProjLine>* reference_lines = nullptr;
    const std::vector<std::array<int, 3>>* reference_triples = nullptr;
};

struct VerificationReport {
    std::string version;
    nlohmann::json arrangement;
    std::vector<CheckEntry> checks;
    std::vector<WitnessReport> witness_reports;
    std::vector<nlohmann::json> witness_jsons;
    std::map<std::string, double> timings_ms;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.informative && !c.pass) return false;
        return true;
    }

    const CheckEntry* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["version"] = version;
        j["arrangement"] = arrangement;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name},
                                   {"expected", c.expected},
                                   {"actual", c.actual},
                                   {"pass", c.pass},
                                   {"informative", c.informative}});
        j["witnesses"] = witness_jsons;
        j["status"] = all_pass() ? "pass" : "fail";
        j["timings_ms"] = timings_ms;
        return j;
    }
};

namespace detail {

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}

    template <typename Fn>
    auto run(const std::string& name, Fn&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            sink_[name] = elapsed_ms(t0);
        } else {
            auto out = fn();
            sink_[name] = elapsed_ms(t0);
            return out;
        }
    }

private:
    static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }

    std::map<std::string, double>& sink_;
};

}  // namespace detail

// End-to-end verification: build the arrangement, confirm its combinatorics
// against the published tables, confirm the cubic, run the containment
// checks (full locus, triple points only, dual Hesse regression) and the
// positive-direction sanity check. All expectations are pinned here.
inline VerificationReport verify_paper(const VerifyOptions& opts = {}) {
    VerificationReport rep;
    rep.version = kVersion;
    detail::StageTimer timer(rep.timings_ms);
    const RrefOptions ropts{opts.threads, opts.size_heuristic};
    const bool canonical_c = opts.c == Rational(15);

    // --- arrangement and combinatorics -------------------------------------
    Arrangement arr = timer.run("build", [&] { return yoshinaga(opts.c); });
    SingularLocus locus = timer.run("singular_locus", [&] { return arr.locus(); });
    const std::string prof = profile_string(locus.profile());
    rep.arrangement = {{"construction", arr.construction},
                       {"params", arr.params},
                       {"conductor", arr.spec().conductor()},
                       {"line_count", arr.lines.size()},
                       {"profile", prof}};
    rep.checks.push_back({"singular-profile", "t3=48 t2=9", prof, prof == "t3=48 t2=9", false});

    if (canonical_c) {
        auto cc = timer.run("reference_cross_check", [&] {
            return reference::cross_check_incidences(
                arr, locus, opts.reference_lines ? *opts.reference_lines : reference::parsed_yoshinaga15_lines(),
                opts.reference_triples ? *opts.reference_triples : reference::yoshinaga15_triples());
        });
        rep.checks.push_back({"lines-match-reference", "18/18",
                              std::to_string(cc.lines_matched) + "/" + std::to_string(cc.lines_total), cc.lines_ok,
                              false});
        rep.checks.push_back({"incidence-match-reference", "48/48",
                              std::to_string(cc.triples_matched) + "/" + std::to_string(cc.triples_total),
                              cc.triples_ok, false});
        // the published table's column order does not follow its equation list
        rep.checks.push_back({"incidence-relabeling", "line relabeling recorded",
                              cc.relabeling_is_identity ? "identity" : "permuted", true, true});
    }

    // --- the cubic through the double points --------------------------------
    const FieldSpec& spec = arr.spec();
    HomogeneousForm cubic = hesse_cubic(spec);
    timer.run("cubic_checks", [&] {
        size_t doubles_on = 0, doubles_total = 0, triples_on = 0, triples_total = 0;
        for (const auto& sp : locus.points()) {
            if (sp.multiplicity == 2) {
                ++doubles_total;
                if (evaluate(cubic, sp.point.coords()).is_zero()) ++doubles_on;
            } else if (sp.multiplicity == 3) {
                ++triples_total;
                if (evaluate(cubic, sp.point.coords()).is_zero()) ++triples_on;
            }
        }
        rep.checks.push_back({"cubic-vanishes-at-doubles", "9/9",
                              std::to_string(doubles_on) + "/" + std::to_string(doubles_total),
                              doubles_on == 9 && doubles_total == 9, !canonical_c});
        // reported, not asserted: the cubic happens to avoid every triple point
        rep.checks.push_back({"cubic-at-triple-points", "0/48",
                              std::to_string(triples_on) + "/" + std::to_string(triples_total),
                              triples_on == 0 && triples_total == 48, true});
    });

    // --- containment checks --------------------------------------------------
    std::vector<ProjPoint> all_points, triple_points, double_points;
    for (const auto& sp : locus.points()) {
        all_points.push_back(sp.point);
        if (sp.multiplicity == 3) triple_points.push_back(sp.point);
        if (sp.multiplicity == 2) double_points.push_back(sp.point);
    }
    FatPointScheme scheme_all = FatPointScheme::radical(spec, all_points, "all-singular");
    FatPointScheme scheme_tri = FatPointScheme::radical(spec, triple_points, "triple-only");

    HomogeneousForm line_product = timer.run("line_product", [&] { return arr.product_of_lines(); });
    HomogeneousForm witness_full = line_product * cubic;

    auto push_witness = [&](const WitnessReport& w, const HomogeneousForm& form, const std::string& check_name,
                            bool informative) {
        rep.witness_reports.push_back(w);
        rep.witness_jsons.push_back(witness_report_to_json(w, &form));
        rep.checks.push_back({check_name, "non-containment", w.verdict, w.verdict == "non-containment", informative});
    };

    // full locus at degree 21; the ordinary slice is reused by the sanity check
    GradedPiece ord_full_21 = timer.run("ordinary_piece_full_d21",
                                        [&] { return ordinary_power_piece(scheme_all, 2, 21, ropts); });
    WitnessReport rep_full = timer.run("check_all_singular", [&] {
        return check_noncontainment_with(scheme_all, 3, 2, witness_full, ord_full_21, ropts);
    });
    push_witness(rep_full, witness_full, "noncontainment-all-singular", !canonical_c);

    WitnessReport rep_tri = timer.run("check_triple_only",
                                      [&] { return check_noncontainment(scheme_tri, 3, 2, line_product, ropts); });
    push_witness(rep_tri, line_product, "noncontainment-triple-only", !canonical_c);

    timer.run("check_dual_hesse", [&] {
        Arrangement dh = fermat(3);
        SingularLocus dh_locus = dh.locus();
        std::vector<ProjPoint> dh_points;
        for (const auto& sp : dh_locus.points()) dh_points.push_back(sp.point);
        FatPointScheme dh_scheme = FatPointScheme::radical(dh.spec(), dh_points, "dual-hesse-triples");
        HomogeneousForm w9 = dh.product_of_lines();
        WitnessReport r = check_noncontainment(dh_scheme, 3, 2, w9, ropts);
        push_witness(r, w9, "noncontainment-dual-hesse", false);
    });

    // positive direction: multiplicity 4 forms of degree 21 sit inside the square
    timer.run("els_sanity", [&] {
        GradedPiece fat4 = fat_graded_piece(scheme_all.scaled(4), 21, ropts);
        bool contained = contains(ord_full_21.space, fat4.space);
        rep.checks.push_back({"els-sanity-m4-r2-d21", "true", contained ? "true" : "false", contained, false});
    });

    // --- intermediate schemes (between the triples and the full locus) ------
    if (opts.intermediate) {
        timer.run("intermediate_schemes", [&] {
            std::vector<std::vector<size_t>> subsets;
            if (opts.exhaustive_subsets) {
                for (size_t mask = 0; mask < (size_t{1} << double_points.size()); ++mask) {
                    std::vector<size_t> sel;
                    for (size_t b = 0; b < double_points.size(); ++b)
                        if (mask & (size_t{1} << b)) sel.push_back(b);
                    subsets.push_back(std::move(sel));
                }
            } else {
                for (size_t b = 0; b < double_points.size(); ++b) subsets.push_back({b});
                std::vector<size_t> full(double_points.size());
                for (size_t b = 0; b < double_points.size(); ++b) full[b] = b;
                subsets.push_back(std::move(full));
            }
            for (const auto& sel : subsets) {
                std::vector<ProjPoint> pts = triple_points;
                std::string desc = "triples";
                for (size_t b : sel) {
                    pts.push_back(double_points[b]);
                    desc += "+d" + std::to_string(b + 1);
                }
                FatPointScheme scheme = FatPointScheme::radical(spec, pts, desc);
                WitnessReport w = check_noncontainment(scheme, 3, 2, witness_full, ropts);
                push_witness(w, witness_full, "noncontainment-" + desc, !canonical_c);
            }
        });
    }

    return rep;
}

}  // namespace sympow
