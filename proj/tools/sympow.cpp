// sympow: exact construction of complex line arrangements, their singular
// loci, and certified graded containment checks between symbolic and
// ordinary powers of the associated point ideals.
//
// Exit codes: 0 = expected results confirmed, 2 = a mathematical check
// returned an unexpected verdict, 1 = operational error.

#include <sympow/catalog.hpp>
#include <sympow/engine.hpp>
#include <sympow/reference_data.hpp>
#include <sympow/serialize.hpp>
#include <sympow/verify.hpp>
#include <sympow/version.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace sympow;

struct SourceOptions {
    std::string builtin;  // "yoshinaga" | "fermat" | "" (use file)
    std::string file;
    std::string c_text = "15";
    unsigned n = 3;
};

void add_source_options(CLI::App* cmd, SourceOptions& src, bool positional) {
    if (positional)
        cmd->add_option("name", src.builtin, "builtin arrangement: yoshinaga | fermat")
            ->check(CLI::IsMember({"yoshinaga", "fermat"}));
    cmd->add_option("--file", src.file, "arrangement JSON file");
    cmd->add_option("--c", src.c_text, "deformation parameter for yoshinaga (nonzero rational)");
    cmd->add_option("--n", src.n, "parameter for fermat (>= 3)");
}

Arrangement resolve_arrangement(const SourceOptions& src) {
    if (!src.file.empty()) return load_arrangement(src.file);
    if (src.builtin == "yoshinaga") return yoshinaga(Rational::parse(src.c_text));
    if (src.builtin == "fermat") return fermat(src.n);
    if (src.builtin.empty()) throw std::invalid_argument("no arrangement given: pass a builtin name or --file");
    throw std::invalid_argument("unknown arrangement '" + src.builtin + "'");
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

// scheme selector: all-singular | triple-only | triple-plus-doubles:<1-based indices>
FatPointScheme select_scheme(const std::string& selector, const FieldSpec& spec, const SingularLocus& locus) {
    std::vector<ProjPoint> pts;
    if (selector == "all-singular") {
        for (const auto& sp : locus.points()) pts.push_back(sp.point);
        return FatPointScheme::radical(spec, pts, selector);
    }
    if (selector == "triple-only") {
        for (const auto& sp : locus.points())
            if (sp.multiplicity == 3) pts.push_back(sp.point);
        return FatPointScheme::radical(spec, pts, selector);
    }
    const std::string prefix = "triple-plus-doubles:";
    if (selector.rfind(prefix, 0) == 0) {
        std::vector<ProjPoint> doubles;
        for (const auto& sp : locus.points()) {
            if (sp.multiplicity == 3) pts.push_back(sp.point);
            if (sp.multiplicity == 2) doubles.push_back(sp.point);
        }
        std::string rest = selector.substr(prefix.size());
        size_t pos = 0;
        while (pos < rest.size()) {
            size_t comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            size_t idx = 0;
            try {
                idx = std::stoul(tok);
            } catch (...) {
                throw std::invalid_argument("malformed double-point index '" + tok + "'");
            }
            if (idx < 1 || idx > doubles.size())
                throw std::invalid_argument("double-point index " + tok + " out of range 1.." +
                                            std::to_string(doubles.size()));
            pts.push_back(doubles[idx - 1]);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return FatPointScheme(spec, [&] {
            std::vector<FatPoint> fps;
            for (const auto& p : pts) fps.push_back(FatPoint{p, 1});
            return fps;
        }(), selector);
    }
    throw std::invalid_argument("unknown scheme selector '" + selector + "'");
}

// witness selector: lines | lines-times-cubic | file:<path>
HomogeneousForm select_witness(const std::string& selector, const Arrangement& arr) {
    if (selector == "lines") return arr.product_of_lines();
    if (selector == "lines-times-cubic") return arr.product_of_lines() * hesse_cubic(arr.spec());
    const std::string prefix = "file:";
    if (selector.rfind(prefix, 0) == 0) {
        std::string path = selector.substr(prefix.size());
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open witness file '" + path + "'");
        return form_from_json(nlohmann::json::parse(in), arr.spec());
    }
    throw std::invalid_argument("unknown witness selector '" + selector + "'");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sympow;

    CLI::App app{"exact symbolic-power containment checks for line arrangements"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    unsigned field_conductor = 6;
    int threads = 1;
    std::string output;
    app.add_option("--field-conductor", field_conductor, "expected field conductor for loaded files")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for the elimination kernels")->capture_default_str();
    app.add_option("--output,-o", output, "output path for the JSON result");

    // ---- build -------------------------------------------------------------
    auto* cmd_build = app.add_subcommand("build", "construct an arrangement and write it to a JSON file");
    SourceOptions build_src;
    add_source_options(cmd_build, build_src, true);

    // ---- singular ----------------------------------------------------------
    auto* cmd_singular = app.add_subcommand("singular", "compute the singular locus and multiplicity profile");
    SourceOptions sing_src;
    add_source_options(cmd_singular, sing_src, true);
    bool with_incidence = false;
    std::string csv_path;
    cmd_singular->add_flag("--incidence", with_incidence, "emit the triple-point incidence table and cross-check it");
    cmd_singular->add_option("--csv", csv_path, "write the incidence table as CSV");

    // ---- check -------------------------------------------------------------
    auto* cmd_check = app.add_subcommand("check", "run one containment check and report the verdict");
    SourceOptions check_src;
    add_source_options(cmd_check, check_src, true);
    std::string scheme_sel = "all-singular";
    std::string witness_sel = "lines-times-cubic";
    std::string expect = "non-containment";
    int m_power = 3, r_power = 2;
    cmd_check->add_option("--scheme", scheme_sel, "all-singular | triple-only | triple-plus-doubles:<indices>")
        ->capture_default_str();
    cmd_check->add_option("--witness", witness_sel, "lines | lines-times-cubic | file:<path>")->capture_default_str();
    cmd_check->add_option("--m", m_power, "symbolic power")->capture_default_str();
    cmd_check->add_option("--r", r_power, "ordinary power")->capture_default_str();
    cmd_check->add_option("--expect", expect, "expected verdict: non-containment | not-established")
        ->check(CLI::IsMember({"non-containment", "not-established"}))
        ->capture_default_str();

    // ---- witness-search ----------------------------------------------------
    auto* cmd_search = app.add_subcommand("witness-search", "basis of a complement of (I^r)_d inside I^(m)_d");
    SourceOptions search_src;
    add_source_options(cmd_search, search_src, true);
    std::string search_scheme = "all-singular";
    int search_m = 3, search_r = 2, search_d = 21;
    cmd_search->add_option("--scheme", search_scheme, "scheme selector")->capture_default_str();
    cmd_search->add_option("--m", search_m, "symbolic power")->capture_default_str();
    cmd_search->add_option("--r", search_r, "ordinary power")->capture_default_str();
    cmd_search->add_option("--d", search_d, "degree")->capture_default_str();

    // ---- verify-paper --------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify-paper", "run the full published-result verification pipeline");
    std::string verify_c = "15";
    bool intermediate = false, exhaustive = false;
    cmd_verify->add_option("--c", verify_c, "deformation parameter")->capture_default_str();
    cmd_verify->add_flag("--intermediate", intermediate, "also check schemes between the triples and the full locus");
    cmd_verify->add_flag("--exhaustive-subsets", exhaustive, "check all 2^9 double-point subsets (implies --intermediate)");

    for (auto* sc : {cmd_build, cmd_singular, cmd_check, cmd_search, cmd_verify}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const RrefOptions ropts{threads, false};

        if (cmd_build->parsed()) {
            Arrangement arr = resolve_arrangement(build_src);
            if (arr.combinatorics_warning)
                std::cerr << "warning: parameter gives singular profile " << profile_string(arr.locus().profile())
                          << " instead of t3=48 t2=9\n";
            std::string path = output.empty() ? "arrangement.json" : output;
            save_arrangement(arr, path);
            std::cout << arr.lines.size() << " lines over Q(zeta_" << arr.spec().conductor() << ")\n";
            std::cout << "wrote " << path << "\n";
            return 0;
        }

        if (cmd_singular->parsed()) {
            Arrangement arr = resolve_arrangement(sing_src);
            if (app.count("--field-conductor") && arr.spec().conductor() != field_conductor)
                throw std::invalid_argument("field conductor mismatch: file has " +
                                            std::to_string(arr.spec().conductor()));
            SingularLocus locus = arr.locus();
            std::cout << profile_string(locus.profile()) << "\n";
            if (!output.empty()) write_json(output, locus_to_json(locus));
            if (with_incidence || !csv_path.empty()) {
                IncidenceTable table = incidence_table(locus, 3, arr.lines.size());
                if (!csv_path.empty()) {
                    std::ofstream csv(csv_path);
                    if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
                    table.write_csv(csv);
                }
                if (arr.construction == "yoshinaga" && arr.params.count("c") && arr.params.at("c") == "15") {
                    auto cc = reference::cross_check_incidences(arr, locus);
                    std::cout << cc.triples_matched << "/" << cc.triples_total << " triples match reference table\n";
                    if (!cc.triples_ok) return 2;
                } else if (with_incidence) {
                    std::cout << table.rows.size() << " triple points\n";
                }
            }
            return 0;
        }

        if (cmd_check->parsed()) {
            Arrangement arr = resolve_arrangement(check_src);
            if (m_power < 1 || r_power < 1) throw std::invalid_argument("m and r must be >= 1");
            SingularLocus locus = arr.locus();
            FatPointScheme scheme = select_scheme(scheme_sel, arr.spec(), locus);
            HomogeneousForm witness = select_witness(witness_sel, arr);
            WitnessReport rep = check_noncontainment(scheme, m_power, r_power, witness, ropts);
            if (!output.empty()) write_json(output, witness_report_to_json(rep, &witness));
            std::cout << "scheme " << scheme.label() << " (" << scheme.size() << " points), witness degree "
                      << witness.degree() << "\n";
            std::cout << "symbolic membership: " << (rep.symbolic_membership_holds ? "true" : "false")
                      << ", ordinary membership: " << (rep.ordinary_membership ? "true" : "false") << "\n";
            std::cout << "verdict: " << rep.verdict << "\n";
            return rep.verdict == expect ? 0 : 2;
        }

        if (cmd_search->parsed()) {
            Arrangement arr = resolve_arrangement(search_src);
            if (search_m < 1 || search_r < 1 || search_d < 0)
                throw std::invalid_argument("require m, r >= 1 and d >= 0");
            SingularLocus locus = arr.locus();
            FatPointScheme scheme = select_scheme(search_scheme, arr.spec(), locus);
            auto forms = witness_search(scheme, search_m, search_r, search_d, ropts);
            std::cout << forms.size() << " independent element(s) of I^(" << search_m << ")_" << search_d
                      << " outside (I^" << search_r << ")_" << search_d << "\n";
            if (!output.empty()) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& f : forms) j.push_back(form_to_json(f));
                write_json(output, j);
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            VerifyOptions vopts;
            vopts.c = Rational::parse(verify_c);
            vopts.threads = threads;
            vopts.intermediate = intermediate || exhaustive;
            vopts.exhaustive_subsets = exhaustive;
            VerificationReport rep = verify_paper(vopts);
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "[PASS] " : c.informative ? "[INFO] " : "[FAIL] ") << c.name << ": " << c.actual
                          << " (expected " << c.expected << ")\n";
            std::cout << "status: " << (rep.all_pass() ? "pass" : "fail") << "\n";
            if (!output.empty()) write_json(output, rep.to_json());
            return rep.all_pass() ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
