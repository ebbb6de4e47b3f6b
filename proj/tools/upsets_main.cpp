// Command-line front end: loads family files, runs analyses, emits CSV/JSON
// reports, and drives the verification suite. One command per process.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "upsets/errors.hpp"
#include "upsets/family_io.hpp"
#include "upsets/generators.hpp"
#include "upsets/lp.hpp"
#include "upsets/measure.hpp"
#include "upsets/moments.hpp"
#include "upsets/rational.hpp"
#include "upsets/structure.hpp"
#include "upsets/verify.hpp"

namespace {

using namespace upsets;

int default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

MintermFamily load_family(const std::string& path) {
    LoadedFamily lf = read_family_file(path);
    if (!lf.was_minimal)
        std::cerr << "warning: " << path
                  << ": input was not a minimal antichain; redundant minterms dropped\n";
    return std::move(lf.family);
}

std::string file_stem(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

Rational parse_unit_rational(const std::string& text, const std::string& what) {
    const Rational r = parse_rational(text);
    if (r < 0 || r > 1) throw MalformedInputError(what + " must lie in [0,1], got " + text);
    return r;
}

// "START:END:STEP" with exact rational endpoints; inclusive of END.
std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw MalformedInputError("grid must be START:END:STEP, got '" + text + "'");
    const Rational start = parse_unit_rational(parts[0], "grid start");
    const Rational end = parse_unit_rational(parts[1], "grid end");
    const Rational step = parse_rational(parts[2]);
    if (step <= 0) throw MalformedInputError("grid step must be positive");
    if (start > end) throw MalformedInputError("grid start exceeds end");
    std::vector<Rational> pts;
    for (Rational p = start; p <= end; p += step) pts.push_back(p);
    return pts;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw MalformedInputError("cannot open for writing: " + out_path);
    os << text;
}

nlohmann::ordered_json set_to_json(ElementSet s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int i : s.indices()) arr.push_back(i);
    return arr;
}

nlohmann::ordered_json minterms_to_json(const MintermFamily& fam) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ElementSet& mt : fam.minterms()) arr.push_back(set_to_json(mt));
    return arr;
}

// --- subcommand bodies ---------------------------------------------------

int cmd_analyze(const std::string& family_path, const std::string& p_text,
                const std::string& grid_text, const std::string& out_path, int limit) {
    const MintermFamily fam = load_family(family_path);
    const std::vector<Rational> pts =
        grid_text.empty() ? std::vector<Rational>{parse_unit_rational(p_text, "p")}
                          : parse_grid(grid_text);
    const MeasurePolynomial poly = layer_counts(fam, limit);
    const PivotalCounts pc = pivotal_counts(fam, limit);
    const int k = fam.k();

    std::ostringstream csv;
    csv << "p,mu,dmu_dp,e_piv,ratio_mu_over_pk\n";
    for (const Rational& p : pts) {
        const Rational mu = poly.value_at(p);
        Rational rates = 0;
        for (int i = 0; i < fam.n(); ++i) rates += pc.element_rate(i, p);
        const Rational e_piv = p * rates;
        csv << format_double(to_double(p)) << ',' << format_double(to_double(mu)) << ','
            << format_double(to_double(poly.derivative_at(p))) << ','
            << format_double(to_double(e_piv)) << ',';
        if (p == 0) csv << "nan";
        else csv << format_double(to_double(mu / rational_pow(p, k)));
        csv << '\n';
    }
    write_text(out_path, csv.str());
    return 0;
}

int cmd_moments(const std::string& family_path, const std::string& p_text,
                const std::string& grid_text, const std::string& out_path, int limit) {
    const MintermFamily fam = load_family(family_path);
    const std::vector<Rational> pts =
        grid_text.empty() ? std::vector<Rational>{parse_unit_rational(p_text, "p")}
                          : parse_grid(grid_text);
    const bool exact_mu = fam.n() <= limit;
    if (!exact_mu)
        std::cerr << "note: ground set exceeds --max-n; mu_exact column reported as nan\n";

    std::ostringstream csv;
    csv << "p,first,second,diagonal,overlapping,disjoint,pz_bound,mu_exact\n";
    for (const Rational& p : pts) {
        const MomentReport m = second_moment(fam, p);
        csv << format_double(to_double(p)) << ',' << format_double(to_double(m.first)) << ','
            << format_double(to_double(m.second)) << ',' << format_double(to_double(m.diagonal))
            << ',' << format_double(to_double(m.overlapping)) << ','
            << format_double(to_double(m.disjoint)) << ',';
        if (m.first == 0) csv << "nan";
        else csv << format_double(to_double(paley_zygmund_bound(fam, p)));
        csv << ',';
        if (exact_mu) csv << format_rational(measure(fam, p, limit));
        else csv << "nan";
        csv << '\n';
    }
    write_text(out_path, csv.str());
    return 0;
}

int cmd_threshold(const std::string& family_path, const std::string& x_text, int limit) {
    const MintermFamily fam = load_family(family_path);
    const double x = to_double(parse_unit_rational(x_text, "x"));
    std::cout << format_double(threshold_point(fam, x, limit)) << '\n';
    return 0;
}

int cmd_delta(const std::string& family_path, const std::string& eps_text, int limit) {
    const MintermFamily fam = load_family(family_path);
    const double eps = to_double(parse_unit_rational(eps_text, "eps"));
    std::cout << format_double(threshold_width(fam, eps, limit)) << '\n';
    return 0;
}

int cmd_lp(const std::string& family_path, const std::string& q_text, bool dual_only) {
    const MintermFamily fam = load_family(family_path);
    const Rational q = parse_unit_rational(q_text, "q");
    nlohmann::ordered_json j;
    j["q"] = format_rational(q);
    if (dual_only) {
        const DualWeighting dual = dual_value(fam, q);
        j["value"] = format_rational(dual.value);
        j["nu"] = nlohmann::ordered_json::array();
        for (const auto& [set, w] : dual.weights)
            j["nu"].push_back({{"set", set_to_json(set)}, {"w", format_rational(w)}});
    } else {
        const FractionalExpectation fe = fractional_expectation(fam, q);
        j["value"] = format_rational(fe.value);
        j["beta"] = nlohmann::ordered_json::array();
        for (const auto& [set, w] : fe.primal.weights)
            j["beta"].push_back({{"set", set_to_json(set)}, {"w", format_rational(w)}});
        j["nu"] = nlohmann::ordered_json::array();
        for (const auto& [set, w] : fe.dual.weights)
            j["nu"].push_back({{"set", set_to_json(set)}, {"w", format_rational(w)}});
        j["duality_gap"] = format_rational(fe.primal.objective - fe.dual.value);
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_decompose(const std::string& family_path, const std::string& p_text, int limit) {
    const MintermFamily fam = load_family(family_path);
    const Rational p = parse_unit_rational(p_text, "p");
    const Decomposition d = decompose(fam, p, limit);

    nlohmann::ordered_json j;
    j["p"] = format_rational(p);
    j["case"] = d.kind == Decomposition::Kind::tame_subfamily ? "tame-subfamily"
                                                              : "tame-approximation";
    j["family_measure"] = format_rational(d.family_measure);
    j["stages"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < d.chain.size(); ++i) {
        nlohmann::ordered_json stage;
        stage["stage"] = i + 1;
        stage["minterms"] = minterms_to_json(d.chain[i]);
        stage["measure"] = format_rational(measure(d.chain[i], p, limit));
        j["stages"].push_back(std::move(stage));
    }
    bool certified;
    if (d.kind == Decomposition::Kind::tame_subfamily) {
        j["subfamily_measure"] = format_rational(d.subfamily_measure);
        certified = 2 * d.subfamily_measure >= d.family_measure &&
                    is_tame(d.chain.back(), p / 2).tame;
    } else {
        j["m"] = d.m;
        j["approximation"] = {{"minterms", minterms_to_json(d.approximation)},
                              {"measure", format_rational(d.approximation_measure)}};
        j["stage_gap"] = format_rational(d.stage_gap);
        const ApproximationCheck ac =
            verify_tame_approximation(fam, d.approximation, d.m, p / 2, d.witness_family);
        certified =
            d.approximation_measure >= d.family_measure / rational_pow(Rational(2), d.m + 1) &&
            ac.pass;
    }
    j["certified"] = certified;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_sample(const std::string& family_path, const std::string& p_text, std::uint64_t samples,
               std::uint64_t seed, int threads) {
    const MintermFamily fam = load_family(family_path);
    const double p = to_double(parse_unit_rational(p_text, "p"));
    const SampleEstimate est = estimate_measure(fam, p, samples, seed, threads);
    nlohmann::ordered_json j;
    j["p"] = p;
    j["samples"] = est.samples;
    j["seed"] = seed;
    j["threads"] = threads;
    j["successes"] = est.successes;
    j["estimate"] = est.estimate;
    j["ci_low"] = est.ci_low;
    j["ci_high"] = est.ci_high;
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct GenerateArgs {
    std::string kind;
    int n = 0, k = 0, count = 0, host = 0, path_edges = 0;
    std::uint64_t seed = 0;
    std::string pattern = "triangle";
    std::string edges;
    std::string out_path;
};

std::vector<std::pair<int, int>> parse_edges(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        const std::size_t dash = cur.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 == cur.size())
            throw MalformedInputError("edge must be A-B, got '" + cur + "'");
        try {
            out.emplace_back(std::stoi(cur.substr(0, dash)), std::stoi(cur.substr(dash + 1)));
        } catch (const std::exception&) {
            throw MalformedInputError("edge must be A-B with integer endpoints, got '" + cur + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    flush();
    if (out.empty()) throw MalformedInputError("--edges lists no edges");
    return out;
}

int cmd_generate(const GenerateArgs& a) {
    MintermFamily fam;
    if (a.kind == "single") {
        fam = gen_single(a.n, a.k);
    } else if (a.kind == "star") {
        fam = gen_star(a.n);
    } else if (a.kind == "all_k") {
        fam = gen_all_k_subsets(a.n, a.k);
    } else if (a.kind == "random") {
        fam = gen_random(a.n, a.k, a.count, a.seed);
    } else if (a.kind == "graph") {
        GraphSpec spec;
        spec.host = a.host;
        if (a.pattern == "triangle") spec.pattern = GraphSpec::Pattern::triangle;
        else if (a.pattern == "k4") spec.pattern = GraphSpec::Pattern::k4;
        else if (a.pattern == "k4_tail") spec.pattern = GraphSpec::Pattern::k4_tail;
        else if (a.pattern == "path") spec.pattern = GraphSpec::Pattern::path;
        else if (a.pattern == "custom") spec.pattern = GraphSpec::Pattern::custom;
        else throw MalformedInputError("unknown --pattern '" + a.pattern + "'");
        spec.path_edges = a.path_edges;
        if (spec.pattern == GraphSpec::Pattern::custom) spec.custom_edges = parse_edges(a.edges);
        fam = gen_graph(spec);
    } else {
        throw MalformedInputError("unknown --kind '" + a.kind + "'");
    }
    write_text(a.out_path, family_to_json(fam));
    return 0;
}

struct VerifyArgs {
    std::string family_path, out_path, recheck_path;
    bool suite_builtin = false;
    int threads = default_threads();
    int limit = default_enumeration_limit;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 20260815;
};

VerificationLedger recheck_ledger(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInputError("cannot open ledger: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(path + ": " + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != "verification-ledger/1" ||
        !j.contains("checks") || !j["checks"].is_array())
        throw MalformedInputError(path + ": not a verification-ledger/1 document");
    VerificationLedger led;
    for (const auto& rec : j["checks"]) {
        if (!rec.is_object() || !rec.contains("check") || !rec.contains("pass") ||
            !rec["pass"].is_boolean())
            throw MalformedInputError(path + ": malformed check record");
        CheckRecord r;
        r.check = rec["check"].get<std::string>();
        r.instance = rec.value("instance", "");
        r.params = rec.value("params", "");
        r.statement = rec.value("statement", "");
        r.lhs = rec.value("lhs", "");
        r.rhs = rec.value("rhs", "");
        r.margin = rec.value("margin", "");
        r.pass = rec["pass"].get<bool>();
        r.flag = rec.value("flag", "");
        led.add(std::move(r));
    }
    return led;
}

int cmd_verify(const VerifyArgs& a) {
    VerificationLedger led;
    if (a.suite_builtin) {
        SuiteOptions opts;
        opts.threads = a.threads;
        opts.mc_samples = a.mc_samples;
        opts.mc_seed = a.mc_seed;
        opts.limit = a.limit;
        led = run_builtin_suite(opts);
    } else if (!a.family_path.empty()) {
        SuiteOptions opts;
        opts.threads = a.threads;
        opts.mc_samples = a.mc_samples;
        opts.mc_seed = a.mc_seed;
        opts.limit = a.limit;
        run_family_checks(led, file_stem(a.family_path), load_family(a.family_path), opts);
    } else {
        led = recheck_ledger(a.recheck_path);
    }

    const std::string json = led.to_json();
    if (a.out_path.empty()) {
        std::cout << json;
    } else {
        write_text(a.out_path, json);
        std::cout << "checks: " << led.records.size() << ", failures: " << led.gating_failures()
                  << ", flagged: " << led.flagged_failures() << " -> "
                  << (led.all_pass() ? "PASS" : "FAIL") << '\n';
    }
    return led.all_pass() ? 0 : static_cast<int>(ExitCode::verification_failure);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact threshold analysis for monotone set families"};
    app.require_subcommand(1);

    int limit = default_enumeration_limit;
    int threads = default_threads();
    app.add_option("--max-n", limit,
                   "ground-set cap for exact enumeration (default 24, hard cap 30)");
    app.add_option("--threads", threads, "worker threads for sampling (default: hardware count)");
    app.fallthrough();

    std::string family_path, p_text, grid_text, out_path, x_text, eps_text, q_text;
    bool dual_only = false;

    CLI::App* analyze = app.add_subcommand("analyze", "measure/derivative/pivotal CSV report");
    analyze->add_option("--family", family_path, "family JSON file")->required();
    auto* an_p = analyze->add_option("--p", p_text, "single evaluation point (rational or decimal)");
    auto* an_grid = analyze->add_option("--grid", grid_text, "START:END:STEP inclusive grid");
    an_p->excludes(an_grid);
    analyze->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* moments = app.add_subcommand("moments", "first/second moment CSV report");
    moments->add_option("--family", family_path, "family JSON file")->required();
    auto* mo_p = moments->add_option("--p", p_text, "single evaluation point");
    auto* mo_grid = moments->add_option("--grid", grid_text, "START:END:STEP inclusive grid");
    mo_p->excludes(mo_grid);
    moments->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* threshold = app.add_subcommand("threshold", "smallest p with measure x");
    threshold->add_option("--family", family_path, "family JSON file")->required();
    threshold->add_option("--x", x_text, "target measure in (0,1)")->required();

    CLI::App* delta = app.add_subcommand("delta", "relative threshold width at eps");
    delta->add_option("--family", family_path, "family JSON file")->required();
    delta->add_option("--eps", eps_text, "eps in (0, 1/2)")->required();

    CLI::App* lp = app.add_subcommand("lp", "exact fractional-expectation program at q");
    lp->add_option("--family", family_path, "family JSON file")->required();
    lp->add_option("--q", q_text, "parameter q in [0,1]")->required();
    lp->add_flag("--dual-only", dual_only, "emit only the packing certificate");

    CLI::App* decompose_cmd = app.add_subcommand("decompose", "tameness splitting at p");
    decompose_cmd->add_option("--family", family_path, "family JSON file")->required();
    decompose_cmd->add_option("--p", p_text, "parameter p in (0,1)")->required();

    std::uint64_t samples = 1'000'000, seed = 20260815;
    CLI::App* sample = app.add_subcommand("sample", "Monte Carlo measure estimate");
    sample->add_option("--family", family_path, "family JSON file")->required();
    sample->add_option("--p", p_text, "parameter p in [0,1]")->required();
    sample->add_option("--samples", samples, "number of draws (>= 100; default 1e6)");
    sample->add_option("--seed", seed, "counter-based RNG seed");

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "write a family JSON file");
    generate->add_option("--kind", gen.kind, "single|star|all_k|graph|random")->required();
    generate->add_option("--n", gen.n, "ground-set size");
    generate->add_option("--k", gen.k, "minterm size");
    generate->add_option("--count", gen.count, "number of random minterms");
    generate->add_option("--seed", gen.seed, "random generator seed");
    generate->add_option("--host", gen.host, "host complete graph K_m");
    generate->add_option("--pattern", gen.pattern, "triangle|k4|k4_tail|path|custom");
    generate->add_option("--path-edges", gen.path_edges, "edge count for the path pattern");
    generate->add_option("--edges", gen.edges, "custom pattern edges, e.g. 0-1,1-2,2-0");
    generate->add_option("--out", gen.out_path, "output path (default: stdout)");

    VerifyArgs ver;
    CLI::App* verify = app.add_subcommand("verify", "run theorem checks, emit a ledger");
    auto* v_suite = verify->add_flag("--suite-builtin", ver.suite_builtin,
                                     "run the full builtin suite");
    verify->add_option("--suite", [&ver](const std::vector<std::string>& vals) {
        if (vals.size() != 1 || vals[0] != "builtin") return false;
        ver.suite_builtin = true;
        return true;
    }, "named suite; only 'builtin' exists");
    auto* v_family = verify->add_option("--family", ver.family_path,
                                        "check a single family file");
    auto* v_recheck = verify->add_option("--recheck", ver.recheck_path,
                                         "re-evaluate an existing ledger JSON");
    v_family->excludes(v_recheck);
    v_suite->excludes(v_family);
    v_suite->excludes(v_recheck);
    verify->add_option("--out", ver.out_path, "ledger output path (default: stdout)");
    verify->add_option("--mc-samples", ver.mc_samples, "sampling-check draws (default 1e6)");
    verify->add_option("--mc-seed", ver.mc_seed, "sampling-check seed");

    try {
        app.parse(argc, argv);

        if (analyze->parsed()) {
            if (p_text.empty() && grid_text.empty())
                throw MalformedInputError("analyze needs --p or --grid");
            return cmd_analyze(family_path, p_text, grid_text, out_path, limit);
        }
        if (moments->parsed()) {
            if (p_text.empty() && grid_text.empty())
                throw MalformedInputError("moments needs --p or --grid");
            return cmd_moments(family_path, p_text, grid_text, out_path, limit);
        }
        if (threshold->parsed()) return cmd_threshold(family_path, x_text, limit);
        if (delta->parsed()) return cmd_delta(family_path, eps_text, limit);
        if (lp->parsed()) return cmd_lp(family_path, q_text, dual_only);
        if (decompose_cmd->parsed()) return cmd_decompose(family_path, p_text, limit);
        if (sample->parsed()) return cmd_sample(family_path, p_text, samples, seed, threads);
        if (generate->parsed()) return cmd_generate(gen);
        if (verify->parsed()) {
            if (!ver.suite_builtin && ver.family_path.empty() && ver.recheck_path.empty())
                throw MalformedInputError("verify needs --suite builtin, --family, or --recheck");
            ver.threads = threads;
            ver.limit = limit;
            return cmd_verify(ver);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(upsets::ExitCode::usage_error);
    } catch (const upsets::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n'
                  << "hint: the `sample` subcommand gives a Monte Carlo estimate at any size\n";
        return static_cast<int>(e.exit_code());
    } catch (const upsets::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(upsets::ExitCode::usage_error);
    }
}
