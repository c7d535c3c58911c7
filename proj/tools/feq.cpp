// feq: command-line front end for the functional-equation toolkit.
//
// Commands:
//   feq solve <file.feq>                     solve and check degree claims
//   feq degree <file.feq> --fn <name>        degree of a declared known table
//   feq decompose <file.feq> --fn <name> --order <m>
//   feq verify [--suite <name>]              run the verification suite
//
// Exit codes: 0 = all claims hold, 2 = a claim fails, 1 = usage/parse errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "feq/aichinger.hpp"
#include "feq/dsl.hpp"
#include "feq/verification.hpp"

#ifndef FEQ_SPECS_DIR
#define FEQ_SPECS_DIR ""
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace feq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitClaimFailed = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

json element_json(const Element& e) { return json(e.residues()); }

json degree_report_json(const DegreeReport& rep) {
    json j;
    j["degree"] = rep.degree.to_string();
    if (rep.witness) {
        json w;
        w["shifts"] = json::array();
        for (const auto& s : rep.witness->shifts) w["shifts"].push_back(element_json(s));
        w["point"] = element_json(rep.witness->point);
        w["value"] = element_json(rep.witness->value);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

void emit(const json& report, bool as_json) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // Human-readable rendering of the same report.
    std::cout << report["command"].get<std::string>() << " report (input "
              << report["input_digest"].get<std::string>() << ")\n";
    if (report.contains("hypotheses")) {
        const auto& h = report["hypotheses"];
        if (h.is_null())
            std::cout << "hypotheses: not applicable to this equation shape\n";
        else
            std::cout << "hypotheses: "
                      << (h["satisfied"].get<bool>() ? "satisfied"
                                                     : h["violation"].get<std::string>())
                      << "\n";
    }
    if (report.contains("solvable")) {
        if (!report["solvable"].get<bool>()) {
            std::cout << "equation is unsolvable (empty solution set)\n";
        } else {
            std::cout << "solution rank (homogeneous generators): "
                      << report["solution_rank"].get<int>() << "\n";
            for (const auto& u : report["unknowns"]) {
                std::cout << "  " << u["name"].get<std::string>() << ": particular degree "
                          << u["particular"]["degree"].get<std::string>()
                          << ", generator degrees [";
                bool first = true;
                for (const auto& g : u["generator_degrees"]) {
                    if (!first) std::cout << ", ";
                    std::cout << g.get<std::string>();
                    first = false;
                }
                std::cout << "]\n";
            }
        }
    }
    if (report.contains("claims")) {
        for (const auto& c : report["claims"])
            std::cout << "claim degree " << c["unknown"].get<std::string>()
                      << " <= " << c["bound"].get<long long>() << ": "
                      << (c["holds"].get<bool>() ? "holds" : "FAILS") << "\n";
        std::cout << (report["all_claims_hold"].get<bool>() ? "all claims hold"
                                                            : "claim failure")
                  << "\n";
    }
    if (report.contains("fn_degree"))
        std::cout << "degree of " << report["fn"].get<std::string>() << ": "
                  << report["fn_degree"]["degree"].get<std::string>() << "\n";
    if (report.contains("decomposition")) {
        if (report["decomposition"].is_null())
            std::cout << "none\n";
        else {
            std::cout << "decomposition of order " << report["order"].get<long long>()
                      << ":\n";
            int i = 1;
            for (const auto& part : report["decomposition"])
                std::cout << "  g" << i++ << " = " << part.dump() << "\n";
        }
    }
    if (report.contains("criteria")) {
        for (const auto& c : report["criteria"])
            std::cout << (c["passed"].get<bool>() ? "[PASS] " : "[FAIL] ") << "criterion "
                      << c["id"].get<int>() << ": " << c["summary"].get<std::string>() << " — "
                      << c["detail"].get<std::string>() << "\n";
        std::cout << (report["all_passed"].get<bool>() ? "suite passed" : "suite FAILED")
                  << "\n";
    }
}

struct CommonFlags {
    bool as_json = false;
    std::uint64_t seed = 0;
    i64 max_rows = 2'000'000;
};

int cmd_solve(const std::string& path, const CommonFlags& flags) {
    auto start = std::chrono::steady_clock::now();
    std::string text = read_file(path);
    LoweredDocument low = lower(parse(text));

    json report;
    report["report_version"] = 1;
    report["command"] = "solve";
    report["input_digest"] = fnv1a_hex(text);
    report["seed"] = flags.seed;

    try {
        HypothesisReport hyp = check_hypotheses(low.equation);
        json h;
        h["satisfied"] = hyp.satisfied;
        h["violation"] = hyp.violation;
        report["hypotheses"] = std::move(h);
    } catch (const StructuralError&) {
        report["hypotheses"] = nullptr;  // equation is not in the two-variable shifted shape
    }

    i64 bound = low.equation.claimed_bound.value_or(0);
    SolutionReport rep = solve_equation(low.equation, bound, flags.max_rows);

    report["solvable"] = !rep.coset.empty();
    report["solution_rank"] =
        static_cast<int>(rep.coset.empty() ? 0 : rep.coset.homogeneous_generators().size());
    report["unknowns"] = json::array();
    for (const auto& u : rep.per_unknown) {
        json ju;
        ju["name"] = u.name;
        ju["claimed"] = u.degree_claimed;
        ju["particular"] = degree_report_json(u.particular);
        ju["generator_degrees"] = json::array();
        for (const auto& g : u.generators)
            ju["generator_degrees"].push_back(g.degree.to_string());
        report["unknowns"].push_back(std::move(ju));
    }

    bool all_hold = !rep.coset.empty();
    report["claims"] = json::array();
    for (const auto& c : low.claims) {
        bool holds = !rep.coset.empty();
        for (std::size_t i = 0; i < low.equation.unknowns.size() && holds; ++i) {
            if (low.equation.unknowns[i].name != c.unknown) continue;
            const auto& ud = rep.per_unknown[i];
            holds = holds && ud.particular.degree.at_most(c.bound);
            for (const auto& g : ud.generators) holds = holds && g.degree.at_most(c.bound);
        }
        json jc;
        jc["unknown"] = c.unknown;
        jc["bound"] = c.bound;
        jc["holds"] = holds;
        report["claims"].push_back(std::move(jc));
        all_hold = all_hold && holds;
    }
    report["all_claims_hold"] = all_hold;
    report["timing_ms"] = elapsed_ms(start);

    emit(report, flags.as_json);
    return all_hold ? kExitOk : kExitClaimFailed;
}

const FunctionTable& find_known(const LoweredDocument& low, const std::string& name) {
    auto it = low.knowns.find(name);
    if (it == low.knowns.end())
        throw std::runtime_error("no known table named '" + name + "' in this file");
    return it->second;
}

int cmd_degree(const std::string& path, const std::string& fn, const CommonFlags& flags) {
    auto start = std::chrono::steady_clock::now();
    std::string text = read_file(path);
    LoweredDocument low = lower(parse(text));
    const FunctionTable& table = find_known(low, fn);

    json report;
    report["report_version"] = 1;
    report["command"] = "degree";
    report["input_digest"] = fnv1a_hex(text);
    report["fn"] = fn;
    report["fn_degree"] = degree_report_json(degree(table));
    report["timing_ms"] = elapsed_ms(start);
    emit(report, flags.as_json);
    return kExitOk;
}

int cmd_decompose(const std::string& path, const std::string& fn, i64 order,
                  const CommonFlags& flags) {
    auto start = std::chrono::steady_clock::now();
    std::string text = read_file(path);
    LoweredDocument low = lower(parse(text));
    const FunctionTable& table = find_known(low, fn);

    AichingerConfig cfg;
    cfg.max_order = std::max<i64>(cfg.max_order, order);
    cfg.max_rows = flags.max_rows;
    auto decomposition = find_decomposition(table, order, cfg);

    json report;
    report["report_version"] = 1;
    report["command"] = "decompose";
    report["input_digest"] = fnv1a_hex(text);
    report["fn"] = fn;
    report["order"] = order;
    if (decomposition) {
        json parts = json::array();
        for (const auto& p : decomposition->parts) parts.push_back(json(p.value_indices()));
        report["decomposition"] = std::move(parts);
    } else {
        report["decomposition"] = nullptr;
    }
    report["timing_ms"] = elapsed_ms(start);
    emit(report, flags.as_json);
    return decomposition ? kExitOk : kExitClaimFailed;
}

int cmd_verify(const std::string& suite, const CommonFlags& flags, const char* argv0) {
    if (suite != "paper") {
        std::cerr << "unknown suite '" << suite << "' (available: paper)\n";
        return kExitUsage;
    }
    auto start = std::chrono::steady_clock::now();
    verification::SuiteConfig cfg;
    cfg.seed = flags.seed;
    cfg.specs_dir = FEQ_SPECS_DIR;
    cfg.cli_path = argv0;
    auto outcomes = verification::run_acceptance_suite(cfg);

    json report;
    report["report_version"] = 1;
    report["command"] = "verify";
    report["input_digest"] = fnv1a_hex(suite);
    report["suite"] = suite;
    report["seed"] = flags.seed;
    report["criteria"] = json::array();
    bool all = true;
    for (const auto& c : outcomes) {
        json jc;
        jc["id"] = c.id;
        jc["summary"] = c.summary;
        jc["passed"] = c.passed;
        jc["detail"] = c.detail;
        report["criteria"].push_back(std::move(jc));
        all = all && c.passed;
    }
    report["all_passed"] = all;
    report["timing_ms"] = elapsed_ms(start);
    emit(report, flags.as_json);
    return all ? kExitOk : kExitClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver for linear functional equations on finite abelian groups"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string path, fn, suite = "paper";
    i64 order = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", flags.as_json, "emit a machine-readable JSON report");
        cmd->add_option("--seed", flags.seed, "seed for randomized checks (default 0)");
        cmd->add_option("--max-rows", flags.max_rows,
                        "capacity cap on generated constraint rows");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve an equation file and check claims");
    solve->add_option("file", path, "input .feq file")->required();
    add_common(solve);

    CLI::App* deg = app.add_subcommand("degree", "degree of a declared known table");
    deg->add_option("file", path, "input .feq file")->required();
    deg->add_option("--fn", fn, "known table name")->required();
    add_common(deg);

    CLI::App* dec = app.add_subcommand("decompose", "decompose a known table at a given order");
    dec->add_option("file", path, "input .feq file")->required();
    dec->add_option("--fn", fn, "known table name")->required();
    dec->add_option("--order", order, "decomposition order m")->required();
    add_common(dec);

    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "suite name (default: paper)");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;  // --help exits 0
    }

    try {
        if (solve->parsed()) return cmd_solve(path, flags);
        if (deg->parsed()) return cmd_degree(path, fn, flags);
        if (dec->parsed()) return cmd_decompose(path, fn, order, flags);
        if (ver->parsed()) return cmd_verify(suite, flags, argv[0]);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
