#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lollipop/experiment.hpp"

using namespace lollipop;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
    if (const char* env = std::getenv("LOLLIPOP_BUDGET")) return std::strtoull(env, nullptr, 10);
    return fallback;
}

SweepResult sweep_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SweepResult sweep;
    for (const auto& row : j.at("rows")) {
        SweepRow r;
        r.n = row.at("n").get<int>();
        r.steps = row.at("steps").get<std::uint64_t>();
        r.rightmost_count = row.at("rightmost_count").get<long long>();
        r.max_gap = row.at("max_gap").get<std::uint64_t>();
        r.end_cycle_ok = row.at("end_cycle_ok").get<bool>();
        r.counts_ok = row.at("counts_ok").get<bool>();
        sweep.rows.push_back(r);
    }
    sweep.slope = j.at("slope").get<double>();
    sweep.ln_c = j.at("ln_c").get<double>();
    return sweep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thomason lollipop walks on the exponential cubic family"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --wiring after the subcommand name too

    std::string wiring_path = "wiring.json";
    app.add_option("--wiring", wiring_path, "wiring snapshot path")->capture_default_str();

    // search
    auto* search = app.add_subcommand("search", "derive the gadget wiring and write the snapshot");
    int search_max_n = 6;
    std::string search_out = "wiring.json";
    search->add_option("--max-n", search_max_n, "instances checked per candidate")
        ->capture_default_str();
    search->add_option("--out", search_out, "snapshot output path")->capture_default_str();

    // build
    auto* build_cmd = app.add_subcommand("build", "construct G_n");
    int build_n = 3;
    std::string build_emit = "json", build_out;
    build_cmd->add_option("--n", build_n, "gadget count")->required();
    build_cmd->add_option("--emit", build_emit, "json|dot")->capture_default_str();
    build_cmd->add_option("--out", build_out, "output file (stdout otherwise)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    auto* oracle_cycles = oracle->add_subcommand("cycles", "enumerate Hamiltonian cycles");
    auto* oracle_lolli = oracle->add_subcommand("lollipop", "materialize the auxiliary graph");
    std::string oracle_graph, oracle_emit = "summary";
    std::size_t oracle_budget = 10'000'000;
    for (auto* sub : {oracle_cycles, oracle_lolli})
        sub->add_option("--graph", oracle_graph, "graph JSON file")->required();
    oracle_lolli->add_option("--emit", oracle_emit, "summary|dot")->capture_default_str();
    oracle_lolli->add_option("--budget", oracle_budget, "node budget")->capture_default_str();

    // run
    auto* run_cmd = app.add_subcommand("run", "one Thomason walk");
    int run_n = 3;
    std::string run_log = "rightmost", run_out;
    std::uint64_t run_budget = 1'000'000'000ull;
    run_cmd->add_option("--n", run_n, "gadget count")->required();
    run_cmd->add_option("--log", run_log, "full|rightmost|counts")->capture_default_str();
    run_cmd->add_option("--budget", run_budget, "lollipop budget")->capture_default_str();
    run_cmd->add_option("--out", run_out, "trace JSON output")->required();

    // words
    auto* words_cmd = app.add_subcommand("words", "rightmost-word language");
    int words_n = 4;
    std::string words_emit = "list";
    words_cmd->add_option("--n", words_n, "word length");
    words_cmd->add_option("--emit", words_emit, "list|count|dot")->capture_default_str();

    // asymptotics
    auto* asym = app.add_subcommand("asymptotics", "counting table and growth constant");
    int kmax = 20;
    asym->add_option("--kmax", kmax, "table size")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "lemma verification");
    std::string lemma = "all";
    int verify_nmin = 3, verify_nmax = 8;
    verify->add_option("--lemma", lemma, "init|bounce|fill|visitation|all")
        ->capture_default_str();
    verify->add_option("--n-min", verify_nmin)->capture_default_str();
    verify->add_option("--n-max", verify_nmax)->capture_default_str();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "step-count sweep");
    int sweep_min = 3, sweep_max = 36, sweep_workers = 1;
    std::string sweep_out, sweep_format = "csv";
    sweep_cmd->add_option("--min", sweep_min)->capture_default_str();
    sweep_cmd->add_option("--max", sweep_max)->capture_default_str();
    sweep_cmd->add_option("--workers", sweep_workers)->capture_default_str();
    sweep_cmd->add_option("--format", sweep_format, "csv|json")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "output file (stdout otherwise)");

    // report
    auto* report_cmd = app.add_subcommand("report", "re-emit sweep results");
    std::string report_in, report_out, report_format = "csv";
    report_cmd->add_option("--in", report_in, "sweep JSON results")->required();
    report_cmd->add_option("--format", report_format, "csv|json")->capture_default_str();
    report_cmd->add_option("--out", report_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (search->parsed()) {
            WiringSnapshot snap = make_snapshot(search_max_n);
            snap.save(search_out);
            std::cout << "wiring snapshot written to " << search_out << " (checksum "
                      << std::hex << snap.compute_checksum() << std::dec << ", "
                      << snap.survivors.size() << " survivors)\n";
            return 0;
        }
        if (build_cmd->parsed()) {
            WiringSnapshot snap = WiringSnapshot::load(wiring_path);
            FamilyInstance inst = build(build_n, snap);
            std::string body =
                build_emit == "dot" ? graph_to_dot(inst.graph) : graph_to_json(inst.graph);
            if (build_out.empty())
                std::cout << body;
            else
                write_file(build_out, body);
            return 0;
        }
        if (oracle->parsed()) {
            CubicGraph g = graph_from_json(read_file(oracle_graph));
            if (oracle_cycles->parsed()) {
                CycleSet cycles = enumerate_ham_cycles(g);
                std::cout << cycles.size() << " Hamiltonian cycles\n";
                for (const HamCycle& c : cycles.cycles) {
                    for (std::size_t i = 0; i < c.order.size(); ++i)
                        std::cout << (i ? " " : "") << c.order[i];
                    std::cout << "\n";
                }
            } else {
                LollipopGraphView view = build_lollipop_graph(g, oracle_budget);
                if (oracle_emit == "dot") {
                    std::cout << view.to_dot();
                } else {
                    int d1 = 0;
                    for (int i = 0; i < view.n_nodes(); ++i)
                        if (view.degree(i) == 1) ++d1;
                    std::cout << view.n_nodes() << " oriented Hamiltonian paths, " << d1
                              << " degree-1 nodes, " << view.n_components()
                              << " components\n";
                }
            }
            return 0;
        }
        if (run_cmd->parsed()) {
            WiringSnapshot snap = WiringSnapshot::load(wiring_path);
            FamilyInstance inst = build(run_n, snap);
            PatternLabels labels = PatternLabels::from_snapshot(snap);
            RunOptions opt;
            opt.log = run_log == "full"     ? WalkLog::full
                      : run_log == "counts" ? WalkLog::counts
                                            : WalkLog::rightmost;
            opt.budget = budget_from_env(run_budget);
            opt.progress = true;
            WalkTrace trace = run_thomason(inst, opt);
            write_file(run_out, trace_to_json(inst, labels, trace));
            std::cout << "n=" << run_n << " steps=" << trace.steps
                      << (trace.completed ? "" : " (budget exhausted)") << "\n";
            return trace.completed ? 0 : 3;
        }
        if (words_cmd->parsed()) {
            if (words_emit == "dot") {
                std::cout << JAutomaton().to_dot();
            } else if (words_emit == "count") {
                std::cout << enumerate_language(words_n).size() << "\n";
            } else {
                for (const std::string& w : enumerate_language(words_n)) std::cout << w << "\n";
            }
            return 0;
        }
        if (asym->parsed()) {
            auto a = recurrence_table(kmax);
            auto b = gf_series(kmax);
            bool all_equal = true;
            for (int k = 0; k <= kmax; ++k) {
                std::cout << "a_" << k << " = " << a[k];
                if (a[k] != b[k]) {
                    std::cout << "  != gf " << b[k];
                    all_equal = false;
                }
                std::cout << "\n";
            }
            GrowthConstant gc = growth_constant();
            std::cout << "c = " << gc.c << "\nsqrt(c) = " << gc.sqrt_c
                      << "\nmax residual = " << gc.max_residual << "\n";
            return all_equal ? 0 : 2;
        }
        if (verify->parsed()) {
            WiringSnapshot snap = WiringSnapshot::load(wiring_path);
            std::vector<LemmaReport> reports;
            if (lemma == "init" || lemma == "all")
                reports.push_back(verify_lemma_init(snap, verify_nmin, verify_nmax));
            if (lemma == "bounce" || lemma == "all")
                for (int n = verify_nmin; n <= std::min(verify_nmax, 6); ++n)
                    reports.push_back(verify_lemma_bounce(snap, n));
            if (lemma == "fill" || lemma == "all")
                for (int n = std::max(verify_nmin, 4); n <= std::min(verify_nmax, 8); ++n)
                    reports.push_back(verify_lemma_fill(snap, n));
            if (lemma == "visitation" || lemma == "all")
                for (int n = std::max(verify_nmin, 3); n <= std::min(verify_nmax, 10); ++n)
                    reports.push_back(verify_visitation(snap, n));
            bool all_pass = true;
            for (const LemmaReport& r : reports) {
                std::cout << r.to_json() << "\n";
                all_pass = all_pass && r.pass;
            }
            return all_pass ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            WiringSnapshot snap = WiringSnapshot::load(wiring_path);
            SweepResult sweep = sweep_steps(snap, sweep_min, sweep_max, sweep_workers);
            std::string body =
                sweep_format == "json" ? sweep_to_json(sweep) : sweep_to_csv(sweep);
            if (sweep_out.empty())
                std::cout << body;
            else
                write_file(sweep_out, body);
            for (const SweepRow& row : sweep.rows)
                if (!row.end_cycle_ok) return 4;
            return 0;
        }
        if (report_cmd->parsed()) {
            SweepResult sweep = sweep_from_json(read_file(report_in));
            write_report(sweep, report_out, report_format);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
