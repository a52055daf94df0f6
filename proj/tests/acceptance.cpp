// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lollipop/experiment.hpp"
#include "test_util.hpp"

using namespace lollipop;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
    std::printf("criterion %d [%s]: %s (%lld ms)%s%s\n", number, name.c_str(),
                pass ? "PASS" : "FAIL", static_cast<long long>(ms.count()),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::string prefix_of_repeated(const std::string& block, int n) {
    std::string out;
    while (static_cast<int>(out.size()) < n) out += block;
    out.resize(n);
    return out;
}

}  // namespace

int main() {
    const WiringSnapshot& snap = lollipop::testutil::snapshot();
    const PatternLabels labels = PatternLabels::from_snapshot(snap);

    criterion(1, "family invariants", [&](std::string& detail) {
        for (int n = 1; n <= 12; ++n) {
            FamilyInstance inst = build(n, snap);
            if (inst.graph.n_vertices() != 2 * n + 6) return false;
            if (inst.graph.n_edges() != 3 * n + 9) return false;
            if (!validate_cubic(inst.graph).ok()) return false;
            if (!check_three_connected(inst.graph)) return false;
            if (!check_planarity(inst.graph).planar) return false;
            if (family_cycles(inst).size() != 3) return false;
            if (n <= 10 && enumerate_ham_cycles(inst.graph).size() != 3) return false;
        }
        detail = "n=1..12; oracle cycle count n<=10";
        return true;
    });

    criterion(2, "Thomason parity and the auxiliary graph", [&](std::string& detail) {
        std::vector<CubicGraph> graphs{lollipop::testutil::k4(), lollipop::testutil::q3()};
        for (int n = 1; n <= 8; ++n) graphs.push_back(build(n, snap).graph);
        long long nodes_total = 0;
        for (const CubicGraph& g : graphs) {
            CycleSet cycles = enumerate_ham_cycles(g);
            for (const Edge& e : g.edges())
                if (count_cycles_containing(cycles, e) % 2 != 0) return false;
            LollipopGraphView view = build_lollipop_graph(g);
            nodes_total += view.n_nodes();
            for (int i = 0; i < view.n_nodes(); ++i) {
                if (view.degree(i) < 1 || view.degree(i) > 2) return false;
                if ((view.degree(i) == 1) != view.is_cycle_node(i)) return false;
            }
        }
        detail = "K_4, Q_3, G_1..G_8; " + std::to_string(nodes_total) + " oriented paths";
        return true;
    });

    criterion(3, "termination and boundary words", [&](std::string& detail) {
        for (int n = 3; n <= 30; ++n) {
            FamilyInstance inst = build(n, snap);
            std::string first, last;
            RunOptions opt;
            opt.on_rightmost = [&](const HamPath& p, std::uint64_t) {
                std::string sigma = extract_word(inst, labels, p).sigma;
                if (first.empty()) first = sigma;
                last = std::move(sigma);
            };
            WalkTrace trace = run_thomason(inst, opt);
            if (!trace.completed || trace.end_cycle != inst.c1) return false;
            if (first != prefix_of_repeated("PQU", n)) return false;
            if (last != prefix_of_repeated("WSQU", n)) return false;
            std::string gamma = phi(last);
            const bool wants_c = (n % 4 == 1);
            std::string expect(gamma.size() - (wants_c ? 1 : 0), 'G');
            if (wants_c) expect += 'C';
            if (gamma != expect) return false;
        }
        detail = "n=3..30, GG...GC exactly when n=1 mod 4";
        return true;
    });

    criterion(4, "oracle equivalence", [&](std::string& detail) {
        for (int n = 1; n <= 6; ++n) {
            FamilyInstance inst = build(n, snap);
            RunOptions opt;
            opt.log = WalkLog::full;
            WalkTrace trace = run_thomason(inst, opt);
            LollipopGraphView view = build_lollipop_graph(inst.graph);
            VertexId second = inst.green.u == inst.lambda ? inst.green.v : inst.green.u;
            int node = view.find_node(cycle_to_path(inst.c0, inst.lambda, second));
            if (node < 0) return false;
            std::vector<int> comp = view.trace_component(node);
            if (comp.size() != trace.path_log.size()) return false;
            for (std::size_t i = 0; i < comp.size(); ++i)
                if (!(view.node(comp[i]) == trace.path_log[i])) return false;
            if (trace.steps != comp.size() - 1) return false;
        }
        detail = "walk == component trace node-for-node, n<=6";
        return true;
    });

    criterion(5, "bounce classification", [&](std::string& detail) {
        std::set<int> bouncing, conducting, absent;
        for (int n = 3; n <= 6; ++n) {
            FamilyInstance inst = build(n, snap);
            std::vector<HamPath> universe = lambda_green_paths(inst);
            for (int label = 1; label <= 8; ++label) {
                try {
                    BounceResult r = classify_bounce(inst, labels, label, universe);
                    (r.cls == BounceClass::bouncing ? bouncing : conducting).insert(label);
                } catch (const std::runtime_error& e) {
                    if (std::string(e.what()).find("no reachable occurrences") ==
                        std::string::npos)
                        throw;
                    absent.insert(label);
                }
            }
        }
        if (bouncing != std::set<int>{1, 2}) return false;
        if (conducting != std::set<int>{3, 4, 5, 6, 7}) return false;
        // pattern 8 occurs on no lambda-green path at any tested n;
        // its conducting classification is vacuous over reachable paths
        if (absent.count(1) || absent.count(2)) return false;
        for (int label = 3; label <= 7; ++label)
            if (!conducting.count(label)) return false;
        detail = "bouncing {1,2}, conducting {3..7} observed; 8 unreachable (vacuous)";
        return true;
    });

    criterion(6, "fill templates, order adjacency, full visitation", [&](std::string& detail) {
        for (int n = 3; n <= 12; ++n) {
            if (!verify_lemma_fill(snap, n).pass) return false;
            if (!verify_visitation(snap, n).pass) return false;
            // consecutive distinct rightmost gamma words are <-adjacent:
            // implied by equality with the sorted enumeration, checked
            // again directly on the trace
            FamilyInstance inst = build(n, snap);
            PatternLabels lbl = PatternLabels::from_snapshot(snap);
            std::vector<std::string> gammas;
            RunOptions opt;
            opt.on_rightmost = [&](const HamPath& p, std::uint64_t) {
                std::string g = phi(extract_word(inst, lbl, p).sigma);
                if (gammas.empty() || gammas.back() != g) gammas.push_back(g);
            };
            run_thomason(inst, opt);
            std::vector<std::string> expected = enumerate_language(n);
            if (gammas != expected) return false;
            for (std::size_t i = 0; i + 1 < gammas.size(); ++i)
                if (gamma_compare(gammas[i], gammas[i + 1]) >= 0) return false;
        }
        detail = "n=3..12";
        return true;
    });

    criterion(7, "counting: enumeration = recurrence = series", [&](std::string& detail) {
        std::vector<long long> a = recurrence_table(20);
        std::vector<long long> b = gf_series(20);
        if (a[0] != 1 || a[1] != 2 || a[2] != 3 || a[3] != 3) return false;
        for (int k = 0; k <= 20; ++k) {
            if (a[k] != b[k]) return false;
            if (static_cast<long long>(enumerate_language(k).size()) != a[k]) return false;
        }
        detail = "k<=20 exact, a_20=" + std::to_string(a[20]);
        return true;
    });

    criterion(8, "growth constants", [&](std::string& detail) {
        GrowthConstant gc = growth_constant();
        if (std::fabs(gc.c - 1.3953) >= 1e-3) return false;
        if (std::fabs(gc.sqrt_c - 1.1812) >= 1e-3) return false;
        std::vector<long long> a = recurrence_table(61);
        double ratio = static_cast<double>(a[61]) / static_cast<double>(a[60]);
        if (std::fabs(ratio - gc.c) >= 1e-3) return false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "c=%.6f sqrt=%.6f ratio@60=%.6f", gc.c, gc.sqrt_c,
                      ratio);
        detail = buf;
        return true;
    });

    criterion(9, "growth of the step count", [&](std::string& detail) {
        SweepResult sweep = sweep_steps(snap, 3, 36);
        if (std::fabs(sweep.slope - sweep.ln_c) >= 0.01) return false;
        // T(n)/a_n stays inside a fixed band
        constexpr double kBandLow = 3.0, kBandHigh = 8.0;
        std::vector<long long> a = recurrence_table(36);
        for (const SweepRow& row : sweep.rows) {
            if (!row.end_cycle_ok || !row.counts_ok) return false;
            if (row.max_gap > static_cast<std::uint64_t>(2 * row.n)) return false;
            double ratio = static_cast<double>(row.steps) / static_cast<double>(a[row.n]);
            if (ratio < kBandLow || ratio > kBandHigh) return false;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "slope=%.5f ln c=%.5f, T/a_n in [3,8], gaps<=2n",
                      sweep.slope, sweep.ln_c);
        detail = buf;
        return true;
    });

    if (failures == 0) std::printf("all 9 acceptance criteria pass\n");
    return failures == 0 ? 0 : 1;
}
