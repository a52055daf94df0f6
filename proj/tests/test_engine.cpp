#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lollipop/engine.hpp"
#include "lollipop/ham_oracle.hpp"
#include "lollipop/words.hpp"
#include "test_util.hpp"

using namespace lollipop;
using namespace lollipop::testutil;

namespace {

HamPath start_path(const FamilyInstance& inst) {
    VertexId second = inst.green.u == inst.lambda ? inst.green.v : inst.green.u;
    return cycle_to_path(inst.c0, inst.lambda, second);
}

}  // namespace

TEST_CASE("the start path is C_0 minus the red edge and has one neighbor") {
    FamilyInstance inst = build(3, snapshot());
    HamPath p = start_path(inst);
    CHECK(p.order.front() == inst.lambda);
    CHECK(Edge(p.order[0], p.order[1]) == inst.green);
    // the removed cycle edge at lambda is precisely the red edge
    CHECK(Edge(p.order.front(), p.order.back()) == inst.red);
    CHECK(p.closes_cycle(inst.graph));
    CHECK(lollipop_successors(inst.graph, p).size() == 1);
}

TEST_CASE("non-cycle paths have exactly two neighbors") {
    FamilyInstance inst = build(3, snapshot());
    int non_cycle = 0;
    for (const HamPath& p : enumerate_ham_paths_from(inst.graph, inst.lambda)) {
        if (p.closes_cycle(inst.graph)) continue;
        ++non_cycle;
        CHECK(lollipop_successors(inst.graph, p).size() == 2);
    }
    CHECK(non_cycle > 0);
}

TEST_CASE("walk on any cubic graph lands on a second cycle through the edge") {
    for (const CubicGraph& g : {k4(), q3()}) {
        for (const HamCycle& c : enumerate_ham_cycles(g).cycles) {
            for (const Edge& e : c.edges()) {
                WalkTrace trace = run_thomason(g, c, e);
                CHECK(trace.completed);
                CHECK_FALSE(trace.end_cycle == c);
                CHECK(trace.end_cycle.contains(e));
            }
        }
    }
}

TEST_CASE("walk equals the lollipop-graph component trace") {
    for (int n = 2; n <= 5; ++n) {
        FamilyInstance inst = build(n, snapshot());
        RunOptions opt;
        opt.log = WalkLog::full;
        WalkTrace trace = run_thomason(inst, opt);

        LollipopGraphView view = build_lollipop_graph(inst.graph);
        int node = view.find_node(start_path(inst));
        REQUIRE(node >= 0);
        std::vector<int> comp = view.trace_component(node);
        REQUIRE(comp.size() == trace.path_log.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            CHECK(view.node(comp[i]) == trace.path_log[i]);
        CHECK(trace.steps == comp.size() - 1);
    }
}

TEST_CASE("G_2 components pair cycles sharing the first vertex and edge") {
    FamilyInstance inst = build(2, snapshot());
    LollipopGraphView view = build_lollipop_graph(inst.graph);
    int path_components = 0;
    for (int i = 0; i < view.n_nodes(); ++i) {
        if (view.degree(i) != 1) continue;
        std::vector<int> comp = view.trace_component(i);
        const HamPath& a = view.node(comp.front());
        const HamPath& b = view.node(comp.back());
        REQUIRE(view.degree(comp.back()) == 1);
        CHECK(a.order[0] == b.order[0]);
        CHECK(a.order[1] == b.order[1]);
        CHECK_FALSE(path_to_cycle(inst.graph, a) == path_to_cycle(inst.graph, b));
        ++path_components;
    }
    CHECK(path_components > 0);
    // the walk component from C_0 terminates at C_1
    int start = view.find_node(start_path(inst));
    REQUIRE(start >= 0);
    std::vector<int> comp = view.trace_component(start);
    CHECK(path_to_cycle(inst.graph, view.node(comp.back())) == inst.c1);
}

TEST_CASE("G_1 walk: boundary words P and W, gamma ends with C") {
    FamilyInstance inst = build(1, snapshot());
    PatternLabels labels = PatternLabels::from_snapshot(snapshot());
    RunOptions opt;
    opt.log = WalkLog::rightmost;
    WalkTrace trace = run_thomason(inst, opt);
    REQUIRE_FALSE(trace.rightmost_paths.empty());
    PathWord first = extract_word(inst, labels, trace.rightmost_paths.front());
    PathWord last = extract_word(inst, labels, trace.rightmost_paths.back());
    CHECK(first.sigma == "P");
    CHECK(last.sigma == "W");
    CHECK(phi(last.sigma) == "C");
    CHECK(trace.end_cycle == inst.c1);
}

TEST_CASE("two runs with identical inputs produce identical traces") {
    FamilyInstance inst = build(7, snapshot());
    RunOptions opt;
    opt.log = WalkLog::rightmost;
    WalkTrace a = run_thomason(inst, opt);
    WalkTrace b = run_thomason(inst, opt);
    CHECK(a.steps == b.steps);
    CHECK(a.gap_sizes == b.gap_sizes);
    CHECK(a.rightmost_steps == b.rightmost_steps);
    CHECK(a.end_cycle == b.end_cycle);
}

TEST_CASE("running from C_1 retraces the component back to C_0") {
    FamilyInstance inst = build(6, snapshot());
    RunOptions opt;
    opt.log = WalkLog::full;
    WalkTrace fwd = run_thomason(inst, opt);
    WalkTrace bwd = run_thomason_from(inst, inst.c1, opt);
    CHECK(bwd.end_cycle == inst.c0);
    CHECK(bwd.steps == fwd.steps);
    REQUIRE(bwd.path_log.size() == fwd.path_log.size());
    for (std::size_t i = 0; i < fwd.path_log.size(); ++i)
        CHECK(fwd.path_log[i] == bwd.path_log[bwd.path_log.size() - 1 - i]);
}

TEST_CASE("trace invariants: neighbors, no backtracking, gap accounting") {
    FamilyInstance inst = build(5, snapshot());
    RunOptions opt;
    opt.log = WalkLog::full;
    WalkTrace trace = run_thomason(inst, opt);
    CHECK_FALSE(trace.end_cycle == trace.start_cycle);
    CHECK(trace.end_cycle.contains(inst.green));
    for (std::size_t i = 0; i + 1 < trace.path_log.size(); ++i) {
        bool adjacent = false;
        for (const auto& opt2 : lollipop_successors(inst.graph, trace.path_log[i]))
            if (opt2.path == trace.path_log[i + 1]) adjacent = true;
        CHECK(adjacent);
        if (i + 2 < trace.path_log.size())
            CHECK_FALSE(trace.path_log[i + 2] == trace.path_log[i]);
    }
    std::uint64_t total = trace.lead_in + trace.lead_out;
    for (std::uint64_t gap : trace.gap_sizes) total += gap;
    CHECK(total == trace.steps);
    CHECK(trace.rightmost_steps.size() == trace.gap_sizes.size() + 1);
}

TEST_CASE("step budget aborts with a partial trace") {
    FamilyInstance inst = build(8, snapshot());
    RunOptions opt;
    opt.budget = 5;
    WalkTrace trace = run_thomason(inst, opt);
    CHECK_FALSE(trace.completed);
    CHECK(trace.steps == 5);
}

TEST_CASE("rightmost detection") {
    FamilyInstance inst = build(6, snapshot());
    RunOptions opt;
    opt.log = WalkLog::full;
    WalkTrace trace = run_thomason(inst, opt);
    // the start path ends in the cap, the next one inside a gadget
    CHECK_FALSE(detect_rightmost(inst, trace.path_log[0]));
    CHECK_FALSE(detect_rightmost(inst, trace.path_log[1]));
    REQUIRE_FALSE(trace.rightmost_steps.empty());
    CHECK(detect_rightmost(inst, trace.path_log[trace.rightmost_steps.front()]));
    // the walk's last rightmost path comes right before the final closure
    CHECK(trace.rightmost_steps.back() + trace.lead_out == trace.steps);
    HamPath not_from_lambda = trace.path_log[2];
    std::reverse(not_from_lambda.order.begin(), not_from_lambda.order.end());
    CHECK_THROWS_AS(detect_rightmost(inst, not_from_lambda), std::invalid_argument);
}
