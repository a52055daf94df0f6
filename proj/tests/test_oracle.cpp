#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lollipop/ham_oracle.hpp"
#include "lollipop/lollipop_step.hpp"
#include "test_util.hpp"

using namespace lollipop;
using namespace lollipop::testutil;

TEST_CASE("K_4 has 3 Hamiltonian cycles, one per perfect pairing") {
    CycleSet cycles = enumerate_ham_cycles(k4());
    CHECK(cycles.size() == 3);
    for (const HamCycle& c : cycles.cycles) {
        std::string why;
        CHECK(validate_ham_cycle(k4(), c, &why));
    }
}

TEST_CASE("the 3-cube has 6 Hamiltonian cycles") {
    CHECK(enumerate_ham_cycles(q3()).size() == 6);
}

TEST_CASE("every edge lies on an even number of Hamiltonian cycles") {
    for (const CubicGraph& g : {k4(), q3(), prism(6)}) {
        CycleSet cycles = enumerate_ham_cycles(g);
        for (const Edge& e : g.edges()) CHECK(count_cycles_containing(cycles, e) % 2 == 0);
    }
    // K_4: each edge lies on exactly 2 of the 3
    CycleSet cycles = enumerate_ham_cycles(k4());
    for (const Edge& e : k4().edges()) CHECK(count_cycles_containing(cycles, e) == 2);
}

TEST_CASE("the size bound is a hard refusal") {
    CHECK_THROWS_AS(enumerate_ham_cycles(prism(16)), std::runtime_error);
    CHECK_NOTHROW(enumerate_ham_cycles(prism(15)));
}

TEST_CASE("lollipop graph of K_4") {
    LollipopGraphView view = build_lollipop_graph(k4());
    CHECK(view.n_nodes() == 24);  // every permutation is a path in K_4
    std::set<HamCycle> cycles;
    std::set<std::vector<VertexId>> oriented;
    int deg1 = 0;
    for (int i = 0; i < view.n_nodes(); ++i) {
        CHECK(view.degree(i) >= 1);
        CHECK(view.degree(i) <= 2);
        // degree-1 nodes are exactly the oriented Hamiltonian cycles
        CHECK((view.degree(i) == 1) == view.is_cycle_node(i));
        if (view.degree(i) == 1) {
            ++deg1;
            const HamPath& p = view.node(i);
            HamCycle c = path_to_cycle(k4(), p);
            cycles.insert(c);
            // direction fingerprint: the vertex the cycle visits after
            // its least vertex, following p's cyclic direction
            std::size_t at = 0;
            while (p.order[at] != c.order[0]) ++at;
            std::vector<VertexId> fp = c.order;
            fp.push_back(p.order[(at + 1) % p.order.size()]);
            oriented.insert(fp);
        }
    }
    // one degree-1 node per (cycle, deleted edge, direction)
    CHECK(deg1 == 2 * 4 * 3);
    CHECK(cycles.size() == 3);
    CHECK(oriented.size() == 2 * 3);  // 2 orientations x 3 cycles
}

TEST_CASE("lollipop adjacency is symmetric and components are paths or cycles") {
    for (const CubicGraph& g : {k4(), q3()}) {
        LollipopGraphView view = build_lollipop_graph(g);
        std::vector<int> deg1_per_comp(view.n_components(), 0);
        for (int i = 0; i < view.n_nodes(); ++i) {
            for (int j : view.neighbors(i)) {
                if (j < 0) continue;
                bool back = view.neighbors(j)[0] == i || view.neighbors(j)[1] == i;
                CHECK(back);
            }
            if (view.degree(i) == 1) ++deg1_per_comp[view.component_of(i)];
        }
        // a path component has 2 degree-1 ends, a cycle component none
        for (int c = 0; c < view.n_components(); ++c)
            CHECK((deg1_per_comp[c] == 0 || deg1_per_comp[c] == 2));
    }
}

TEST_CASE("path components pair Hamiltonian cycles sharing the first edge") {
    CubicGraph g = q3();
    LollipopGraphView view = build_lollipop_graph(g);
    for (int i = 0; i < view.n_nodes(); ++i) {
        if (view.degree(i) != 1) continue;
        std::vector<int> comp = view.trace_component(i);
        const HamPath& a = view.node(comp.front());
        const HamPath& b = view.node(comp.back());
        CHECK(view.degree(comp.back()) == 1);
        // first vertex and first edge preserved along the whole component
        CHECK(a.order[0] == b.order[0]);
        CHECK(a.order[1] == b.order[1]);
        CHECK_FALSE(path_to_cycle(g, a) == path_to_cycle(g, b));
    }
}

TEST_CASE("node budget is a hard refusal") {
    CHECK_THROWS_AS(build_lollipop_graph(k4(), 10), std::runtime_error);
}

TEST_CASE("lollipop successors: option counts and involution") {
    CubicGraph g = q3();
    auto paths = enumerate_ham_paths_from(g, 0);
    REQUIRE_FALSE(paths.empty());
    for (const HamPath& p : paths) {
        auto options = lollipop_successors(g, p);
        CHECK(options.size() == (p.closes_cycle(g) ? 1u : 2u));
        for (const auto& opt : options) {
            CHECK(opt.path.order.front() == p.order.front());
            CHECK(opt.path.order[1] == p.order[1]);
            // the pivot keeps its position: applying it again undoes the step
            int pos = -1;
            for (std::size_t i = 0; i < p.order.size(); ++i)
                if (p.order[i] == opt.pivot) pos = static_cast<int>(i);
            CHECK(apply_lollipop(opt.path, pos).order == p.order);
        }
    }
}

TEST_CASE("random lollipop sequences preserve validity and undo cleanly") {
    std::mt19937 rng(42);
    CubicGraph g = q3();
    auto paths = enumerate_ham_paths_from(g, 0);
    HamPath p = paths[rng() % paths.size()];
    for (int step = 0; step < 500; ++step) {
        auto options = lollipop_successors(g, p);
        const auto& pick = options[rng() % options.size()];
        std::string why;
        REQUIRE(validate_ham_path(g, pick.path, &why));
        // the move is reversible: the original is among the successor's options
        bool reversible = false;
        for (const auto& back : lollipop_successors(g, pick.path))
            if (back.path == p) reversible = true;
        REQUIRE(reversible);
        p = pick.path;
    }
}

TEST_CASE("oracle DOT export") {
    LollipopGraphView view = build_lollipop_graph(k4());
    std::string dot = view.to_dot();
    CHECK(dot.find("graph lollipop") != std::string::npos);
    CHECK_THROWS(view.to_dot(3));
}
