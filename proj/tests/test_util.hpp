#pragma once

#include <string>

#include "lollipop/family.hpp"
#include "lollipop/graph.hpp"

namespace lollipop::testutil {

inline const WiringSnapshot& snapshot() {
    static WiringSnapshot snap =
        WiringSnapshot::load(std::string(LOLLIPOP_REPO_DIR) + "/wiring.json");
    return snap;
}

inline CubicGraph k4() {
    CubicGraph g(4);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.add_edge(a, b);
    return g;
}

inline CubicGraph q3() {
    CubicGraph g(8);
    for (int v = 0; v < 8; ++v)
        for (int bit : {1, 2, 4})
            if (v < (v ^ bit)) g.add_edge(v, v ^ bit);
    return g;
}

inline CubicGraph k33() {
    CubicGraph g(6);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) g.add_edge(a, b);
    return g;
}

// two K_4-minus-an-edge blocks joined by 2 edges: an explicit 2-cut
inline CubicGraph two_cut_graph() {
    CubicGraph g(8);
    auto block = [&](int base) {
        g.add_edge(base + 0, base + 2);
        g.add_edge(base + 0, base + 3);
        g.add_edge(base + 1, base + 2);
        g.add_edge(base + 1, base + 3);
        g.add_edge(base + 2, base + 3);
    };
    block(0);
    block(4);
    g.add_edge(0, 4);
    g.add_edge(1, 5);
    return g;
}

// prism over an n-cycle (cubic, 2n vertices); used to trip size bounds
inline CubicGraph prism(int n) {
    CubicGraph g(2 * n);
    for (int i = 0; i < n; ++i) {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(n + i, n + (i + 1) % n);
        g.add_edge(i, n + i);
    }
    return g;
}

}  // namespace lollipop::testutil
