#pragma once

#include <vector>

#include "lollipop/graph.hpp"

namespace lollipop {

// One lollipop: pivot at an interior neighbor v_i of the last vertex
// (positions 1..n-3, zero-based) and reverse the suffix after it. The
// first vertex and first edge are preserved; applying the step twice
// with the same pivot returns the original path.
struct LollipopOption {
    HamPath path;
    VertexId pivot;  // the interior neighbor used
};

HamPath apply_lollipop(const HamPath& p, int pivot_position);

// One option when p closes a cycle, two otherwise (degree 3 forces it).
std::vector<LollipopOption> lollipop_successors(const CubicGraph& g, const HamPath& p);

}  // namespace lollipop
