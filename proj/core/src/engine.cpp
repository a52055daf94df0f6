#include "lollipop/engine.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace lollipop {

namespace {

// Walk state kept flat: the path plus a position index so pivot lookup
// is O(1) per neighbor and a lollipop is one suffix reversal.
struct Walker {
    const CubicGraph& g;
    std::vector<VertexId> path;
    std::vector<int> pos;

    Walker(const CubicGraph& graph, const HamPath& start) : g(graph), path(start.order) {
        pos.assign(g.n_vertices(), -1);
        for (int i = 0; i < static_cast<int>(path.size()); ++i) pos[path[i]] = i;
    }

    bool closes_cycle() const { return g.has_edge(path.front(), path.back()); }

    void pivots(int out[2], int& count) const {
        const int n = static_cast<int>(path.size());
        count = 0;
        for (VertexId w : g.neighbors(path.back())) {
            if (w < 0) continue;
            int i = pos[w];
            if (i >= 1 && i <= n - 3) out[count++] = i;
        }
    }

    void lollipop(int i) {
        int lo = i + 1, hi = static_cast<int>(path.size()) - 1;
        while (lo < hi) {
            std::swap(path[lo], path[hi]);
            pos[path[lo]] = lo;
            pos[path[hi]] = hi;
            ++lo;
            --hi;
        }
    }
};

// After a lollipop at position i the pivot vertex stays at position i,
// so pivoting there again undoes the step. Tracking that position is
// all "remembering the previous path" takes.
WalkTrace run_walk(const CubicGraph& g, const HamCycle& start_cycle, Edge e,
                   VertexId start_vertex, const RunOptions& opt,
                   const FamilyInstance* inst) {
    if (start_vertex != e.u && start_vertex != e.v)
        throw std::invalid_argument("start vertex not an endpoint of the edge");
    WalkTrace trace;
    trace.start_cycle = start_cycle;
    trace.distinguished_edge = e;

    const VertexId second = (e.u == start_vertex) ? e.v : e.u;
    Walker walker(g, cycle_to_path(start_cycle, start_vertex, second));

    std::uint64_t last_rightmost_step = 0;
    bool seen_rightmost = false;
    auto observe = [&](std::uint64_t step) {
        if (opt.log == WalkLog::full) trace.path_log.push_back(HamPath{walker.path});
        if (!inst) return;
        if (!inst->in_pac(walker.path.back())) return;
        if (seen_rightmost)
            trace.gap_sizes.push_back(step - last_rightmost_step);
        else
            trace.lead_in = step;
        seen_rightmost = true;
        last_rightmost_step = step;
        trace.rightmost_steps.push_back(step);
        HamPath current{walker.path};
        if (opt.log != WalkLog::counts) trace.rightmost_paths.push_back(current);
        if (opt.on_rightmost) opt.on_rightmost(current, step);
    };

    observe(0);

    int last_pivot = -1;
    while (true) {
        int pivots[2];
        int count = 0;
        walker.pivots(pivots, count);
        int chosen;
        if (count == 1)
            chosen = pivots[0];
        else if (pivots[0] == last_pivot)
            chosen = pivots[1];
        else if (pivots[1] == last_pivot)
            chosen = pivots[0];
        else
            throw std::logic_error("walk lost track of the previous path");
        if (trace.steps >= opt.budget) {
            trace.completed = false;
            return trace;
        }
        walker.lollipop(chosen);
        last_pivot = chosen;
        ++trace.steps;
        if (opt.progress && (trace.steps & ((1ull << 24) - 1)) == 0)
            std::cerr << "  ... " << trace.steps << " lollipops\n";
        observe(trace.steps);
        if (walker.closes_cycle()) break;
    }

    trace.completed = true;
    trace.end_cycle = path_to_cycle(g, HamPath{walker.path});
    if (trace.end_cycle == trace.start_cycle)
        throw std::logic_error("walk returned to the start cycle");
    if (!trace.end_cycle.contains(e))
        throw std::logic_error("end cycle misses the distinguished edge");
    if (seen_rightmost) trace.lead_out = trace.steps - last_rightmost_step;
    return trace;
}

}  // namespace

bool detect_rightmost(const FamilyInstance& inst, const HamPath& p) {
    if (p.order.front() != inst.lambda)
        throw std::invalid_argument("path does not start at lambda");
    return inst.in_pac(p.order.back());
}

WalkTrace run_thomason(const FamilyInstance& inst, const RunOptions& opt) {
    return run_walk(inst.graph, inst.c0, inst.green, inst.lambda, opt, &inst);
}

WalkTrace run_thomason_from(const FamilyInstance& inst, const HamCycle& start,
                            const RunOptions& opt) {
    return run_walk(inst.graph, start, inst.green, inst.lambda, opt, &inst);
}

WalkTrace run_thomason(const CubicGraph& g, const HamCycle& start, Edge e,
                       const RunOptions& opt) {
    return run_walk(g, start, e, e.u, opt, nullptr);
}

}  // namespace lollipop
