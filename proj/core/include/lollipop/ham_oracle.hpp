#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lollipop/graph.hpp"

namespace lollipop {

struct CycleSet {
    std::vector<HamCycle> cycles;  // canonical, sorted, duplicate-free

    int size() const { return static_cast<int>(cycles.size()); }
};

// Exhaustive backtracking over edge choices with degree pruning.
// Refuses graphs above the size bound: the oracle's role is
// small-instance ground truth, not scale.
CycleSet enumerate_ham_cycles(const CubicGraph& g, int max_vertices = 30);

int count_cycles_containing(const CycleSet& cycles, const Edge& e);

// All Hamiltonian paths that start at `start`; optionally fixing the
// first edge (second >= 0).
std::vector<HamPath> enumerate_ham_paths_from(const CubicGraph& g, VertexId start,
                                              VertexId second = -1);

// The auxiliary graph on all oriented Hamiltonian paths. Every node has
// degree 1 or 2; degree-1 nodes are exactly the Hamiltonian cycles;
// components are simple paths or simple cycles.
class LollipopGraphView {
  public:
    LollipopGraphView(const CubicGraph& g, std::size_t node_budget);

    int n_nodes() const { return static_cast<int>(nodes_.size()); }
    const HamPath& node(int i) const { return nodes_[i]; }
    int degree(int i) const;
    const std::array<int, 2>& neighbors(int i) const { return nbr_[i]; }
    bool is_cycle_node(int i) const;

    int find_node(const HamPath& p) const;  // -1 if absent
    int component_of(int i) const { return comp_[i]; }
    int n_components() const { return n_components_; }

    // Nodes of the component containing `start`, in traversal order.
    // For a path component, starts from its nearest endpoint when
    // `start` is an endpoint, else from `start` outward both ways is
    // not needed here: callers pass degree-1 nodes.
    std::vector<int> trace_component(int start) const;

    std::vector<int> degree_one_nodes() const;

    std::string to_dot(std::size_t max_nodes = 4096) const;

  private:
    CubicGraph graph_;  // owned: views outlive the graphs they were built from
    std::vector<HamPath> nodes_;
    std::vector<std::array<int, 2>> nbr_;
    std::vector<int> comp_;
    int n_components_ = 0;
};

LollipopGraphView build_lollipop_graph(const CubicGraph& g,
                                       std::size_t node_budget = 10'000'000);

}  // namespace lollipop
