#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lollipop {

// Vertices of a graph with v vertices are exactly 0..v-1.
using VertexId = int;

// Undirected edge; endpoints stored sorted, loops rejected.
struct Edge {
    VertexId u = -1;
    VertexId v = -1;

    Edge() = default;
    Edge(VertexId a, VertexId b);

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// 3-regular simple graph. Neighbor lists are kept sorted; an optional
// rotation system (cyclic order of the 3 neighbors at every vertex)
// acts as the planar-embedding witness for check_planarity.
class CubicGraph {
  public:
    CubicGraph() = default;
    explicit CubicGraph(int n_vertices);

    int n_vertices() const { return static_cast<int>(adj_.size()); }
    int n_edges() const;

    void add_edge(VertexId a, VertexId b);
    bool has_edge(VertexId a, VertexId b) const;
    const std::array<VertexId, 3>& neighbors(VertexId v) const { return adj_[v]; }
    int degree(VertexId v) const;

    std::vector<Edge> edges() const;  // sorted, each edge once

    void set_rotation(std::vector<std::array<VertexId, 3>> rotation);
    bool has_rotation() const { return rotation_.has_value(); }
    const std::vector<std::array<VertexId, 3>>& rotation() const;

  private:
    static constexpr VertexId kUnset = -1;
    std::vector<std::array<VertexId, 3>> adj_;
    std::optional<std::vector<std::array<VertexId, 3>>> rotation_;
};

// Oriented Hamiltonian path: a permutation of all vertices with every
// consecutive pair adjacent.
struct HamPath {
    std::vector<VertexId> order;

    bool operator==(const HamPath&) const = default;
    VertexId first() const { return order.front(); }
    VertexId last() const { return order.back(); }
    // Endpoints adjacent, i.e. this node has degree 1 in the lollipop graph.
    bool closes_cycle(const CubicGraph& g) const;
};

bool validate_ham_path(const CubicGraph& g, const HamPath& p, std::string* why = nullptr);

// Hamiltonian cycle in canonical form: lowest id first, lower-id second
// element. Canonicalization is idempotent and invariant under rotation
// and reversal of the input sequence.
struct HamCycle {
    std::vector<VertexId> order;

    bool operator==(const HamCycle&) const = default;
    bool operator<(const HamCycle& o) const { return order < o.order; }
    bool contains(const Edge& e) const;
    std::vector<Edge> edges() const;
};

HamCycle canonical_cycle(const std::vector<VertexId>& any_rotation);
bool validate_ham_cycle(const CubicGraph& g, const HamCycle& c, std::string* why = nullptr);

// Cycle whose endpoints close up <-> oriented path. path_to_cycle
// canonicalizes; cycle_to_path re-orients so that `start` comes first
// and `second` is its successor.
HamCycle path_to_cycle(const CubicGraph& g, const HamPath& p);
HamPath cycle_to_path(const HamCycle& c, VertexId start, VertexId second);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks all CubicGraph invariants (degrees, symmetry, simple, |V| even,
// 2|E| = 3|V|); violations are data, not errors.
ValidationReport validate_cubic(const CubicGraph& g);

struct PlanarityCheck {
    bool planar = false;
    int faces = 0;
};

// Traces faces from the rotation system; planar iff V - E + F = 2.
// Throws if the graph carries no embedding witness.
PlanarityCheck check_planarity(const CubicGraph& g);

// True iff no vertex cut of size <= 2 exists. Brute force over vertex
// pairs with reachability; fine at desk scale.
bool check_three_connected(const CubicGraph& g);

// Graph JSON: { "n_vertices": int, "edges": [[u,v],...], "rotation": [[...],...]? }
std::string graph_to_json(const CubicGraph& g);
CubicGraph graph_from_json(const std::string& text);
std::string graph_to_dot(const CubicGraph& g);

}  // namespace lollipop
