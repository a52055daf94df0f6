#include "lollipop/ham_oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lollipop/lollipop_step.hpp"

namespace lollipop {

namespace {

// Extend from the lowest vertex id, neighbors in id order, so failures
// are reproducible.
template <typename OnPath>
void dfs_paths(const CubicGraph& g, std::vector<VertexId>& path, std::vector<char>& used,
               OnPath&& on_path) {
    const int n = g.n_vertices();
    if (static_cast<int>(path.size()) == n) {
        on_path(path);
        return;
    }
    VertexId tail = path.back();
    for (VertexId w : g.neighbors(tail)) {
        if (w < 0 || used[w]) continue;
        used[w] = 1;
        path.push_back(w);
        dfs_paths(g, path, used, on_path);
        path.pop_back();
        used[w] = 0;
    }
}

struct PathHash {
    std::size_t operator()(const std::vector<VertexId>& v) const {
        // FNV-1a over the id sequence
        std::uint64_t h = 1469598103934665603ull;
        for (VertexId x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

HamPath apply_lollipop(const HamPath& p, int pivot_position) {
    const int n = static_cast<int>(p.order.size());
    if (pivot_position < 1 || pivot_position > n - 3)
        throw std::invalid_argument("pivot position not interior");
    HamPath q = p;
    std::reverse(q.order.begin() + pivot_position + 1, q.order.end());
    return q;
}

std::vector<LollipopOption> lollipop_successors(const CubicGraph& g, const HamPath& p) {
    const int n = static_cast<int>(p.order.size());
    std::vector<int> pos(g.n_vertices(), -1);
    for (int i = 0; i < n; ++i) pos[p.order[i]] = i;
    std::vector<LollipopOption> out;
    VertexId tail = p.order.back();
    for (VertexId w : g.neighbors(tail)) {
        if (w < 0) continue;
        int i = pos[w];
        if (i >= 1 && i <= n - 3) out.push_back({apply_lollipop(p, i), w});
    }
    if (out.empty() || out.size() > 2)
        throw std::logic_error("lollipop successor count " + std::to_string(out.size()) +
                               " outside {1,2}");
    return out;
}

CycleSet enumerate_ham_cycles(const CubicGraph& g, int max_vertices) {
    const int n = g.n_vertices();
    if (n > max_vertices)
        throw std::runtime_error("enumerate_ham_cycles: size bound exceeded (" +
                                 std::to_string(n) + " > " + std::to_string(max_vertices) +
                                 ")");
    CycleSet result;
    if (n < 3) return result;
    std::vector<VertexId> path{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    dfs_paths(g, path, used, [&](const std::vector<VertexId>& full) {
        if (!g.has_edge(full.back(), full.front())) return;
        if (full[1] > full[n - 1]) return;  // one orientation per cycle
        result.cycles.push_back(canonical_cycle(full));
    });
    std::sort(result.cycles.begin(), result.cycles.end());
    result.cycles.erase(std::unique(result.cycles.begin(), result.cycles.end()),
                        result.cycles.end());
    return result;
}

int count_cycles_containing(const CycleSet& cycles, const Edge& e) {
    int count = 0;
    for (const HamCycle& c : cycles.cycles)
        if (c.contains(e)) ++count;
    return count;
}

std::vector<HamPath> enumerate_ham_paths_from(const CubicGraph& g, VertexId start,
                                              VertexId second) {
    std::vector<HamPath> out;
    std::vector<VertexId> path{start};
    std::vector<char> used(g.n_vertices(), 0);
    used[start] = 1;
    if (second >= 0) {
        if (!g.has_edge(start, second)) throw std::invalid_argument("first edge absent");
        used[second] = 1;
        path.push_back(second);
    }
    dfs_paths(g, path, used,
              [&](const std::vector<VertexId>& full) { out.push_back(HamPath{full}); });
    return out;
}

LollipopGraphView::LollipopGraphView(const CubicGraph& g, std::size_t node_budget)
    : graph_(g) {
    const int n = g.n_vertices();
    std::unordered_map<std::vector<VertexId>, int, PathHash> index;
    for (VertexId s = 0; s < n; ++s) {
        std::vector<VertexId> path{s};
        std::vector<char> used(n, 0);
        used[s] = 1;
        dfs_paths(g, path, used, [&](const std::vector<VertexId>& full) {
            if (nodes_.size() >= node_budget)
                throw std::runtime_error("build_lollipop_graph: node budget exceeded");
            index.emplace(full, static_cast<int>(nodes_.size()));
            nodes_.push_back(HamPath{full});
        });
    }
    nbr_.assign(nodes_.size(), {-1, -1});
    for (int i = 0; i < n_nodes(); ++i) {
        auto succs = lollipop_successors(graph_, nodes_[i]);
        int k = 0;
        for (const auto& s : succs) {
            auto it = index.find(s.path.order);
            if (it == index.end())
                throw std::logic_error("lollipop successor missing from node set");
            nbr_[i][k++] = it->second;
        }
    }
    // components via union-find
    std::vector<int> parent(nodes_.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n_nodes(); ++i)
        for (int j : nbr_[i])
            if (j >= 0) parent[find(i)] = find(j);
    comp_.assign(nodes_.size(), -1);
    for (int i = 0; i < n_nodes(); ++i) {
        int root = find(i);
        if (comp_[root] < 0) comp_[root] = n_components_++;
        comp_[i] = comp_[root];
    }
}

int LollipopGraphView::degree(int i) const {
    return (nbr_[i][0] >= 0 ? 1 : 0) + (nbr_[i][1] >= 0 ? 1 : 0);
}

bool LollipopGraphView::is_cycle_node(int i) const {
    return nodes_[i].closes_cycle(graph_);
}

int LollipopGraphView::find_node(const HamPath& p) const {
    // linear fallback is fine for tests; heavy callers use the walk
    for (int i = 0; i < n_nodes(); ++i)
        if (nodes_[i] == p) return i;
    return -1;
}

std::vector<int> LollipopGraphView::trace_component(int start) const {
    std::vector<int> seq{start};
    int prev = -1, cur = start;
    while (true) {
        int next = -1;
        for (int j : nbr_[cur])
            if (j >= 0 && j != prev) next = j;
        if (next < 0 || next == start) break;
        seq.push_back(next);
        prev = cur;
        cur = next;
    }
    return seq;
}

std::vector<int> LollipopGraphView::degree_one_nodes() const {
    std::vector<int> out;
    for (int i = 0; i < n_nodes(); ++i)
        if (degree(i) == 1) out.push_back(i);
    return out;
}

std::string LollipopGraphView::to_dot(std::size_t max_nodes) const {
    if (nodes_.size() > max_nodes)
        throw std::runtime_error("lollipop graph too large for DOT export");
    std::ostringstream out;
    out << "graph lollipop {\n";
    for (int i = 0; i < n_nodes(); ++i) {
        out << "  n" << i << " [label=\"c" << comp_[i] << (is_cycle_node(i) ? "*" : "")
            << "\"];\n";
    }
    for (int i = 0; i < n_nodes(); ++i)
        for (int j : nbr_[i])
            if (j > i) out << "  n" << i << " -- n" << j << ";\n";
    out << "}\n";
    return out.str();
}

LollipopGraphView build_lollipop_graph(const CubicGraph& g, std::size_t node_budget) {
    return LollipopGraphView(g, node_budget);
}

}  // namespace lollipop
