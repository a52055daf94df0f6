#include "lollipop/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lollipop {

Edge::Edge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("loop edge " + std::to_string(a));
}

CubicGraph::CubicGraph(int n_vertices) {
    adj_.assign(n_vertices, {kUnset, kUnset, kUnset});
}

int CubicGraph::degree(VertexId v) const {
    int d = 0;
    for (VertexId w : adj_[v])
        if (w != kUnset) ++d;
    return d;
}

int CubicGraph::n_edges() const {
    int total = 0;
    for (int v = 0; v < n_vertices(); ++v) total += degree(v);
    return total / 2;
}

void CubicGraph::add_edge(VertexId a, VertexId b) {
    if (a == b) throw std::invalid_argument("loop edge");
    if (a < 0 || b < 0 || a >= n_vertices() || b >= n_vertices())
        throw std::out_of_range("edge endpoint out of range");
    if (has_edge(a, b)) throw std::invalid_argument(
        "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    auto attach = [&](VertexId x, VertexId y) {
        for (VertexId& slot : adj_[x]) {
            if (slot == kUnset) {
                slot = y;
                std::sort(adj_[x].begin(), adj_[x].end(),
                          [](VertexId l, VertexId r) {
                              if ((l == kUnset) != (r == kUnset)) return r == kUnset;
                              return l < r;
                          });
                return;
            }
        }
        throw std::invalid_argument("vertex " + std::to_string(x) + " already has degree 3");
    };
    attach(a, b);
    attach(b, a);
}

bool CubicGraph::has_edge(VertexId a, VertexId b) const {
    if (a < 0 || a >= n_vertices()) return false;
    for (VertexId w : adj_[a])
        if (w == b) return true;
    return false;
}

std::vector<Edge> CubicGraph::edges() const {
    std::vector<Edge> out;
    for (int v = 0; v < n_vertices(); ++v)
        for (VertexId w : adj_[v])
            if (w != kUnset && v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

void CubicGraph::set_rotation(std::vector<std::array<VertexId, 3>> rotation) {
    if (static_cast<int>(rotation.size()) != n_vertices())
        throw std::invalid_argument("rotation size mismatch");
    for (int v = 0; v < n_vertices(); ++v) {
        for (VertexId w : rotation[v])
            if (!has_edge(v, w))
                throw std::invalid_argument("rotation lists non-edge at vertex " +
                                            std::to_string(v));
        auto sorted = rotation[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted[0] == sorted[1] || sorted[1] == sorted[2])
            throw std::invalid_argument("rotation repeats a neighbor");
    }
    rotation_ = std::move(rotation);
}

const std::vector<std::array<VertexId, 3>>& CubicGraph::rotation() const {
    if (!rotation_) throw std::runtime_error("no embedding witness");
    return *rotation_;
}

bool HamPath::closes_cycle(const CubicGraph& g) const {
    return g.has_edge(order.front(), order.back());
}

bool validate_ham_path(const CubicGraph& g, const HamPath& p, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (static_cast<int>(p.order.size()) != g.n_vertices())
        return fail("path length != |V|");
    std::vector<char> seen(g.n_vertices(), 0);
    for (VertexId v : p.order) {
        if (v < 0 || v >= g.n_vertices()) return fail("vertex out of range");
        if (seen[v]) return fail("vertex repeated: " + std::to_string(v));
        seen[v] = 1;
    }
    for (std::size_t i = 0; i + 1 < p.order.size(); ++i)
        if (!g.has_edge(p.order[i], p.order[i + 1]))
            return fail("non-adjacent consecutive pair at position " + std::to_string(i));
    return true;
}

HamCycle canonical_cycle(const std::vector<VertexId>& any_rotation) {
    const std::size_t n = any_rotation.size();
    if (n < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
    auto lowest = std::min_element(any_rotation.begin(), any_rotation.end());
    std::size_t at = static_cast<std::size_t>(lowest - any_rotation.begin());
    std::vector<VertexId> rot(n);
    for (std::size_t i = 0; i < n; ++i) rot[i] = any_rotation[(at + i) % n];
    if (rot[1] > rot[n - 1]) std::reverse(rot.begin() + 1, rot.end());
    return HamCycle{std::move(rot)};
}

bool HamCycle::contains(const Edge& e) const {
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i)
        if (Edge(order[i], order[(i + 1) % n]) == e) return true;
    return false;
}

std::vector<Edge> HamCycle::edges() const {
    std::vector<Edge> out;
    const std::size_t n = order.size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(order[i], order[(i + 1) % n]);
    std::sort(out.begin(), out.end());
    return out;
}

bool validate_ham_cycle(const CubicGraph& g, const HamCycle& c, std::string* why) {
    HamPath as_path{c.order};
    if (!validate_ham_path(g, as_path, why)) return false;
    if (!g.has_edge(c.order.front(), c.order.back())) {
        if (why) *why = "endpoints not adjacent";
        return false;
    }
    if (canonical_cycle(c.order).order != c.order) {
        if (why) *why = "not in canonical form";
        return false;
    }
    return true;
}

HamCycle path_to_cycle(const CubicGraph& g, const HamPath& p) {
    if (!p.closes_cycle(g)) throw std::invalid_argument("path endpoints not adjacent");
    return canonical_cycle(p.order);
}

HamPath cycle_to_path(const HamCycle& c, VertexId start, VertexId second) {
    const std::size_t n = c.order.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (c.order[i] != start) continue;
        std::vector<VertexId> fwd(n);
        for (std::size_t k = 0; k < n; ++k) fwd[k] = c.order[(i + k) % n];
        if (fwd[1] == second) return HamPath{std::move(fwd)};
        std::vector<VertexId> bwd(n);
        for (std::size_t k = 0; k < n; ++k) bwd[k] = c.order[(i + n - k) % n];
        if (bwd[1] == second) return HamPath{std::move(bwd)};
        throw std::invalid_argument("second vertex not a cycle neighbor of start");
    }
    throw std::invalid_argument("start vertex not on cycle");
}

ValidationReport validate_cubic(const CubicGraph& g) {
    ValidationReport report;
    const int n = g.n_vertices();
    if (n == 0) {
        report.violations.push_back("graph has no vertices");
        return report;
    }
    if (n % 2 != 0)
        report.violations.push_back("|V| = " + std::to_string(n) + " is odd");
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d != 3)
            report.violations.push_back("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(d));
        std::set<VertexId> distinct;
        for (VertexId w : g.neighbors(v)) {
            if (w == -1) continue;
            if (w == v) report.violations.push_back("loop at vertex " + std::to_string(v));
            if (!distinct.insert(w).second)
                report.violations.push_back("multi-edge at vertex " + std::to_string(v));
            if (w >= 0 && w < n && !g.has_edge(w, v))
                report.violations.push_back("asymmetric adjacency " + std::to_string(v) +
                                            "->" + std::to_string(w));
        }
    }
    if (report.ok() && 2 * g.n_edges() != 3 * n)
        report.violations.push_back("edge count != 3|V|/2");
    return report;
}

PlanarityCheck check_planarity(const CubicGraph& g) {
    const auto& rot = g.rotation();  // throws without witness
    const int n = g.n_vertices();
    const int m = g.n_edges();
    // darts (v, i) = i-th rotation slot at v
    std::vector<std::array<char, 3>> used(n, {0, 0, 0});
    auto slot_of = [&](VertexId v, VertexId w) {
        for (int i = 0; i < 3; ++i)
            if (rot[v][i] == w) return i;
        throw std::logic_error("rotation slot lookup failed");
    };
    int faces = 0;
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < 3; ++i) {
            if (used[v][i]) continue;
            ++faces;
            int cv = v, ci = i;
            while (!used[cv][ci]) {
                used[cv][ci] = 1;
                VertexId w = rot[cv][ci];
                int back = slot_of(w, cv);
                cv = w;
                ci = (back + 1) % 3;
            }
        }
    }
    PlanarityCheck result;
    result.faces = faces;
    result.planar = (n - m + faces == 2);
    return result;
}

namespace {

bool connected_without(const CubicGraph& g, VertexId skip1, VertexId skip2) {
    const int n = g.n_vertices();
    std::vector<char> blocked(n, 0);
    if (skip1 >= 0) blocked[skip1] = 1;
    if (skip2 >= 0) blocked[skip2] = 1;
    int start = -1;
    int expect = 0;
    for (int v = 0; v < n; ++v) {
        if (!blocked[v]) {
            if (start < 0) start = v;
            ++expect;
        }
    }
    if (start < 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    int count = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++count;
        for (VertexId w : g.neighbors(v)) {
            if (w < 0 || blocked[w] || seen[w]) continue;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return count == expect;
}

}  // namespace

bool check_three_connected(const CubicGraph& g) {
    const int n = g.n_vertices();
    if (n < 4) return false;
    if (!connected_without(g, -1, -1)) return false;
    for (int a = 0; a < n; ++a)
        if (!connected_without(g, a, -1)) return false;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!connected_without(g, a, b)) return false;
    return true;
}

std::string graph_to_json(const CubicGraph& g) {
    nlohmann::json j;
    j["n_vertices"] = g.n_vertices();
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    j["edges"] = edges;
    if (g.has_rotation()) {
        auto rot = nlohmann::json::array();
        for (const auto& r : g.rotation()) rot.push_back({r[0], r[1], r[2]});
        j["rotation"] = rot;
    }
    return j.dump(2);
}

CubicGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CubicGraph g(j.at("n_vertices").get<int>());
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("rotation") && !j["rotation"].is_null()) {
        std::vector<std::array<VertexId, 3>> rot;
        for (const auto& r : j["rotation"])
            rot.push_back({r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>()});
        g.set_rotation(std::move(rot));
    }
    return g;
}

std::string graph_to_dot(const CubicGraph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace lollipop
