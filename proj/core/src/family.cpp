#include "lollipop/family.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lollipop {

namespace {

std::array<int, 2> tracks_without(int excluded) {
    std::array<int, 2> out{};
    int k = 0;
    for (int t = 0; t < 3; ++t)
        if (t != excluded) out[k++] = t;
    return out;
}

}  // namespace

std::array<int, 2> GadgetWiring::left_port_tracks() const {
    return tracks_without(pass_left);
}

std::array<int, 2> GadgetWiring::right_port_tracks_by_slot() const {
    auto base = tracks_without(pass_right);
    if (cross) std::swap(base[0], base[1]);
    return base;
}

int GadgetWiring::normal_track() const {
    for (int t = 0; t < 3; ++t)
        if (t != pass_left && t != pass_right) return t;
    throw std::logic_error("degenerate wiring");
}

GadgetWiring GadgetWiring::vflip() const {
    // tracks reflect; slot order (sorted by left track) reverses on both
    // sides, so the crossing parity is preserved
    return GadgetWiring{2 - pass_left, 2 - pass_right, cross};
}

GadgetWiring GadgetWiring::hflip() const {
    return GadgetWiring{pass_right, pass_left, cross};
}

GadgetWiring GadgetWiring::canonical() const {
    GadgetWiring best = *this;
    for (const GadgetWiring& w : {*this, vflip(), hflip(), vflip().hflip()})
        if (w.key() < best.key()) best = w;
    return best;
}

std::vector<GadgetWiring> all_raw_wirings() {
    std::vector<GadgetWiring> out;
    for (int pl = 0; pl < 3; ++pl)
        for (int pr = 0; pr < 3; ++pr) {
            if (pl == pr) continue;
            for (int cross = 0; cross < 2; ++cross)
                out.push_back(GadgetWiring{pl, pr, cross != 0});
        }
    return out;
}

int FamilyInstance::region_of(VertexId v) const {
    if (v < 3) return 0;
    if (v >= pac_begin()) return n + 1;
    return 1 + (v - 3) / 2;
}

StripEdges strip_edges(const FamilyInstance& inst, int gadget_index) {
    if (gadget_index < 0 || gadget_index >= inst.n)
        throw std::out_of_range("gadget index");
    const auto& w = inst.wiring;
    StripEdges se;
    auto lp = w.left_port_tracks();
    auto rp = w.right_port_tracks_by_slot();
    for (int s = 0; s < 2; ++s) {
        se.left_port[s] = inst.cut_edges[gadget_index][lp[s]];
        se.right_port[s] = inst.cut_edges[gadget_index + 1][rp[s]];
    }
    se.pass = inst.cut_edges[gadget_index][w.pass_left];
    if (se.pass != inst.cut_edges[gadget_index + 1][w.pass_right])
        throw std::logic_error("pass-through bookkeeping out of sync");
    se.internal = Edge(inst.gadget_vertices[gadget_index][0],
                       inst.gadget_vertices[gadget_index][1]);
    return se;
}

namespace {

FamilyInstance assemble_base(int n, const GadgetWiring& w, int lambda_track) {
    if (n < 1) throw std::invalid_argument("family index n must be >= 1");
    if (lambda_track < 0 || lambda_track > 2) throw std::invalid_argument("lambda track");
    if (w.pass_left == w.pass_right || w.pass_left < 0 || w.pass_left > 2 ||
        w.pass_right < 0 || w.pass_right > 2)
        throw std::invalid_argument("invalid gadget wiring");

    FamilyInstance inst;
    inst.n = n;
    inst.wiring = w;
    inst.lambda_track = lambda_track;
    inst.graph = CubicGraph(2 * n + 6);
    inst.lambda = 0;

    auto rem = tracks_without(lambda_track);
    inst.cap_on_track[lambda_track] = 0;
    inst.cap_on_track[rem[0]] = 1;
    inst.cap_on_track[rem[1]] = 2;
    for (int t = 0; t < 3; ++t) inst.pac_on_track[t] = 2 * n + 3 + t;

    inst.gadget_vertices.resize(n);
    for (int i = 0; i < n; ++i)
        inst.gadget_vertices[i] = {3 + 2 * i, 4 + 2 * i};

    CubicGraph& g = inst.graph;
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2 * n + 3, 2 * n + 4);
    g.add_edge(2 * n + 3, 2 * n + 5);
    g.add_edge(2 * n + 4, 2 * n + 5);
    for (int i = 0; i < n; ++i)
        g.add_edge(inst.gadget_vertices[i][0], inst.gadget_vertices[i][1]);

    auto lp = w.left_port_tracks();
    auto rp = w.right_port_tracks_by_slot();
    // component index: 0 = cap, 1..n = gadgets, n+1 = pac
    auto on_left_track = [&](int comp, int t) -> VertexId {
        if (comp == n + 1) return inst.pac_on_track[t];
        for (int s = 0; s < 2; ++s)
            if (lp[s] == t) return inst.gadget_vertices[comp - 1][s];
        throw std::logic_error("no left port on track");
    };
    auto on_right_track = [&](int comp, int t) -> VertexId {
        if (comp == 0) return inst.cap_on_track[t];
        for (int s = 0; s < 2; ++s)
            if (rp[s] == t) return inst.gadget_vertices[comp - 1][s];
        throw std::logic_error("no right port on track");
    };

    inst.cut_edges.assign(n + 1, {Edge{}, Edge{}, Edge{}});
    for (int j = 0; j <= n; ++j) {
        for (int t = 0; t < 3; ++t) {
            if (t == w.pass_right && j >= 1) {
                // the pass-through spanning gadget j, emitted at cut j-1
                inst.cut_edges[j][t] = inst.cut_edges[j - 1][w.pass_left];
                continue;
            }
            VertexId src = on_right_track(j, t);
            VertexId dst;
            if (t == w.pass_left && j < n) {
                dst = on_left_track(j + 2, w.pass_right);
            } else if (t == w.pass_left) {  // j == n: plain edge into the pac
                dst = inst.pac_on_track[t];
            } else {
                dst = on_left_track(j + 1, t);
            }
            g.add_edge(src, dst);
            inst.cut_edges[j][t] = Edge(src, dst);
        }
    }
    inst.green = inst.cut_edges[0][lambda_track];
    return inst;
}

std::vector<std::array<VertexId, 3>> rotation_from_rule(const FamilyInstance& inst,
                                                        const RotationRule& rule) {
    const int n = inst.n;
    std::vector<std::array<VertexId, 3>> rot(inst.graph.n_vertices());
    auto other_end = [](const Edge& e, VertexId v) { return e.u == v ? e.v : e.u; };
    for (int t = 0; t < 3; ++t) {
        VertexId v = inst.cap_on_track[t];
        std::array<VertexId, 2> tri{};
        int k = 0;
        for (VertexId c : {0, 1, 2})
            if (c != v) tri[k++] = c;
        VertexId right = other_end(inst.cut_edges[0][t], v);
        rot[v] = rule.cap[t] ? std::array<VertexId, 3>{tri[1], tri[0], right}
                             : std::array<VertexId, 3>{tri[0], tri[1], right};
    }
    auto lp = inst.wiring.left_port_tracks();
    auto rp = inst.wiring.right_port_tracks_by_slot();
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < 2; ++s) {
            VertexId v = inst.gadget_vertices[i][s];
            VertexId partner = inst.gadget_vertices[i][1 - s];
            VertexId lnb = other_end(inst.cut_edges[i][lp[s]], v);
            VertexId rnb = other_end(inst.cut_edges[i + 1][rp[s]], v);
            bool bit = rule.slot[i % rule.period][s];
            rot[v] = bit ? std::array<VertexId, 3>{lnb, partner, rnb}
                         : std::array<VertexId, 3>{lnb, rnb, partner};
        }
    }
    for (int t = 0; t < 3; ++t) {
        VertexId v = inst.pac_on_track[t];
        std::array<VertexId, 2> tri{};
        int k = 0;
        for (VertexId c : {2 * n + 3, 2 * n + 4, 2 * n + 5})
            if (c != v) tri[k++] = c;
        VertexId left = other_end(inst.cut_edges[n][t], v);
        rot[v] = rule.pac[t] ? std::array<VertexId, 3>{tri[1], tri[0], left}
                             : std::array<VertexId, 3>{tri[0], tri[1], left};
    }
    return rot;
}

// ---- cut-state transfer DP -------------------------------------------------
//
// A Hamiltonian cycle crosses every cut exactly twice, and its
// restriction to everything left of a cut is a single segment, so the
// state at a cut is just the unused track.

struct StripTransition {
    int mr;             // unused right track
    bool internal_used;
};

bool mini_paths_ok(const std::vector<std::pair<int, int>>& edges, int n_nodes,
                   auto&& is_stub) {
    std::vector<std::vector<int>> adj(n_nodes);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(n_nodes, 0);
    for (int v = 0; v < n_nodes; ++v) {
        if (seen[v] || adj[v].empty()) continue;
        // walk the component, collecting degree-1 terminals
        std::vector<int> comp;
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        int edge_count = 0;
        std::vector<int> terminals;
        for (int x : comp) {
            edge_count += static_cast<int>(adj[x].size());
            if (adj[x].size() == 1) terminals.push_back(x);
            if (adj[x].size() > 2) return false;
        }
        edge_count /= 2;
        if (edge_count != static_cast<int>(comp.size()) - 1) return false;  // cycle
        if (terminals.size() != 2) return false;
        if (!is_stub(terminals[0]) || !is_stub(terminals[1])) return false;
        // one terminal on each boundary
        if ((terminals[0] < 3) == (terminals[1] < 3)) return false;
    }
    return true;
}

// table[ml] = feasible strip traversals given the unused left track
std::array<std::vector<StripTransition>, 3> strip_transitions(const GadgetWiring& w) {
    std::array<std::vector<StripTransition>, 3> table;
    auto lp = w.left_port_tracks();
    auto rp = w.right_port_tracks_by_slot();
    for (int ml = 0; ml < 3; ++ml) {
        const bool pass_used = (w.pass_left != ml);
        const std::array<bool, 2> lp_used{lp[0] != ml, lp[1] != ml};
        for (int bits = 0; bits < 8; ++bits) {
            const std::array<bool, 2> rp_used{(bits & 1) != 0, (bits & 2) != 0};
            const bool internal = (bits & 4) != 0;
            if (lp_used[0] + rp_used[0] + internal != 2) continue;
            if (lp_used[1] + rp_used[1] + internal != 2) continue;
            std::array<bool, 3> rused{};
            if (pass_used) rused[w.pass_right] = true;
            for (int s = 0; s < 2; ++s)
                if (rp_used[s]) rused[rp[s]] = true;
            if (rused[0] + rused[1] + rused[2] != 2) continue;
            int mr = !rused[0] ? 0 : (!rused[1] ? 1 : 2);
            // mini graph: 0..2 left stubs, 3..5 right stubs, 6..7 slots
            std::vector<std::pair<int, int>> edges;
            if (pass_used) edges.push_back({w.pass_left, 3 + w.pass_right});
            for (int s = 0; s < 2; ++s) {
                if (lp_used[s]) edges.push_back({lp[s], 6 + s});
                if (rp_used[s]) edges.push_back({3 + rp[s], 6 + s});
            }
            if (internal) edges.push_back({6, 7});
            if (!mini_paths_ok(edges, 8, [](int x) { return x < 6; })) continue;
            table[ml].push_back({mr, internal});
        }
    }
    return table;
}

// The cap admits exactly one traversal per state: the vertex on the
// unused track sits in the middle of the path. Verified by enumeration.
bool cap_state_feasible(int ml) {
    int solutions = 0;
    for (int mask = 0; mask < 8; ++mask) {
        bool ok = true;
        for (int t = 0; t < 3 && ok; ++t) {
            int d = (t != ml) ? 1 : 0;
            for (int k = 0; k < 3; ++k)
                if (k != t && (mask & (1 << k))) ++d;
            ok = (d == 2);
        }
        if (ok) ++solutions;
    }
    if (solutions != 1) throw std::logic_error("cap traversal not unique");
    return true;
}

}  // namespace

std::vector<HamCycle> family_cycles(const FamilyInstance& inst) {
    const int n = inst.n;
    auto table = strip_transitions(inst.wiring);
    for (int s = 0; s < 3; ++s) cap_state_feasible(s);

    std::vector<std::array<long long, 3>> suffix(n + 1);
    suffix[n] = {1, 1, 1};  // pac mirrors the cap: one completion per state
    for (int j = n - 1; j >= 0; --j)
        for (int s = 0; s < 3; ++s) {
            long long total = 0;
            for (const auto& tr : table[s]) total += suffix[j + 1][tr.mr];
            suffix[j][s] = total;
        }

    auto reconstruct = [&](const std::vector<int>& states,
                           const std::vector<char>& internals) {
        std::vector<Edge> used;
        auto add_triangle_part = [&](const std::array<VertexId, 3>& on_track, int ml) {
            // triangle edges indexed by the excluded track; used for k != ml
            for (int k = 0; k < 3; ++k) {
                if (k == ml) continue;
                auto pair = tracks_without(k);
                used.emplace_back(on_track[pair[0]], on_track[pair[1]]);
            }
        };
        add_triangle_part(inst.cap_on_track, states[0]);
        add_triangle_part(inst.pac_on_track, states[n]);
        for (int j = 0; j <= n; ++j)
            for (int t = 0; t < 3; ++t)
                if (t != states[j]) used.push_back(inst.cut_edges[j][t]);
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        for (int i = 0; i < n; ++i)
            if (internals[i])
                used.emplace_back(inst.gadget_vertices[i][0], inst.gadget_vertices[i][1]);
        const int v_count = inst.graph.n_vertices();
        std::vector<std::array<VertexId, 2>> nb(v_count, {-1, -1});
        for (const Edge& e : used) {
            auto attach = [&](VertexId a, VertexId b) {
                if (nb[a][0] < 0)
                    nb[a][0] = b;
                else if (nb[a][1] < 0)
                    nb[a][1] = b;
                else
                    throw std::logic_error("cycle reconstruction: degree > 2");
            };
            attach(e.u, e.v);
            attach(e.v, e.u);
        }
        std::vector<VertexId> seq{0};
        VertexId prev = -1, cur = 0;
        for (int step = 1; step < v_count; ++step) {
            VertexId next = (nb[cur][0] != prev) ? nb[cur][0] : nb[cur][1];
            if (next < 0) throw std::logic_error("cycle reconstruction: dead end");
            seq.push_back(next);
            prev = cur;
            cur = next;
        }
        return canonical_cycle(seq);
    };

    std::vector<HamCycle> cycles;
    std::vector<int> states(n + 1);
    std::vector<char> internals(n, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == n) {
            cycles.push_back(reconstruct(states, internals));
            return;
        }
        for (const auto& tr : table[states[j]]) {
            if (suffix[j + 1][tr.mr] == 0) continue;
            states[j + 1] = tr.mr;
            internals[j] = tr.internal_used ? 1 : 0;
            rec(j + 1);
        }
    };
    for (int s0 = 0; s0 < 3; ++s0) {
        if (suffix[0][s0] == 0) continue;
        states[0] = s0;
        rec(0);
    }
    std::sort(cycles.begin(), cycles.end());
    cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
    for (const HamCycle& c : cycles) {
        std::string why;
        if (!validate_ham_cycle(inst.graph, c, &why))
            throw std::logic_error("reconstructed cycle invalid: " + why);
    }
    return cycles;
}

bool transfer_is_permutation(const GadgetWiring& w) {
    auto table = strip_transitions(w);
    std::array<std::array<int, 3>, 3> m{};
    for (int ml = 0; ml < 3; ++ml)
        for (const auto& tr : table[ml]) ++m[ml][tr.mr];
    for (int i = 0; i < 3; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < 3; ++j) {
            if (m[i][j] > 1 || m[j][i] > 1) return false;
            row += m[i][j];
            col += m[j][i];
        }
        if (row != 1 || col != 1) return false;
    }
    return true;
}

FamilyInstance build_raw(int n, const GadgetWiring& w, const RotationRule& rot,
                         int lambda_track) {
    FamilyInstance inst = assemble_base(n, w, lambda_track);
    inst.rotation_rule = rot;
    inst.graph.set_rotation(rotation_from_rule(inst, rot));
    return inst;
}

std::pair<HamCycle, HamCycle> select_from_cycles(const std::vector<HamCycle>& cycles,
                                                 Edge green, Edge red) {
    std::vector<HamCycle> with_green;
    for (const HamCycle& c : cycles)
        if (c.contains(green)) with_green.push_back(c);
    if (with_green.size() != 2)
        throw std::runtime_error("distinguished edge selection failed: green edge in " +
                                 std::to_string(with_green.size()) + " cycles");
    const bool first_red = with_green[0].contains(red);
    const bool second_red = with_green[1].contains(red);
    if (first_red == second_red)
        throw std::runtime_error(
            "distinguished edge selection failed: red edge does not disambiguate");
    if (first_red) return {with_green[0], with_green[1]};
    return {with_green[1], with_green[0]};
}

std::pair<HamCycle, HamCycle> select_distinguished_cycles(const CubicGraph& g,
                                                          VertexId lambda, Edge green,
                                                          Edge red) {
    if (green.u != lambda && green.v != lambda)
        throw std::invalid_argument("green edge must touch lambda");
    CycleSet cycles = enumerate_ham_cycles(g);
    if (cycles.size() != 3)
        throw std::runtime_error("expected exactly 3 Hamiltonian cycles, found " +
                                 std::to_string(cycles.size()));
    return select_from_cycles(cycles.cycles, green, red);
}

FamilyInstance build(int n, const WiringSnapshot& snap) {
    FamilyInstance inst = build_raw(n, snap.wiring, snap.rotation, snap.lambda_track);
    if (snap.red.crossing) {
        inst.red = inst.cut_edges[0][snap.red.track_a];
    } else {
        inst.red = Edge(inst.cap_on_track[snap.red.track_a],
                        inst.cap_on_track[snap.red.track_b]);
    }
    auto cycles = family_cycles(inst);
    auto [c0, c1] = select_from_cycles(cycles, inst.green, inst.red);
    inst.c0 = c0;
    inst.c1 = c1;
    return inst;
}

std::optional<RotationRule> find_rotation_rule(const GadgetWiring& w, int max_n_check) {
    std::vector<FamilyInstance> bases;
    for (int n = 1; n <= max_n_check; ++n) bases.push_back(assemble_base(n, w, 1));
    for (int period = 1; period <= 2; ++period) {
        const int slot_states = period == 1 ? 4 : 16;
        for (int capm = 0; capm < 8; ++capm)
            for (int pacm = 0; pacm < 8; ++pacm)
                for (int slotm = 0; slotm < slot_states; ++slotm) {
                    RotationRule rule;
                    rule.period = period;
                    for (int t = 0; t < 3; ++t) {
                        rule.cap[t] = (capm >> t) & 1;
                        rule.pac[t] = (pacm >> t) & 1;
                    }
                    rule.slot[0] = {(slotm & 1) != 0, (slotm & 2) != 0};
                    rule.slot[1] = rule.period == 2
                                       ? std::array<bool, 2>{(slotm & 4) != 0, (slotm & 8) != 0}
                                       : rule.slot[0];
                    bool all_planar = true;
                    for (auto& base : bases) {
                        CubicGraph g = base.graph;
                        g.set_rotation(rotation_from_rule(base, rule));
                        auto result = check_planarity(g);
                        if (!result.planar) {
                            all_planar = false;
                            break;
                        }
                    }
                    if (all_planar) return rule;
                }
    }
    return std::nullopt;
}

std::vector<GadgetWiring> search_gadget_wirings(int max_n_check) {
    if (max_n_check < 3) throw std::invalid_argument("max_n_check must be >= 3");
    std::vector<GadgetWiring> survivors;
    for (const GadgetWiring& w : all_raw_wirings()) {
        if (w.canonical() != w) continue;  // symmetry dedup
        bool ok = true;
        for (int n = 1; n <= max_n_check && ok; ++n) {
            FamilyInstance inst = assemble_base(n, w, 1);
            if (!validate_cubic(inst.graph).ok()) ok = false;
            if (ok && static_cast<int>(family_cycles(inst).size()) != 3) ok = false;
            if (ok && inst.graph.n_vertices() <= 30) {
                CycleSet oracle = enumerate_ham_cycles(inst.graph);
                if (oracle.size() != 3) ok = false;
                // the DP and the oracle must agree exactly
                if (ok && oracle.cycles != family_cycles(inst)) ok = false;
            }
            if (ok && !check_three_connected(inst.graph)) ok = false;
        }
        if (ok && !find_rotation_rule(w, std::min(max_n_check, 5))) ok = false;
        if (ok) survivors.push_back(w);
    }
    if (survivors.empty())
        throw std::runtime_error("no wiring satisfies the family invariants");
    return survivors;
}

// ---- snapshot io -----------------------------------------------------------

namespace {

nlohmann::json wiring_json(const GadgetWiring& w) {
    return {{"pass_left", w.pass_left}, {"pass_right", w.pass_right}, {"cross", w.cross}};
}

GadgetWiring wiring_from(const nlohmann::json& j) {
    return GadgetWiring{j.at("pass_left").get<int>(), j.at("pass_right").get<int>(),
                        j.at("cross").get<bool>()};
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string WiringSnapshot::to_json() const {
    nlohmann::json j;
    j["wiring"] = wiring_json(wiring);
    j["rotation"] = {{"period", rotation.period},
                     {"cap", rotation.cap},
                     {"slot", {rotation.slot[0], rotation.slot[1]}},
                     {"pac", rotation.pac}};
    j["lambda_track"] = lambda_track;
    j["red"] = {{"crossing", red.crossing}, {"track_a", red.track_a}, {"track_b", red.track_b}};
    j["letter_labels"] = letter_labels;
    j["number_labels"] = number_labels;
    j["state_labels"] = state_labels;
    auto surv = nlohmann::json::array();
    for (const GadgetWiring& w : survivors) surv.push_back(wiring_json(w));
    j["survivors"] = surv;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
    j["checksum"] = std::string(buf);
    return j.dump(2) + "\n";
}

std::uint64_t WiringSnapshot::compute_checksum() const {
    WiringSnapshot copy = *this;
    copy.checksum = 0;
    return fnv1a(copy.to_json());
}

WiringSnapshot WiringSnapshot::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WiringSnapshot s;
    s.wiring = wiring_from(j.at("wiring"));
    const auto& r = j.at("rotation");
    s.rotation.period = r.at("period").get<int>();
    for (int t = 0; t < 3; ++t) {
        s.rotation.cap[t] = r.at("cap").at(t).get<bool>();
        s.rotation.pac[t] = r.at("pac").at(t).get<bool>();
    }
    for (int p = 0; p < 2; ++p)
        for (int sl = 0; sl < 2; ++sl)
            s.rotation.slot[p][sl] = r.at("slot").at(p).at(sl).get<bool>();
    s.lambda_track = j.at("lambda_track").get<int>();
    s.red = {j.at("red").at("crossing").get<bool>(), j.at("red").at("track_a").get<int>(),
             j.at("red").at("track_b").get<int>()};
    s.letter_labels = j.at("letter_labels").get<std::map<std::string, std::string>>();
    s.number_labels = j.at("number_labels").get<std::map<std::string, int>>();
    s.state_labels = j.at("state_labels").get<std::map<std::string, std::string>>();
    for (const auto& wj : j.at("survivors")) s.survivors.push_back(wiring_from(wj));
    s.checksum = std::stoull(j.at("checksum").get<std::string>(), nullptr, 16);
    return s;
}

void WiringSnapshot::save(const std::string& path) const {
    WiringSnapshot copy = *this;
    copy.checksum = copy.compute_checksum();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot: " + path);
    out << copy.to_json();
}

WiringSnapshot WiringSnapshot::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(
            "wiring snapshot missing: " + path +
            " (run the `search` command once to generate it)");
    std::stringstream buf;
    buf << in.rdbuf();
    WiringSnapshot s = from_json(buf.str());
    if (s.checksum != s.compute_checksum())
        throw std::runtime_error("wiring snapshot checksum mismatch: " + path);
    return s;
}

}  // namespace lollipop
