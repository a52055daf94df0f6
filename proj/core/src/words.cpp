#include "lollipop/words.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "lollipop/ham_oracle.hpp"
#include "lollipop/lollipop_step.hpp"

namespace lollipop {

const char* const kSigmaLetters = "PQUWRXS";

// ---- fixed automaton -------------------------------------------------------

int JAutomaton::letter_index(char c) {
    switch (c) {
        case 'P': return 0;
        case 'Q': return 1;
        case 'U': return 2;
        case 'W': return 3;
        case 'R': return 4;
        case 'X': return 5;
        case 'S': return 6;
        default: return -1;
    }
}

JAutomaton::JAutomaton() {
    for (auto& row : delta_) row.fill(-1);
    delta_[AA][letter_index('P')] = QS;
    delta_[AA][letter_index('W')] = RS;
    delta_[QS][letter_index('Q')] = UV;
    delta_[UV][letter_index('U')] = AA;
    delta_[RS][letter_index('R')] = XS;
    delta_[RS][letter_index('S')] = QS;
    delta_[XS][letter_index('X')] = AA;
}

int JAutomaton::step(int state, char letter) const {
    int li = letter_index(letter);
    if (state < 0 || state >= kStates || li < 0) return -1;
    return delta_[state][li];
}

bool JAutomaton::accepts(const std::string& sigma) const {
    int s = AA;
    for (char c : sigma) {
        s = step(s, c);
        if (s < 0) return false;
    }
    return true;  // every state accepts
}

std::vector<std::string> JAutomaton::enumerate(int n) const {
    std::vector<std::string> out;
    std::string word;
    std::function<void(int, int)> rec = [&](int state, int left) {
        if (left == 0) {
            out.push_back(word);
            return;
        }
        for (int li = 0; li < 7; ++li) {
            int t = delta_[state][li];
            if (t < 0) continue;
            word.push_back(kSigmaLetters[li]);
            rec(t, left - 1);
            word.pop_back();
        }
    };
    rec(AA, n);
    return out;
}

long long JAutomaton::count_words_ending_in(int n, const std::string& letters) const {
    if (n <= 0) return 0;
    std::array<long long, kStates> cur{};
    cur[AA] = 1;
    for (int k = 0; k < n - 1; ++k) {
        std::array<long long, kStates> next{};
        for (int s = 0; s < kStates; ++s) {
            if (!cur[s]) continue;
            for (int li = 0; li < 7; ++li)
                if (delta_[s][li] >= 0) next[delta_[s][li]] += cur[s];
        }
        cur = next;
    }
    long long total = 0;
    for (int s = 0; s < kStates; ++s) {
        if (!cur[s]) continue;
        for (int li = 0; li < 7; ++li)
            if (delta_[s][li] >= 0 &&
                letters.find(kSigmaLetters[li]) != std::string::npos)
                total += cur[s];
    }
    return total;
}

std::string JAutomaton::to_dot() const {
    static const char* names[kStates] = {"AA", "Q", "UV", "R", "X"};
    std::ostringstream out;
    out << "digraph J {\n  rankdir=LR;\n  start [shape=point];\n  start -> AA;\n";
    for (int s = 0; s < kStates; ++s)
        out << "  " << names[s] << " [shape=doublecircle];\n";
    for (int s = 0; s < kStates; ++s)
        for (int li = 0; li < 7; ++li)
            if (delta_[s][li] >= 0)
                out << "  " << names[s] << " -> " << names[delta_[s][li]] << " [label=\""
                    << kSigmaLetters[li] << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---- phi and the order -----------------------------------------------------

std::string phi(const std::string& s) {
    std::string out;
    const std::size_t n = s.size();
    std::size_t i = 0;
    auto reject = [&]() -> void {
        throw std::invalid_argument("phi: word not in J: " + s);
    };
    while (i < n) {
        std::size_t rem = n - i;
        if (s[i] == 'P') {
            if (rem >= 3 && s[i + 1] == 'Q' && s[i + 2] == 'U') {
                out += 'A';
                i += 3;
            } else if (rem == 1 || (rem == 2 && s[i + 1] == 'Q')) {
                out += 'A';
                i = n;
            } else {
                reject();
            }
        } else if (s[i] == 'W') {
            if (rem == 1) {
                out += 'C';
                i = n;
            } else if (s[i + 1] == 'R') {
                if (rem >= 3 && s[i + 2] == 'X') {
                    out += 'T';
                    i += 3;
                } else if (rem == 2) {
                    out += 'T';
                    i = n;
                } else {
                    reject();
                }
            } else if (s[i + 1] == 'S') {
                if (rem >= 4 && s[i + 2] == 'Q' && s[i + 3] == 'U') {
                    out += 'G';
                    i += 4;
                } else if (rem == 2 || (rem == 3 && s[i + 2] == 'Q')) {
                    out += 'G';
                    i = n;
                } else {
                    reject();
                }
            } else {
                reject();
            }
        } else {
            reject();
        }
    }
    return out;
}

namespace {

bool gamma_symbol_less(char x, char y) {
    auto rank = [](char c) { return c == 'A' ? 0 : c == 'T' ? 1 : c == 'G' ? 2 : -1; };
    if (x == 'C' || y == 'C') {
        if (x == 'A') return true;
        if (y == 'A') return false;
        throw std::logic_error("gamma order: comparing T or G with C");
    }
    return rank(x) < rank(y);
}

}  // namespace

int gamma_compare(const std::string& a, const std::string& b) {
    int sign = 1;
    for (std::size_t i = 0;; ++i) {
        const bool ea = i >= a.size(), eb = i >= b.size();
        if (ea && eb) return 0;
        if (ea || eb)
            throw std::logic_error("gamma order undefined: one word is a proper prefix");
        if (a[i] != b[i]) return sign * (gamma_symbol_less(a[i], b[i]) ? -1 : 1);
        if (a[i] == 'T') sign = -sign;
    }
}

bool gamma_less(const std::string& a, const std::string& b) {
    return gamma_compare(a, b) < 0;
}

std::vector<std::string> enumerate_sigma_language(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    return JAutomaton().enumerate(n);
}

std::vector<std::string> enumerate_language(int n) {
    std::vector<std::string> gammas;
    std::set<std::string> seen;
    for (const std::string& w : enumerate_sigma_language(n)) {
        std::string g = phi(w);
        if (!seen.insert(g).second)
            throw std::logic_error("phi not injective on J_" + std::to_string(n));
        gammas.push_back(std::move(g));
    }
    std::sort(gammas.begin(), gammas.end(), gamma_less);
    return gammas;
}

std::vector<long long> recurrence_table(int k_max) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    static const long long base[4] = {1, 2, 3, 3};
    std::vector<long long> a(k_max + 1);
    for (int k = 0; k <= k_max; ++k)
        a[k] = k < 4 ? base[k] : 2 * a[k - 3] + a[k - 4];
    return a;
}

std::vector<long long> gf_series(int k_max) {
    // A(z) (1 - 2z^3 - z^4) = 1 + 2z + 3z^2 + z^3
    static const long long num[4] = {1, 2, 3, 1};
    std::vector<long long> b(k_max + 1, 0);
    for (int k = 0; k <= k_max; ++k) {
        long long v = k < 4 ? num[k] : 0;
        if (k >= 3) v += 2 * b[k - 3];
        if (k >= 4) v += b[k - 4];
        b[k] = v;
    }
    return b;
}

GrowthConstant growth_constant() {
    using C = std::complex<double>;
    auto p = [](C z) { return ((z + 2.0) * z * z * z) - 1.0; };
    auto dp = [](C z) { return (4.0 * z + 6.0) * z * z; };
    GrowthConstant result;
    std::array<C, 4> w;
    C seed(0.4, 0.9);
    w[0] = seed;
    for (int k = 1; k < 4; ++k) w[k] = w[k - 1] * seed;
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < 4; ++k) {
            C den(1.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != k) den *= (w[k] - w[j]);
            C delta = p(w[k]) / den;
            w[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-15) break;
    }
    for (int k = 0; k < 4; ++k)
        for (int polish = 0; polish < 3; ++polish) w[k] -= p(w[k]) / dp(w[k]);
    result.roots = w;
    double least = std::abs(w[0]);
    for (const C& z : w) {
        result.max_residual = std::max(result.max_residual, std::abs(p(z)));
        least = std::min(least, std::abs(z));
    }
    if (result.max_residual > 1e-12)
        throw std::runtime_error("root finder residual too large");
    result.c = 1.0 / least;
    result.sqrt_c = std::sqrt(result.c);
    return result;
}

// ---- gadget patterns -------------------------------------------------------

PatternKey PatternKey::decode(int code) {
    PatternKey k;
    k.bits = code & 63;
    k.end_slot = ((code >> 6) & 3) - 1;
    k.right_ctx = ((code >> 8) & 3) - 1;
    k.left_ctx = ((code >> 10) & 3) - 1;
    return k;
}

namespace {

struct PosIndex {
    std::vector<int> pos;
    explicit PosIndex(const HamPath& p, int n_vertices) : pos(n_vertices, -1) {
        for (int i = 0; i < static_cast<int>(p.order.size()); ++i) pos[p.order[i]] = i;
    }
    bool uses(const Edge& e) const {
        int d = pos[e.u] - pos[e.v];
        return d == 1 || d == -1;
    }
    int edge_position(const Edge& e) const { return std::min(pos[e.u], pos[e.v]); }
};

PatternKey classify_with_index(const FamilyInstance& inst, const PosIndex& idx,
                               VertexId end_vertex, int gadget_index) {
    StripEdges se = strip_edges(inst, gadget_index);
    PatternKey k;
    k.bits = (idx.uses(se.left_port[0]) ? 1 : 0) | (idx.uses(se.left_port[1]) ? 2 : 0) |
             (idx.uses(se.right_port[0]) ? 4 : 0) | (idx.uses(se.right_port[1]) ? 8 : 0) |
             (idx.uses(se.pass) ? 16 : 0) | (idx.uses(se.internal) ? 32 : 0);
    for (int s = 0; s < 2; ++s)
        if (inst.gadget_vertices[gadget_index][s] == end_vertex) k.end_slot = s;
    const auto& left = inst.cut_edges[gadget_index];
    int first_pos = static_cast<int>(idx.pos.size()) + 1;
    for (int t = 0; t < 3; ++t) {
        if (!idx.uses(left[t])) continue;
        int at = idx.edge_position(left[t]);
        if (at < first_pos) {
            first_pos = at;
            k.left_ctx = t;
        }
    }
    if (k.end_slot < 0) {
        const auto& right = inst.cut_edges[gadget_index + 1];
        int used = 0, last_pos = -1, last_track = -1;
        for (int t = 0; t < 3; ++t) {
            if (!idx.uses(right[t])) continue;
            ++used;
            int at = idx.edge_position(right[t]);
            if (at > last_pos) {
                last_pos = at;
                last_track = t;
            }
        }
        if (used == 3) k.right_ctx = last_track;
    }
    return k;
}

}  // namespace

PatternKey classify_gadget_key(const FamilyInstance& inst, const HamPath& p,
                               int gadget_index) {
    PosIndex idx(p, inst.graph.n_vertices());
    return classify_with_index(inst, idx, p.order.back(), gadget_index);
}

int cut_state_key(const FamilyInstance& inst, const HamPath& p, int cut_index) {
    PosIndex idx(p, inst.graph.n_vertices());
    const auto& cut = inst.cut_edges[cut_index];
    int bits = 0, first_pos = inst.graph.n_vertices() + 1, first_track = -1;
    for (int t = 0; t < 3; ++t) {
        if (!idx.uses(cut[t])) continue;
        bits |= 1 << t;
        int at = idx.edge_position(cut[t]);
        if (at < first_pos) {
            first_pos = at;
            first_track = t;
        }
    }
    if (first_track < 0) throw std::logic_error("cut not crossed by the path");
    return bits | (first_track << 3);
}

// ---- local enumeration -----------------------------------------------------

namespace {

// A strand is one maximal piece of the path inside the strip. Terminals
// are boundary stubs (side 0 = left cut, 1 = right cut, carrying the
// track) or the in-gadget path end (side 2).
struct StrandEnd {
    int side;
    int track;
};
struct Strand {
    StrandEnd a, b;
};

// Decomposes a strip edge subset into strands. Returns false when the
// subset is not a disjoint union of simple paths with the right
// terminals (interior slots must have degree 2, the end slot degree 1).
bool strip_strands(const GadgetWiring& w, int bits, int end_slot,
                   std::vector<Strand>& strands) {
    auto lp = w.left_port_tracks();
    auto rp = w.right_port_tracks_by_slot();
    // nodes 0..2 left stubs by track, 3..5 right stubs, 6..7 slots
    std::vector<std::pair<int, int>> edges;
    if (bits & 1) edges.push_back({lp[0], 6});
    if (bits & 2) edges.push_back({lp[1], 7});
    if (bits & 4) edges.push_back({3 + rp[0], 6});
    if (bits & 8) edges.push_back({3 + rp[1], 7});
    if (bits & 16) edges.push_back({w.pass_left, 3 + w.pass_right});
    if (bits & 32) edges.push_back({6, 7});
    std::array<std::vector<int>, 8> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int s = 0; s < 2; ++s) {
        const int want = (s == end_slot) ? 1 : 2;
        if (static_cast<int>(adj[6 + s].size()) != want) return false;
    }
    strands.clear();
    std::array<char, 8> seen{};
    for (int v = 0; v < 8; ++v) {
        if (seen[v] || adj[v].empty()) continue;
        std::vector<int> comp, stack{v};
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
        if (edge_count / 2 != static_cast<int>(comp.size()) - 1) return false;  // cycle
        if (terminals.size() != 2) return false;
        auto to_end = [&](int node) -> StrandEnd {
            if (node < 3) return {0, node};
            if (node < 6) return {1, node - 3};
            if (node == 6 + end_slot) return {2, -1};
            return {-1, -1};
        };
        StrandEnd ea = to_end(terminals[0]), eb = to_end(terminals[1]);
        if (ea.side < 0 || eb.side < 0) return false;  // interior slot as terminal
        strands.push_back({ea, eb});
    }
    return true;
}

// Simulates every order in which a path from the far left can traverse
// the strands: crossings at stubs must alternate consistently with the
// side the path is on. Records the feasible (first-left-crossing,
// last-right-crossing) context pairs.
void feasible_orders(const std::vector<Strand>& strands, bool ends_inside,
                     std::set<std::pair<int, int>>& contexts) {
    const int m = static_cast<int>(strands.size());
    std::vector<char> done(m, 0);
    // state: current side (0 left, 1 right), first left track, last right track
    std::function<void(int, int, int, int)> rec = [&](int side, int used, int first_l,
                                                      int last_r) {
        if (used == m) {
            if (ends_inside) return;  // the end strand must have finished the walk
            if (side == 1) contexts.insert({first_l, last_r});
            return;
        }
        for (int i = 0; i < m; ++i) {
            if (done[i]) continue;
            for (int dir = 0; dir < 2; ++dir) {
                const StrandEnd& from = dir == 0 ? strands[i].a : strands[i].b;
                const StrandEnd& to = dir == 0 ? strands[i].b : strands[i].a;
                if (from.side != side) continue;
                if (to.side == 2 && used != m - 1) continue;  // end strand is last
                int fl = first_l, lr = last_r;
                if (from.side == 0 && fl < 0) fl = from.track;
                if (from.side == 1) lr = from.track;
                if (to.side == 1) lr = to.track;
                if (to.side == 2) {
                    contexts.insert({fl, lr});
                    continue;
                }
                done[i] = 1;
                rec(to.side, used + 1, fl, lr);
                done[i] = 0;
            }
        }
    };
    rec(0, 0, -1, -1);
}

}  // namespace

LocalClassCount enumerate_local_classes(const GadgetWiring& w) {
    LocalClassCount out;
    auto lp_used = [&](int bits, int s) { return (bits >> s) & 1; };
    auto rp_used = [&](int bits, int s) { return (bits >> (2 + s)) & 1; };
    std::vector<Strand> strands;
    for (int bits = 0; bits < 64; ++bits) {
        const int pass = (bits >> 4) & 1;
        const int left_cnt = lp_used(bits, 0) + lp_used(bits, 1) + pass;
        const int right_cnt = rp_used(bits, 0) + rp_used(bits, 1) + pass;
        // letter: both slots interior, odd crossings on both cuts
        if (left_cnt % 2 == 1 && right_cnt % 2 == 1 &&
            strip_strands(w, bits, -1, strands)) {
            std::set<std::pair<int, int>> contexts;
            feasible_orders(strands, false, contexts);
            for (auto [lctx, rctx] : contexts) {
                PatternKey key{bits, -1, lctx, right_cnt == 3 ? rctx : -1};
                if (std::find(out.letters.begin(), out.letters.end(), key) ==
                    out.letters.end()) {
                    out.letters.push_back(key);
                    ++out.letter_full_classes;
                }
            }
            if (!contexts.empty()) ++out.letter_bits_classes;
        }
        // number: one slot is the path end, even crossings on the right.
        // Zero right crossings would strand the vertices right of the
        // gadget, so exactly two.
        for (int end = 0; end < 2; ++end) {
            if (left_cnt % 2 != 1 || right_cnt != 2) continue;
            if (!strip_strands(w, bits, end, strands)) continue;
            std::set<std::pair<int, int>> contexts;
            feasible_orders(strands, true, contexts);
            for (auto [lctx, rctx] : contexts) {
                PatternKey key{bits, end, lctx, -1};
                if (std::find(out.numbers.begin(), out.numbers.end(), key) ==
                    out.numbers.end()) {
                    out.numbers.push_back(key);
                    ++out.number_classes;
                }
            }
        }
    }
    return out;
}

// ---- labels ----------------------------------------------------------------

char PatternLabels::letter_of(const PatternKey& full_key) const {
    auto it = letter_full.find(full_key.encode());
    if (it == letter_full.end())
        throw std::runtime_error("unclassifiable traversal (letter key " +
                                 full_key.str() + ")");
    return it->second[0];
}

std::string PatternLabels::full_name(const PatternKey& full_key) const {
    auto it = letter_full.find(full_key.encode());
    if (it == letter_full.end())
        throw std::runtime_error("unclassifiable traversal (letter key " +
                                 full_key.str() + ")");
    return it->second;
}

int PatternLabels::number_of(const PatternKey& key) const {
    auto it = number.find(key.collapsed().encode());
    if (it == number.end())
        throw std::runtime_error("unclassifiable traversal (number key " + key.str() +
                                 ")");
    return it->second;
}

void PatternLabels::to_snapshot(WiringSnapshot& snap) const {
    snap.letter_labels.clear();
    snap.number_labels.clear();
    snap.state_labels.clear();
    for (const auto& [k, v] : letter_full) snap.letter_labels[std::to_string(k)] = v;
    for (const auto& [k, v] : number) snap.number_labels[std::to_string(k)] = v;
    for (const auto& [k, v] : states) snap.state_labels[std::to_string(k)] = v;
}

PatternLabels PatternLabels::from_snapshot(const WiringSnapshot& snap) {
    PatternLabels labels;
    for (const auto& [k, v] : snap.letter_labels) labels.letter_full[std::stoi(k)] = v;
    for (const auto& [k, v] : snap.number_labels) labels.number[std::stoi(k)] = v;
    for (const auto& [k, v] : snap.state_labels) labels.states[std::stoi(k)] = v;
    return labels;
}

std::string PathWord::display() const {
    switch (kind) {
        case WordKind::cap_end: return "(cap)";
        case WordKind::number: return sigma + std::to_string(number);
        case WordKind::rightmost: return sigma + "$";
    }
    return {};
}

PathWord extract_word(const FamilyInstance& inst, const PatternLabels& labels,
                      const HamPath& p) {
    PathWord w;
    const int region = inst.region_of(p.order.back());
    if (region == 0) {
        w.kind = WordKind::cap_end;
        return w;
    }
    PosIndex idx(p, inst.graph.n_vertices());
    const VertexId end_vertex = p.order.back();
    const int end_gadget = (region == inst.n + 1) ? inst.n : region - 1;
    w.sigma.reserve(end_gadget);
    for (int gi = 0; gi < end_gadget; ++gi)
        w.sigma += labels.letter_of(classify_with_index(inst, idx, end_vertex, gi));
    if (region == inst.n + 1) {
        w.kind = WordKind::rightmost;
    } else {
        w.kind = WordKind::number;
        w.number = labels.number_of(classify_with_index(inst, idx, end_vertex, end_gadget));
    }
    return w;
}

std::vector<HamPath> lambda_green_paths(const FamilyInstance& inst) {
    const VertexId other = inst.green.u == inst.lambda ? inst.green.v : inst.green.u;
    return enumerate_ham_paths_from(inst.graph, inst.lambda, other);
}

RightmostEncoding encode_rightmost(const FamilyInstance& inst,
                                   const PatternLabels& labels, const HamPath& p) {
    if (!inst.in_pac(p.order.back()) || p.order.front() != inst.lambda)
        throw std::invalid_argument("encode_rightmost: not a rightmost path");
    RightmostEncoding out;
    out.word = extract_word(inst, labels, p);
    if (!JAutomaton().accepts(out.word.sigma))
        throw std::logic_error("rightmost word rejected by the automaton: " +
                               out.word.sigma);
    out.gamma = phi(out.word.sigma);
    return out;
}

// ---- calibration -----------------------------------------------------------

namespace {

struct RewriteRule {
    std::string letters;
    int target;  // number key, or -1 for $
    friend auto operator<=>(const RewriteRule&, const RewriteRule&) = default;
};

std::string prefix_of_repeated(const std::string& block, int n) {
    std::string out;
    while (static_cast<int>(out.size()) < n) out += block;
    out.resize(n);
    return out;
}

}  // namespace

Calibration calibrate(const GadgetWiring& wiring, const RotationRule& rot,
                      int lambda_track, int calibration_n) {
    const int n = calibration_n;
    FamilyInstance inst = build_raw(n, wiring, rot, lambda_track);
    auto fail = [&](const std::string& msg) -> void {
        throw CalibrationError("calibration (lambda_track=" +
                               std::to_string(lambda_track) + "): " + msg);
    };

    std::vector<HamPath> universe = lambda_green_paths(inst);
    if (universe.empty()) fail("no lambda-green Hamiltonian paths");
    std::vector<const HamPath*> rightmost;
    for (const HamPath& p : universe)
        if (inst.in_pac(p.order.back())) rightmost.push_back(&p);
    if (rightmost.empty()) fail("no rightmost paths");

    // empirical machine over cut states, transitions labeled by
    // collapsed pattern keys
    int s0 = -1;
    std::map<std::pair<int, int>, int> delta;           // (state, collapsed) -> state
    std::map<std::pair<int, int>, int> edge_label;      // (src, dst) -> collapsed
    std::map<int, std::set<int>> full_variants;         // collapsed -> full keys
    std::set<int> states;
    for (const HamPath* pp : rightmost) {
        const HamPath& p = *pp;
        PosIndex idx(p, inst.graph.n_vertices());
        int prev = cut_state_key(inst, p, 0);
        if (s0 < 0) s0 = prev;
        if (prev != s0) fail("initial cut state not unique");
        states.insert(prev);
        for (int gi = 0; gi < n; ++gi) {
            PatternKey full = classify_with_index(inst, idx, p.order.back(), gi);
            int ck = full.collapsed().encode();
            full_variants[ck].insert(full.encode());
            int next = cut_state_key(inst, p, gi + 1);
            states.insert(next);
            auto [it, inserted] = delta.try_emplace({prev, ck}, next);
            if (!inserted && it->second != next) fail("nondeterministic transition");
            auto [jt, jnew] = edge_label.try_emplace({prev, next}, ck);
            if (!jnew && jt->second != ck) fail("parallel transitions between states");
            prev = next;
        }
    }
    if (states.size() != 5)
        fail("expected 5 cut states, found " + std::to_string(states.size()));
    if (delta.size() != 7)
        fail("expected 7 transitions, found " + std::to_string(delta.size()));

    // anchor to the reference machine: out-degrees tell the two loops apart
    std::map<int, std::vector<std::pair<int, int>>> out;  // state -> (collapsed, dst)
    for (const auto& [key, dst] : delta) out[key.first].push_back({key.second, dst});
    if (out[s0].size() != 2) fail("initial state out-degree != 2");
    int q_state = -1, r_state = -1, p_key = -1, w_key = -1;
    for (auto [ck, dst] : out[s0]) {
        if (out[dst].size() == 1) {
            q_state = dst;
            p_key = ck;
        } else if (out[dst].size() == 2) {
            r_state = dst;
            w_key = ck;
        }
    }
    if (q_state < 0 || r_state < 0) fail("cannot tell the PQU loop from the WRX loop");
    int uv_state = out[q_state][0].second;
    int q_key = out[q_state][0].first;
    if (uv_state == s0 || out[uv_state].size() != 1) fail("Q target shape wrong");
    if (out[uv_state][0].second != s0) fail("U does not close the PQU loop");
    int u_key = out[uv_state][0].first;
    int x_state = -1, r_key = -1, s_key = -1;
    for (auto [ck, dst] : out[r_state]) {
        if (dst == q_state)
            s_key = ck;
        else {
            x_state = dst;
            r_key = ck;
        }
    }
    if (x_state < 0 || s_key < 0) fail("R/S split not found");
    if (out[x_state].size() != 1 || out[x_state][0].second != s0)
        fail("X does not close the WRX loop");
    int x_key = out[x_state][0].first;

    std::map<int, char> letter_of_ck{{p_key, 'P'}, {q_key, 'Q'}, {u_key, 'U'},
                                     {w_key, 'W'}, {r_key, 'R'}, {x_key, 'X'},
                                     {s_key, 'S'}};
    if (letter_of_ck.size() != 7) fail("letter keys collide");

    PatternLabels labels;
    labels.states = {{s0, "AA"}, {q_state, "Q"}, {uv_state, "UV"},
                     {r_state, "R"}, {x_state, "X"}};

    // variant counts: P,Q,S forced (one right-cut edge), U,W,X,R split
    for (const auto& [ck, ch] : letter_of_ck) {
        const auto& variants = full_variants[ck];
        if (ch == 'P' || ch == 'Q' || ch == 'S') {
            if (variants.size() != 1)
                fail(std::string("letter ") + ch + " should have one variant");
        } else if (variants.size() != 2) {
            fail(std::string("letter ") + ch + " should have two variants, has " +
                 std::to_string(variants.size()));
        }
    }

    // number classes and their right-moving rewrites
    std::map<int, std::set<RewriteRule>> rules;  // number key -> observed right rules
    std::map<int, int> occurrences;
    auto letters_between = [&](const HamPath& p2, int from_gadget, int to_gadget) {
        PosIndex idx2(p2, inst.graph.n_vertices());
        std::string out_letters;
        for (int gi = from_gadget; gi < to_gadget; ++gi) {
            PatternKey full = classify_with_index(inst, idx2, p2.order.back(), gi);
            auto it = letter_of_ck.find(full.collapsed().encode());
            if (it == letter_of_ck.end()) fail("rewrite letters unclassifiable");
            out_letters += it->second;
        }
        return out_letters;
    };
    for (const HamPath& p : universe) {
        const int region = inst.region_of(p.order.back());
        if (region == 0 || region == n + 1) continue;  // cap-ending or rightmost
        const int g = region - 1;
        PatternKey numkey = classify_gadget_key(inst, p, g);
        if (numkey.end_slot < 0) fail("number path without end slot");
        ++occurrences[numkey.collapsed().encode()];
        for (const auto& opt : lollipop_successors(inst.graph, p)) {
            const int r2 = inst.region_of(opt.path.order.back());
            if (r2 <= region) continue;  // left move or same gadget
            if (r2 == n + 1) {
                rules[numkey.collapsed().encode()].insert(
                    {letters_between(opt.path, g, n), -1});
            } else {
                const int g2 = r2 - 1;
                PatternKey target = classify_gadget_key(inst, opt.path, g2);
                rules[numkey.collapsed().encode()].insert(
                    {letters_between(opt.path, g, g2), target.collapsed().encode()});
            }
        }
    }

    // solve the number labels against the rewrite rule templates
    auto unique_key = [&](auto&& pred, const std::string& what) {
        int found = -1;
        for (const auto& [key, rs] : rules) {
            if (!pred(key, rs)) continue;
            if (found >= 0) fail("number label not unique: " + what);
            found = key;
        }
        if (found < 0) fail("number label not found: " + what);
        return found;
    };
    const int k7 = unique_key(
        [&](int key, const std::set<RewriteRule>& rs) {
            return rs.count({"UPQ", key}) > 0;
        },
        "7");
    const int k6 = unique_key(
        [&](int key, const std::set<RewriteRule>& rs) {
            return key != k7 && rs.count({"XPQ", k7}) > 0;
        },
        "6");
    const int k3 = unique_key(
        [&](int key, const std::set<RewriteRule>& rs) {
            for (const RewriteRule& r : rs) {
                if (r.letters != "Q" || r.target < 0) continue;
                auto it = rules.find(r.target);
                if (it != rules.end() && it->second.count({"UWS", key}) > 0) return true;
            }
            return false;
        },
        "3");
    int k4 = -1;
    for (const RewriteRule& r : rules[k3])
        if (r.letters == "Q" && r.target >= 0 && rules[r.target].count({"UWS", k3}))
            k4 = r.target;
    if (k4 < 0) fail("number 4 unresolved");
    const int k5 = unique_key(
        [&](int key, const std::set<RewriteRule>& rs) {
            return key != k4 && rs.count({"XWS", k3}) > 0;
        },
        "5");
    const int k1 = unique_key(
        [&](int, const std::set<RewriteRule>& rs) {
            return rs.count({"P", k3}) > 0 && rs.count({"WR", k5}) > 0;
        },
        "1");
    const int k2 = unique_key(
        [&](int, const std::set<RewriteRule>& rs) {
            return rs.count({"R", k6}) > 0 && rs.count({"SQ", k7}) > 0;
        },
        "2");

    labels.number = {{k1, 1}, {k2, 2}, {k3, 3}, {k4, 4}, {k5, 5}, {k6, 6}, {k7, 7}};
    if (labels.number.size() != 7) fail("number keys collide");

    // 8 = the one remaining local number class
    LocalClassCount local = enumerate_local_classes(wiring);
    if (local.number_classes != 8)
        fail("expected 8 local number classes, found " +
             std::to_string(local.number_classes));
    int k8 = -1;
    for (const PatternKey& key : local.numbers) {
        if (labels.number.count(key.encode())) continue;
        if (k8 >= 0) fail("more than one candidate for number 8");
        k8 = key.encode();
    }
    if (k8 < 0) fail("number 8 not found");
    labels.number[k8] = 8;

    // observed number classes must be among the local ones
    for (const auto& [key, count] : occurrences)
        if (!labels.number.count(key)) fail("observed number class outside local set");

    // letter names: primes pinned by the rewrite structure where that
    // determines them (W'' and U'' appear inside the UWS rewrite, W'
    // directly precedes pattern 2); the rest ordered by key
    std::map<int, std::string> full_names;
    auto name_simple = [&](int ck, const std::string& name) {
        full_names[*full_variants[ck].begin()] = name;
    };
    name_simple(p_key, "P");
    name_simple(q_key, "Q");
    name_simple(s_key, "S");

    // find U'' and W'' from one UWS rewrite occurrence
    int u2_full = -1, w2_full = -1;
    for (const HamPath& p : universe) {
        const int region = inst.region_of(p.order.back());
        if (region == 0 || region == n + 1) continue;
        const int g = region - 1;
        PatternKey numkey = classify_gadget_key(inst, p, g);
        if (labels.number.at(numkey.collapsed().encode()) != 4) continue;
        for (const auto& opt : lollipop_successors(inst.graph, p)) {
            const int r2 = inst.region_of(opt.path.order.back());
            if (r2 != region + 3) continue;  // the UWS3 rewrite lands 3 gadgets right
            PosIndex idx2(opt.path, inst.graph.n_vertices());
            PatternKey fu = classify_with_index(inst, idx2, opt.path.order.back(), g);
            PatternKey fw = classify_with_index(inst, idx2, opt.path.order.back(), g + 1);
            if (letter_of_ck.at(fu.collapsed().encode()) != 'U' ||
                letter_of_ck.at(fw.collapsed().encode()) != 'W')
                fail("UWS rewrite letters mismatched");
            u2_full = fu.encode();
            w2_full = fw.encode();
        }
    }
    if (u2_full < 0) fail("no UWS rewrite observed to pin U''");
    // W' = the W variant directly preceding pattern 2
    int w1_full = -1;
    for (const HamPath& p : universe) {
        const int region = inst.region_of(p.order.back());
        if (region <= 1 || region == n + 1) continue;
        const int g = region - 1;
        PatternKey numkey = classify_gadget_key(inst, p, g);
        if (labels.number.at(numkey.collapsed().encode()) != 2) continue;
        PosIndex idx2(p, inst.graph.n_vertices());
        PatternKey fw = classify_with_index(inst, idx2, p.order.back(), g - 1);
        if (letter_of_ck.at(fw.collapsed().encode()) != 'W')
            fail("pattern 2 not preceded by W");
        if (w1_full >= 0 && w1_full != fw.encode())
            fail("pattern 2 preceded by both W variants");
        w1_full = fw.encode();
    }
    if (w1_full < 0) fail("no pattern-2 occurrence to pin W'");
    if (w1_full == w2_full) fail("W' and W'' coincide");

    auto name_split = [&](int ck, char ch, int primed_full, int doubled_full) {
        const auto& variants = full_variants[ck];
        if (primed_full >= 0 || doubled_full >= 0) {
            for (int v : variants) {
                if (v == doubled_full)
                    full_names[v] = std::string(1, ch) + "''";
                else if (v == primed_full)
                    full_names[v] = std::string(1, ch) + "'";
                else if (primed_full < 0)
                    full_names[v] = std::string(1, ch) + "'";
                else if (doubled_full < 0)
                    full_names[v] = std::string(1, ch) + "''";
                else
                    fail("variant outside the primed pair");
            }
        } else {
            // not pinned by the text: lower key is the primed one
            full_names[*variants.begin()] = std::string(1, ch) + "'";
            full_names[*std::next(variants.begin())] = std::string(1, ch) + "''";
        }
    };
    name_split(w_key, 'W', w1_full, w2_full);
    name_split(u_key, 'U', -1, u2_full);
    name_split(x_key, 'X', -1, -1);
    name_split(r_key, 'R', -1, -1);
    labels.letter_full = full_names;

    // Y: the one locally realizable letter class never observed
    if (local.letter_full_classes != 12)
        fail("expected 12 local letter classes, found " +
             std::to_string(local.letter_full_classes));
    std::set<int> observed_full;
    for (const auto& [ck, fulls] : full_variants)
        for (int f : fulls) observed_full.insert(f);
    for (int f : observed_full)
        if (std::find_if(local.letters.begin(), local.letters.end(),
                         [&](const PatternKey& k) { return k.encode() == f; }) ==
            local.letters.end())
            fail("observed letter class outside the local enumeration");
    int y_key = -1;
    for (const PatternKey& key : local.letters) {
        if (observed_full.count(key.encode())) continue;
        if (y_key >= 0) fail("more than one unreachable letter class");
        y_key = key.encode();
    }
    if (y_key < 0) fail("no unreachable letter class (Y missing)");
    labels.letter_full[y_key] = "Y";

    // C_0: the green cycle whose walk opens with the PQU... word
    std::vector<HamCycle> cycles = family_cycles(inst);
    std::vector<HamCycle> with_green;
    for (const HamCycle& c : cycles)
        if (c.contains(inst.green)) with_green.push_back(c);
    if (with_green.size() != 2) fail("green edge not in exactly two cycles");

    Calibration result;
    result.labels = labels;
    const std::string pqu = prefix_of_repeated("PQU", n);
    const std::string wsqu = prefix_of_repeated("WSQU", n);
    auto first_rightmost_sigma = [&](const HamCycle& start) {
        std::string sigma;
        RunOptions opt;
        opt.on_rightmost = [&](const HamPath& p, std::uint64_t) {
            if (!sigma.empty()) return;
            sigma = extract_word(inst, labels, p).sigma;
        };
        FamilyInstance tmp = inst;
        tmp.c0 = start;
        run_thomason(tmp, opt);
        return sigma;
    };
    const std::string first0 = first_rightmost_sigma(with_green[0]);
    const std::string first1 = first_rightmost_sigma(with_green[1]);
    if ((first0 == pqu) == (first1 == pqu))
        fail("PQU start does not single out C_0 (got " + first0 + " / " + first1 + ")");
    result.c0 = (first0 == pqu) ? with_green[0] : with_green[1];
    result.c1 = (first0 == pqu) ? with_green[1] : with_green[0];
    if ((first0 == pqu ? first1 : first0) != wsqu)
        fail("walk from C_1 does not open with the WSQU word");

    // red: a cap-region edge of C_0 that C_1 avoids
    std::vector<RedEdgeDesc> candidates;
    for (int k = 0; k < 3; ++k) {
        std::array<int, 2> pair{};
        int idx2 = 0;
        for (int t = 0; t < 3; ++t)
            if (t != k) pair[idx2++] = t;
        Edge e(inst.cap_on_track[pair[0]], inst.cap_on_track[pair[1]]);
        if (result.c0.contains(e) && !result.c1.contains(e))
            candidates.push_back({false, pair[0], pair[1]});
    }
    for (int t = 0; t < 3; ++t) {
        Edge e = inst.cut_edges[0][t];
        if (result.c0.contains(e) && !result.c1.contains(e))
            candidates.push_back({true, t, 0});
    }
    if (candidates.empty()) fail("no cap edge separates C_0 from C_1");
    result.red = candidates.front();
    result.red_candidates = static_cast<int>(candidates.size());
    return result;
}

// ---- verification ----------------------------------------------------------

namespace {

const std::map<int, std::vector<std::pair<std::string, int>>>& right_rule_table() {
    static const std::map<int, std::vector<std::pair<std::string, int>>> table{
        {1, {{"P", 3}, {"WR", 5}}}, {2, {{"R", 6}, {"SQ", 7}}}, {3, {{"Q", 4}}},
        {4, {{"UWS", 3}}},          {5, {{"XWS", 3}}},          {6, {{"XPQ", 7}}},
        {7, {{"UPQ", 7}}},
    };
    return table;
}

const std::map<int, std::vector<std::string>>& dollar_rule_table() {
    static const std::map<int, std::vector<std::string>> table{
        {1, {"P", "W", "WR"}},   {2, {"R", "S", "SQ"}},   {3, {"Q"}},
        {4, {"U", "UW", "UWS"}}, {5, {"X", "XW", "XWS"}}, {6, {"X", "XP", "XPQ"}},
        {7, {"U", "UP", "UPQ"}},
    };
    return table;
}

bool matches_right_rule(const PathWord& from, const PathWord& to) {
    const int g = static_cast<int>(from.sigma.size());
    const int g2 = static_cast<int>(to.sigma.size());
    if (g2 <= g) return false;
    if (to.sigma.compare(0, g, from.sigma) != 0) return false;
    const std::string letters = to.sigma.substr(g);
    auto it = right_rule_table().find(from.number);
    if (it == right_rule_table().end()) return false;
    for (const auto& [rule_letters, target] : it->second)
        if (rule_letters == letters && target == to.number) return true;
    return false;
}

bool matches_dollar_rule(const PathWord& from, const PathWord& to, int n) {
    const int g = static_cast<int>(from.sigma.size());
    if (static_cast<int>(to.sigma.size()) != n) return false;
    if (to.sigma.compare(0, g, from.sigma) != 0) return false;
    const std::string suffix = to.sigma.substr(g);
    auto it = dollar_rule_table().find(from.number);
    if (it == dollar_rule_table().end()) return false;
    for (const std::string& rule : it->second)
        if (rule == suffix) return true;
    return false;
}

}  // namespace

TransitionReport verify_transitions(const FamilyInstance& inst,
                                    const PatternLabels& labels, const WalkTrace& trace) {
    if (trace.path_log.empty())
        throw std::invalid_argument("verify_transitions needs a fully logged trace");
    TransitionReport report;
    std::vector<PathWord> words;
    words.reserve(trace.path_log.size());
    for (const HamPath& p : trace.path_log) words.push_back(extract_word(inst, labels, p));
    const std::size_t last = words.size() - 1;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        const PathWord& cur = words[i];
        const PathWord& nxt = words[i + 1];
        ++report.checked;
        if (cur.kind == WordKind::cap_end || nxt.kind == WordKind::cap_end) {
            ++report.boundary;
            const bool at_edge = (i == 0 || i + 1 == last);
            if (!at_edge)
                report.unlisted.push_back("interior cap-ending path at step " +
                                          std::to_string(i));
            continue;
        }
        bool ok = false;
        if (cur.kind == WordKind::rightmost && nxt.kind == WordKind::rightmost) {
            if (cur.sigma == nxt.sigma) {
                ++report.pac_flips;
                ok = true;
            }
        } else if (cur.kind == WordKind::number && nxt.kind == WordKind::number) {
            ok = matches_right_rule(cur, nxt) || matches_right_rule(nxt, cur);
        } else if (cur.kind == WordKind::number && nxt.kind == WordKind::rightmost) {
            ok = matches_dollar_rule(cur, nxt, inst.n);
        } else if (cur.kind == WordKind::rightmost && nxt.kind == WordKind::number) {
            ok = matches_dollar_rule(nxt, cur, inst.n);
        }
        if (ok) continue;
        const bool involves_8 =
            (cur.kind == WordKind::number && cur.number == 8) ||
            (nxt.kind == WordKind::number && nxt.number == 8);
        std::string desc = cur.display() + " -> " + nxt.display() + " (step " +
                           std::to_string(i) + ")";
        if (involves_8)
            report.unlisted.push_back(desc);
        else
            report.violations.push_back(desc);
    }
    return report;
}

BounceResult classify_bounce(const FamilyInstance& inst, const PatternLabels& labels,
                             int number_label, const std::vector<HamPath>& universe) {
    int bouncing_votes = 0, conducting_votes = 0, occurrences = 0;
    for (const HamPath& p : universe) {
        const int region = inst.region_of(p.order.back());
        if (region == 0 || region == inst.n + 1) continue;
        PatternKey key = classify_gadget_key(inst, p, region - 1);
        if (labels.number_of(key) != number_label) continue;
        ++occurrences;
        int rights = 0, lefts = 0;
        for (const auto& opt : lollipop_successors(inst.graph, p)) {
            const int r2 = inst.region_of(opt.path.order.back());
            if (r2 > region)
                ++rights;
            else if (r2 < region)
                ++lefts;
            else
                throw std::runtime_error("lollipop left the end inside the same gadget");
        }
        if (rights == 2)
            ++bouncing_votes;
        else if (rights == 1 && lefts == 1)
            ++conducting_votes;
        else
            throw std::runtime_error("pattern " + std::to_string(number_label) +
                                     ": both lollipops moved the end left");
    }
    if (occurrences == 0)
        throw std::runtime_error("pattern " + std::to_string(number_label) +
                                 " has no reachable occurrences at this n");
    if (bouncing_votes && conducting_votes)
        throw std::runtime_error("pattern " + std::to_string(number_label) +
                                 " shows mixed bounce behavior");
    return {bouncing_votes ? BounceClass::bouncing : BounceClass::conducting,
            occurrences};
}

}  // namespace lollipop
