#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lollipop/graph.hpp"
#include "lollipop/ham_oracle.hpp"

namespace lollipop {

// One gadget as a port map over the three horizontal tracks (0 = top,
// 1 = middle, 2 = bottom) of its boundary cuts. The pass-through edge
// enters the strip on track pass_left and leaves on track pass_right;
// these differ, since at every cut the incoming and outgoing
// pass-throughs are distinct edges. The two internal vertices (slots)
// take the remaining left tracks in sorted order; `cross` decides how
// the remaining right tracks pair up with the slots.
struct GadgetWiring {
    int pass_left = 0;
    int pass_right = 1;
    bool cross = false;

    std::array<int, 2> left_port_tracks() const;            // sorted
    std::array<int, 2> right_port_tracks_by_slot() const;   // slot -> track
    int normal_track() const;                               // the third track

    GadgetWiring vflip() const;   // tracks t -> 2-t
    GadgetWiring hflip() const;   // mirror left-right
    GadgetWiring canonical() const;  // least representative of its symmetry orbit
    std::array<int, 3> key() const { return {pass_left, pass_right, cross ? 1 : 0}; }

    friend auto operator<=>(const GadgetWiring&, const GadgetWiring&) = default;
};

std::vector<GadgetWiring> all_raw_wirings();  // 12 candidates, pre-symmetry

// Uniform per-role rotation rule: one bit per cap track, gadget slot
// (optionally by gadget parity) and pac track. Euler-checked against
// built instances; the witness the builder emits for every n.
struct RotationRule {
    int period = 1;  // 1 or 2 (gadget bits by index parity)
    std::array<bool, 3> cap{};
    std::array<std::array<bool, 2>, 2> slot{};
    std::array<bool, 3> pac{};
};

// G_n plus all distinguished data.
struct FamilyInstance {
    int n = 0;
    CubicGraph graph;
    VertexId lambda = 0;
    Edge green;
    Edge red;
    HamCycle c0;
    HamCycle c1;
    std::vector<std::array<VertexId, 2>> gadget_vertices;   // n entries
    std::vector<std::array<Edge, 3>> cut_edges;             // (n+1) x 3, by track
    GadgetWiring wiring;
    RotationRule rotation_rule;
    int lambda_track = 0;
    std::array<VertexId, 3> cap_on_track{};
    std::array<VertexId, 3> pac_on_track{};

    VertexId pac_begin() const { return 2 * n + 3; }
    bool in_pac(VertexId v) const { return v >= pac_begin(); }
    bool in_cap(VertexId v) const { return v < 3; }
    // cap region = 0, gadget i = i+1 (i zero-based), pac = n+1
    int region_of(VertexId v) const;
    int gadget_of(VertexId v) const { return (v - 3) / 2; }  // gadget vertices only
};

// The six edges a single gadget strip owns. Port edges and the
// pass-through are shared with the neighboring strips at the cuts.
struct StripEdges {
    std::array<Edge, 2> left_port;   // by slot
    std::array<Edge, 2> right_port;  // by slot
    Edge pass;
    Edge internal;
};
StripEdges strip_edges(const FamilyInstance& inst, int gadget_index);

// Structural descriptor of the red edge, instantiable at every n.
struct RedEdgeDesc {
    bool crossing = false;  // true: the cut-0 edge on track_a; false: cap triangle edge
    int track_a = 0;
    int track_b = 0;  // triangle case: second cap track (may be lambda's)
};

struct WiringSnapshot {
    GadgetWiring wiring;
    RotationRule rotation;
    int lambda_track = 0;
    RedEdgeDesc red;
    std::map<std::string, std::string> letter_labels;  // pattern key -> letter
    std::map<std::string, int> number_labels;          // pattern key -> 1..8
    std::map<std::string, std::string> state_labels;   // cut-state key -> automaton state
    std::vector<GadgetWiring> survivors;
    std::uint64_t checksum = 0;

    std::uint64_t compute_checksum() const;
    std::string to_json() const;
    static WiringSnapshot from_json(const std::string& text);
    void save(const std::string& path) const;
    // Verifies the checksum; experiments refuse to run without a valid snapshot.
    static WiringSnapshot load(const std::string& path);
};

// Assembly without distinguished data (used by the search and by
// calibration before a snapshot exists). Throws on n < 1.
FamilyInstance build_raw(int n, const GadgetWiring& w, const RotationRule& rot,
                         int lambda_track);

// All Hamiltonian cycles of an assembled G_n via the cut-state transfer
// DP (every Hamiltonian cycle crosses every cut exactly twice). Exact
// for every n; cross-checked against the oracle in tests.
std::vector<HamCycle> family_cycles(const FamilyInstance& inst);

// True iff the cut-state transfer matrix is a permutation matrix, which
// pins the cycle count at 3 for every n simultaneously.
bool transfer_is_permutation(const GadgetWiring& w);

// Spec operation: oracle-backed selection. The two cycles containing
// green are {C_0, C_1}; C_0 is the one containing red.
std::pair<HamCycle, HamCycle> select_distinguished_cycles(const CubicGraph& g,
                                                          VertexId lambda, Edge green,
                                                          Edge red);
std::pair<HamCycle, HamCycle> select_from_cycles(const std::vector<HamCycle>& cycles,
                                                 Edge green, Edge red);

// Full build from a snapshot: assembly, rotation witness, C_0/C_1.
FamilyInstance build(int n, const WiringSnapshot& snap);

// Enumerates the port-map candidates, assembles G_1..G_max_n_check for
// each, and returns those for which every instance is cubic, planar,
// 3-connected and has exactly three Hamiltonian cycles. Candidates
// equivalent under vertical/horizontal symmetry are deduplicated.
// Throws if the result would be empty.
std::vector<GadgetWiring> search_gadget_wirings(int max_n_check);

// Rotation-rule witness search for one wiring (period 1, then 2).
std::optional<RotationRule> find_rotation_rule(const GadgetWiring& w, int max_n_check);

}  // namespace lollipop
