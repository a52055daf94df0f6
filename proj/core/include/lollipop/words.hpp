#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lollipop/engine.hpp"
#include "lollipop/family.hpp"
#include "lollipop/graph.hpp"

namespace lollipop {

// ---- symbolic layer (independent of any graph) -----------------------------

// Fixed 5-state automaton accepting exactly the letter descriptions of
// rightmost Hamiltonian paths; its language restricted to length n is
// the prefix language of {WRX, PQU, WSQU}*.
class JAutomaton {
  public:
    enum State { AA = 0, QS = 1, UV = 2, RS = 3, XS = 4 };
    static constexpr int kStates = 5;

    JAutomaton();
    bool accepts(const std::string& sigma) const;
    int step(int state, char letter) const;  // -1 on no transition
    std::string to_dot() const;

    // all length-n words (every state accepts)
    std::vector<std::string> enumerate(int n) const;
    // number of length-n words whose final letter lies in `letters`
    long long count_words_ending_in(int n, const std::string& letters) const;

  private:
    std::array<std::array<int, 7>, kStates> delta_;
    static int letter_index(char c);
};

extern const char* const kSigmaLetters;  // "PQUWRXS"

// Block compression: PQU -> A, WRX -> T, WSQU -> G, with the residual
// suffix cases and W -> C. Throws on words outside J.
std::string phi(const std::string& sigma);

// The counter order: A < T < G, A < C, comparison reversed below a
// leading T. Comparing T or G with C is undefined and raises.
int gamma_compare(const std::string& a, const std::string& b);
bool gamma_less(const std::string& a, const std::string& b);

std::vector<std::string> enumerate_sigma_language(int n);  // J_n
std::vector<std::string> enumerate_language(int n);        // L_n, sorted by <

// a_0..3 = 1,2,3,3; a_k = 2 a_{k-3} + a_{k-4}
std::vector<long long> recurrence_table(int k_max);
// series coefficients of (1 + 2z + 3z^2 + z^3) / (1 - 2z^3 - z^4)
std::vector<long long> gf_series(int k_max);

struct GrowthConstant {
    std::array<std::complex<double>, 4> roots;  // of z^4 + 2z^3 - 1
    double max_residual = 0.0;
    double c = 0.0;       // 1 / least-modulus root
    double sqrt_c = 0.0;  // per-vertex base
};
GrowthConstant growth_constant();

// ---- gadget patterns -------------------------------------------------------

// Traversal class of one gadget. Several patterns share the same local
// edge set (W, R and X use every port and the pass-through), so the
// class also carries the order context: which track holds the first
// crossing of the left cut (the line wired back to lambda), and for
// letters using all three right-cut edges, which right track leads on
// to the path's end. The right context is what splits the primed
// pairs; the left context separates W/R/X, P/S and the number pairs
// that coincide as edge sets.
struct PatternKey {
    int bits = 0;        // lp0|lp1|rp0|rp1|pass|internal
    int end_slot = -1;   // -1, 0, 1
    int left_ctx = -1;   // track of the left cut's first crossing (letters)
    int right_ctx = -1;  // track of the right cut's last crossing, or -1

    int encode() const {
        return bits | ((end_slot + 1) << 6) | ((right_ctx + 1) << 8) |
               ((left_ctx + 1) << 10);
    }
    static PatternKey decode(int code);
    std::string str() const { return std::to_string(encode()); }
    PatternKey collapsed() const { return PatternKey{bits, end_slot, left_ctx, -1}; }

    friend auto operator<=>(const PatternKey&, const PatternKey&) = default;
};

PatternKey classify_gadget_key(const FamilyInstance& inst, const HamPath& p,
                               int gadget_index);

// State of a cut: which tracks the path uses there plus the track of
// the first crossing (the one wired back to lambda through the left).
int cut_state_key(const FamilyInstance& inst, const HamPath& p, int cut_index);

// Local enumeration of strip traversal classes: edge subsets plus every
// traversal order a path could realize, independent of any global path.
// Pins the pattern-class counts (12 letters including the unreachable
// one, 8 numbers).
struct LocalClassCount {
    int letter_bits_classes = 0;      // edge-set classes with both ends outside
    int letter_full_classes = 0;      // with the order context
    int number_classes = 0;           // one end inside the gadget
    std::vector<PatternKey> letters;  // realizable full letter keys
    std::vector<PatternKey> numbers;  // realizable number keys
};
LocalClassCount enumerate_local_classes(const GadgetWiring& w);

// ---- labels (calibrated once, stored in the snapshot) ----------------------

struct PatternLabels {
    std::map<int, std::string> letter_full;  // full key -> "P","W'","U''",...
    std::map<int, int> number;              // key -> 1..8
    std::map<int, std::string> states;      // cut-state key -> "AA","Q","UV","R","X"

    char letter_of(const PatternKey& full_key) const;  // collapsed letter
    std::string full_name(const PatternKey& full_key) const;
    int number_of(const PatternKey& key) const;

    void to_snapshot(WiringSnapshot& snap) const;
    static PatternLabels from_snapshot(const WiringSnapshot& snap);
};

enum class WordKind { cap_end, number, rightmost };

struct PathWord {
    WordKind kind = WordKind::cap_end;
    std::string sigma;  // letters left of the end gadget (all n when rightmost)
    int number = 0;     // set when kind == number
    std::string display() const;

    bool operator==(const PathWord&) const = default;
};

PathWord extract_word(const FamilyInstance& inst, const PatternLabels& labels,
                      const HamPath& p);

// Both encodings of a rightmost path: its letter word (verified against
// the automaton) and the compressed gamma word.
struct RightmostEncoding {
    PathWord word;
    std::string gamma;
};
RightmostEncoding encode_rightmost(const FamilyInstance& inst,
                                   const PatternLabels& labels, const HamPath& p);

// All Hamiltonian paths from lambda whose first edge is green: the
// universe the pattern analysis quantifies over.
std::vector<HamPath> lambda_green_paths(const FamilyInstance& inst);

// ---- calibration -----------------------------------------------------------

// Derives the pattern labels for one (wiring, lambda_track) candidate by
// anchoring the empirical cut-state machine to the fixed automaton and
// the number classes to the rewrite rules. Throws CalibrationError when
// the candidate does not reproduce the expected structure.
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Calibration {
    PatternLabels labels;
    HamCycle c0, c1;       // for the calibration instance
    RedEdgeDesc red;
    int red_candidates = 0;  // diagnostics: cap edges separating C_0 from C_1
};

Calibration calibrate(const GadgetWiring& wiring, const RotationRule& rot,
                      int lambda_track, int calibration_n = 6);

// ---- verification built on the labels --------------------------------------

struct TransitionReport {
    long long checked = 0;
    long long boundary = 0;   // transitions touching a cap-ending path
    long long pac_flips = 0;  // equal-word rightmost pairs
    std::vector<std::string> unlisted;    // observed but absent from the rule lists
    std::vector<std::string> violations;  // contradicts a listed rule shape
    bool ok() const { return violations.empty(); }
};

// Checks every consecutive word change in a fully logged trace against
// the rewrite rules (right-moving rules, their reversals, and the
// $-terminating variants). Pattern-8 transitions are reported as
// unlisted, not as violations.
TransitionReport verify_transitions(const FamilyInstance& inst,
                                    const PatternLabels& labels, const WalkTrace& trace);

enum class BounceClass { bouncing, conducting };

struct BounceResult {
    BounceClass cls;
    int occurrences = 0;
};

// Applies both lollipops to every reachable path ending in the given
// number pattern. Throws on mixed behavior.
BounceResult classify_bounce(const FamilyInstance& inst, const PatternLabels& labels,
                             int number_label,
                             const std::vector<HamPath>& universe);

}  // namespace lollipop
