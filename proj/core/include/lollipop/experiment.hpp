#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lollipop/engine.hpp"
#include "lollipop/family.hpp"
#include "lollipop/words.hpp"

namespace lollipop {

struct LemmaReport {
    std::string lemma;
    bool pass = true;
    std::vector<std::string> witnesses;
    std::vector<std::string> failures;
    std::map<std::string, std::string> data;  // machine-checkable facts

    void fail(const std::string& msg) {
        pass = false;
        failures.push_back(msg);
    }
    std::string to_json() const;
};

// Lemma "counter initialisation": the walk from C_0 reaches C_1; its
// first rightmost word is a prefix of (PQU)^w, its last a prefix of
// (WSQU)^w, with the GG...GC gamma form exactly when n = 1 mod 4.
LemmaReport verify_lemma_init(const WiringSnapshot& snap, int n_from, int n_to);

// Lemma "bouncing": patterns 1 and 2 bounce, 3..8 conduct, across every
// reachable occurrence.
LemmaReport verify_lemma_bounce(const WiringSnapshot& snap, int n);

// Lemma "filling": between consecutive distinct rightmost words lies
// exactly one bouncing path, and the two words match the fill templates.
LemmaReport verify_lemma_fill(const WiringSnapshot& snap, int n);

// The rightmost gamma words of the walk visit L_n exactly in order <,
// with the expected per-word multiplicities.
LemmaReport verify_visitation(const WiringSnapshot& snap, int n);

struct SweepRow {
    int n = 0;
    std::uint64_t steps = 0;
    long long rightmost_count = 0;
    std::uint64_t max_gap = 0;
    bool end_cycle_ok = false;
    bool counts_ok = false;  // rightmost_count matches the language count
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;  // least-squares slope of ln T(n), top half of the range
    double ln_c = 0.0;
};

SweepResult sweep_steps(const WiringSnapshot& snap, int n_min, int n_max,
                        int workers = 1);

std::string sweep_to_csv(const SweepResult& sweep);
std::string sweep_to_json(const SweepResult& sweep);
void write_report(const SweepResult& sweep, const std::string& out_path,
                  const std::string& format);

// trace JSON: {n, steps, gaps:[...], rightmost_words:[...], end_cycle:[...]}
std::string trace_to_json(const FamilyInstance& inst, const PatternLabels& labels,
                          const WalkTrace& trace);

// Runs the wiring search, calibrates the survivors and gates them on the
// lemma checks; the first candidate passing everything becomes the
// snapshot. Deterministic.
WiringSnapshot make_snapshot(int max_n_check = 6);

}  // namespace lollipop
