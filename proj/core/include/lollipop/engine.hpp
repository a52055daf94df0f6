#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lollipop/family.hpp"
#include "lollipop/graph.hpp"
#include "lollipop/lollipop_step.hpp"

namespace lollipop {

enum class WalkLog { counts, rightmost, full };

struct RunOptions {
    WalkLog log = WalkLog::counts;
    std::uint64_t budget = 1'000'000'000ull;
    // Called at every rightmost path regardless of log level; step is
    // the number of lollipops performed so far.
    std::function<void(const HamPath&, std::uint64_t step)> on_rightmost;
    bool progress = false;  // heartbeat on stderr for long runs
};

// Full record of one Thomason run.
struct WalkTrace {
    HamCycle start_cycle;
    Edge distinguished_edge;
    std::uint64_t steps = 0;
    HamCycle end_cycle;
    bool completed = false;  // false iff the step budget aborted the walk

    std::vector<std::uint64_t> rightmost_steps;  // step index of each rightmost path
    std::vector<HamPath> rightmost_paths;        // log >= rightmost
    std::vector<std::uint64_t> gap_sizes;        // between consecutive rightmost paths
    std::uint64_t lead_in = 0;                   // steps before the first rightmost path
    std::uint64_t lead_out = 0;                  // steps after the last one
    std::vector<HamPath> path_log;               // log == full (start path included)
};

// True iff p starts at lambda and its other end lies in the pac.
bool detect_rightmost(const FamilyInstance& inst, const HamPath& p);

// The deterministic walk: start from the cycle with the non-green edge
// at lambda removed, oriented so green comes first; at each step move to
// the unique lollipop neighbor that is not the previous path; stop when
// the path closes a cycle again.
WalkTrace run_thomason(const FamilyInstance& inst, const RunOptions& opt = {});

// Same walk but from an arbitrary start cycle containing the green edge
// (used to retrace the component from C_1 back to C_0).
WalkTrace run_thomason_from(const FamilyInstance& inst, const HamCycle& start,
                            const RunOptions& opt = {});

// Generic form for arbitrary cubic graphs (no rightmost instrumentation).
WalkTrace run_thomason(const CubicGraph& g, const HamCycle& start, Edge e,
                       const RunOptions& opt = {});

}  // namespace lollipop
