#pragma once

#include <cstdint>
#include <vector>

namespace orient {

// Per-update bookkeeping every algorithm fills in; the runner turns this
// into one metrics row.
struct UpdateStats {
    int64_t batch_size = 0;
    int64_t flips = 0;
    int64_t edges_to_static = 0;
    int64_t min_threshold = -1;          // lowest skyline threshold seen, -1 if none
    int64_t recursion_depth = 0;
    bool trivial_branch = false;         // a worst-case call exited on insufficient height
    std::vector<int64_t> thresholds;     // per skyline, in order
    std::vector<int64_t> level_batch;    // reinsertion: batch size per recursion level

    // thresholds grouped by same-skyline-size runs (one per call level)
    std::vector<std::vector<int64_t>> threshold_runs;

    void begin_run() { threshold_runs.emplace_back(); }

    void saw_threshold(int64_t t) {
        thresholds.push_back(t);
        if (threshold_runs.empty()) threshold_runs.emplace_back();
        threshold_runs.back().push_back(t);
        min_threshold = min_threshold < 0 ? t : std::min(min_threshold, t);
    }
};

}  // namespace orient
