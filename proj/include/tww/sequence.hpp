#ifndef TWW_SEQUENCE_HPP
#define TWW_SEQUENCE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tww/trigraph.hpp"

namespace tww {

struct ContractionStep {
    Vertex survivor;
    Vertex absorbed;
    bool operator==(const ContractionStep&) const = default;
};

// Ordered vertex merges. The absorbed id is dead after its step; a complete
// sequence on an n-vertex trigraph has exactly n-1 steps.
struct ContractionSequence {
    std::vector<ContractionStep> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
    void push(Vertex survivor, Vertex absorbed) { steps.push_back({survivor, absorbed}); }
    void append(const ContractionSequence& other) {
        steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    }
    bool complete_for(const Trigraph& g) const { return size() + 1 == g.num_vertices(); }

    bool operator==(const ContractionSequence&) const = default;
};

struct WidthReport {
    int width = 0;                              // max red degree over all trigraphs, initial included
    std::vector<int> per_step_max_red_degree;   // after each step
    std::optional<bool> respected_set_ok;       // set by respecting verifications
    bool complete = false;                      // reached a single vertex
};

// Replays the sequence on a copy of g. Throws invalid-sequence (with the
// offending step index) if a step references a dead or absent vertex.
WidthReport verify_width(const Trigraph& g, const ContractionSequence& s);

// Replay variant that also hands every intermediate trigraph to a callback
// (called once on g itself before any step).
WidthReport verify_width_trace(const Trigraph& g, const ContractionSequence& s,
                               const std::function<void(const Trigraph&, std::size_t)>& inspect);

struct RespectReport {
    bool respects = false;
    // Earliest step that contracts an A-vertex, disturbs G[A] or puts a red
    // edge on A; unset when the sequence respects A.
    std::optional<std::size_t> violation_index;
    // A respecting sequence is complete when no two surviving non-A vertices
    // share the same black neighborhood in A (for empty A: one vertex left).
    bool complete = false;
    int width = 0;
};

// Checks that s never contracts a vertex of A, keeps G_i[A] = G[A] and keeps
// every a in A at red degree 0. Precondition: every a in A has red degree 0
// in g itself.
RespectReport check_respects(const Trigraph& g, const ContractionSequence& s, const VertexSet& a);

struct RestrictedReport {
    bool valid = false;  // every step stays inside u
    std::optional<std::size_t> violation_index;
    bool complete = false;  // u collapsed into one part
    int width = 0;
};

// Checks a u-restricted sequence: only vertices of u are contracted and a
// complete one collapses u into a single part with |u| - 1 steps. (Some
// sources count such sequences with length |u|; the extra step would leave
// nothing to contract, so |u| - 1 is used throughout.)
RestrictedReport check_restricted(const Trigraph& g, const ContractionSequence& s,
                                  const VertexSet& u);

}  // namespace tww

#endif
