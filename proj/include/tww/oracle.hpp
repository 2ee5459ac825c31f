#ifndef TWW_ORACLE_HPP
#define TWW_ORACLE_HPP

#include <optional>

#include "tww/sequence.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// Exact twin-width search at desk scale: depth-first branch and bound over
// partition states with memoization of refuted states. Deterministic in the
// returned width; witnesses may differ across thread counts.
struct OracleOptions {
    int max_n_plain = 12;    // exact_tww size limit
    int max_n_respect = 10;  // exact_tww_respecting size limit
    int max_u = 12;          // branching-set limit for restricted sequences
    long long budget = 0;    // node budget, 0 = unlimited
    int threads = 1;
};

enum class Outcome { yes, no, inconclusive };

struct DecideResult {
    Outcome outcome = Outcome::no;
    std::optional<ContractionSequence> witness;  // present iff outcome == yes
    long long nodes = 0;
};

struct ExactResult {
    int width = 0;
    ContractionSequence witness;
    long long nodes = 0;
};

// Minimum width over all complete contraction sequences.
ExactResult exact_tww(const Trigraph& g, const OracleOptions& opts = {});

// Minimum width over all complete sequences respecting a (maximal sequences
// that never touch a, keep g[a] intact and keep a red-degree free).
// Precondition: every vertex of a has red degree 0.
ExactResult exact_tww_respecting(const Trigraph& g, const VertexSet& a,
                                 const OracleOptions& opts = {});

// Minimum width over sequences that contract exactly the set u into one
// part (|u|-1 steps) and leave everything else untouched.
ExactResult exact_tww_restricted(const Trigraph& g, const VertexSet& u,
                                 const OracleOptions& opts = {});

// True iff a complete d-contraction sequence exists. Budget exhaustion is
// reported as inconclusive, never as no.
DecideResult decide_tww_le(const Trigraph& g, int d, const OracleOptions& opts = {});

// Greedy fallbacks for pieces beyond the exact limits: repeatedly take the
// valid pair whose contraction minimizes the resulting maximum red degree.
ContractionSequence greedy_complete(const Trigraph& g);
ContractionSequence greedy_respecting(const Trigraph& g, const VertexSet& a);
ContractionSequence greedy_restricted(const Trigraph& g, const VertexSet& u);

}  // namespace tww

#endif
