#ifndef TWW_SYNTH_HPP
#define TWW_SYNTH_HPP

#include <functional>

#include "tww/bounds.hpp"
#include "tww/decomp.hpp"
#include "tww/gadgets.hpp"
#include "tww/oracle.hpp"
#include "tww/sequence.hpp"

namespace tww {

// Synthesizers: every decomposition-driven width bound realized as an
// algorithm whose output is replay-verified against the bound before it is
// returned. A violated bound raises an internal error; when a piece had to
// fall back to the greedy heuristic the bound is reported but not asserted.

struct SynthOptions {
    int parts_exact_limit = 12;  // exact-oracle cap for width-minimal pieces
    OracleOptions oracle;
};

struct SynthResult {
    ContractionSequence sequence;
    int achieved_width = 0;
    bounds::Name bound_name = bounds::Name::thm2_upper;
    bounds::Params bound_params;
    bounds::Value bound;
    bool heuristic_used = false;
};

// Runs the leaf-first bag-merging loop over a strong tree decomposition;
// verified width <= thm1(width of the decomposition).
SynthResult strong_tree_contract(const Trigraph& g, const StrongTreeDecomposition& s,
                                 const SynthOptions& opts = {});

// From a complete sequence of g of width d, builds a sequence that collapses
// everything except v into one part without ever touching v; verified width
// <= d+1. The prefix up to v's first merge is reused, the suffix is replayed
// with v split off its part.
ContractionSequence avoid_vertex_lift(const Trigraph& g, Vertex v, const ContractionSequence& s);

// From a complete sequence of g-v respecting a (width d), builds a complete
// sequence of g respecting a+{v}: every part splits along N(v) and each
// original merge becomes at most two half-merges, N(v)-side first. Verified
// width <= 2d+2.
ContractionSequence apex_lift(const Trigraph& g, Vertex v, const VertexSet& a,
                              const ContractionSequence& s);

// Iterated apex_lift over all of a; base is a complete sequence of g-a of
// width d. Verified width <= 2^|a| d + 2^(|a|+1) - 2.
ContractionSequence respect_lift(const Trigraph& g, const VertexSet& a,
                                 const ContractionSequence& base);

// Restriction of s to the induced subgraph on keep: steps whose absorbed
// part has no member in keep are dropped, the rest are remapped to the
// smallest surviving member. Verified width never exceeds the width of s.
ContractionSequence restrict_sequence(const Trigraph& g, const VertexSet& keep,
                                      const ContractionSequence& s);

// Supplies a complete sequence for one biconnected component plus a flag
// whether it was produced heuristically.
using BlockSupplier = std::function<std::pair<ContractionSequence, bool>(const Trigraph& block)>;

BlockSupplier oracle_block_supplier(const SynthOptions& opts);

// Removes the blocks leaf-by-leaf on the pendant-augmented graph, lifting
// each block sequence around its parent cut vertex, then restricts back to
// g. Verified width <= max block width + 2.
SynthResult compose_blocks(const Trigraph& g, const BlockCutTree& bct,
                           const BlockSupplier& per_block, const SynthOptions& opts = {});

// Supplies a complete sequence of the part's gadget graph respecting its
// parent separator.
using PartSupplier = std::function<ContractionSequence(int node, const TildePart& part)>;

// Leaves-first recursion: children collapse respecting their separators,
// then the part's own sequence is replayed on the partially contracted
// graph. Verified width <= the maximum part-sequence width.
SynthResult compose_adhesion(const Trigraph& g, const TreeDecomposition& t,
                             const PartSupplier& parts, const SynthOptions& opts = {});

// The bounded-width part strategy: per child, fold the gadget clique
// respecting the parent separator, merge equal-separator-neighborhood
// vertices into the accumulator, then collapse the residue. Complete
// respecting sequence of verified width <= 3*2^(k-1) + max(w-k-2, 0).
ContractionSequence contract_tilde_bounded(const TildePart& part, int k, int w);

// Partial sequence folding every child gadget clique into a single vertex,
// alternating-neighborhood targets first; verified width <= 2^k - 1 where k
// is the largest child separator. Requires pairwise incomparable child
// separators.
ContractionSequence tilde_to_hat(const TildePart& part);

// Replays a complete sequence of the red torso on the hat graph, merging
// gadget stars whenever their neighborhoods nest in the identified graph.
// Asserts the loop-head antichain and the gadget degree <= k invariants;
// verified width <= torso_version(k, width of torso_seq).
ContractionSequence hat_from_torso(const HatPart& hat, const ContractionSequence& torso_seq);

}  // namespace tww

#endif
