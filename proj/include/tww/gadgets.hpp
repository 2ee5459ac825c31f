#ifndef TWW_GADGETS_HPP
#define TWW_GADGETS_HPP

#include <map>
#include <vector>

#include "tww/decomp.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// Gadget constructions attached to the parts of a rooted tree
// decomposition. New vertex ids are allocated above the maximum id of the
// decomposed graph, ordered by (child index, neighborhood bitmask).

struct GadgetVertex {
    Vertex id;
    VertexSet neighborhood;  // subset of the child separator
};

struct TildeChild {
    int node;             // child node in the decomposition tree
    VertexSet separator;  // bag(child) intersect bag(t)
    std::vector<GadgetVertex> gadget;
};

// Part graph with one red-clique gadget per child: one vertex per distinct
// neighborhood that subtree vertices realize inside the child separator,
// black edges to that neighborhood, red edges within the clique. No red
// edge touches the part itself.
struct TildePart {
    Trigraph graph;
    int node = 0;
    VertexSet bag;
    VertexSet parent_separator;
    std::vector<TildeChild> children;
};

TildePart build_tilde(const Trigraph& g, const TreeDecomposition& t, int node);

// Part graph with a single red-star vertex per subset-maximal child
// separator.
struct HatPart {
    Trigraph graph;
    int node = 0;
    VertexSet bag;
    VertexSet parent_separator;
    std::vector<std::pair<VertexSet, Vertex>> gadgets;  // (separator, v_S)
};

HatPart build_hat(const Trigraph& g, const TreeDecomposition& t, int node);

// Same construction driven by explicit separator annotations (one red star
// per distinct listed separator, no maximality filter).
HatPart build_hat_from_separators(const Trigraph& g, const std::vector<VertexSet>& separators);

// The part with every subset-maximal child separator completed to a red
// clique; existing black edges inside a separator are recolored.
Trigraph build_red_torso(const Trigraph& g, const TreeDecomposition& t, int node);

// Red-clique completion of explicit vertex sets on a raw trigraph.
Trigraph complete_red_cliques(const Trigraph& g, const std::vector<VertexSet>& separators);

// G plus one pendant per vertex, attached by a red edge.
struct PendantHat {
    Trigraph graph;
    std::map<Vertex, Vertex> pendant;  // v -> r_v
};

PendantHat build_pendant_hat(const Trigraph& g);

struct MultiEdge {
    Vertex u, v;
    bool red = false;
};

// Normalizes a multigraph component whose split pairs are marked virtual:
// parallel edges collapse to one, red whenever any parallel copy was red or
// the pair is listed virtual. A virtual pair without a matching edge is an
// error.
Trigraph mark_virtual_edges(const std::vector<Vertex>& vertices, const std::vector<MultiEdge>& edges,
                            const std::vector<std::pair<Vertex, Vertex>>& virtual_edges);

// Union of the bags in the subtree rooted at node.
VertexSet subtree_vertices(const TreeStructure& t, int node);

}  // namespace tww

#endif
