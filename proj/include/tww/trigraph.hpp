#ifndef TWW_TRIGRAPH_HPP
#define TWW_TRIGRAPH_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tww/errors.hpp"

namespace tww {

// Vertex ids are stable across a trigraph's lifetime: the survivor of a
// contraction keeps its id. Ids are 0-based internally; file formats are
// 1-based.
using Vertex = int;

using VertexSet = std::set<Vertex>;

// Undirected graph with disjoint black and red edge sets. Stored as two
// symmetric sorted adjacency maps, so iteration order is deterministic and
// red degrees are O(1).
class Trigraph {
public:
    Trigraph() = default;

    // Vertices 0..n-1, no edges.
    static Trigraph with_vertices(int n);

    void add_vertex(Vertex v);
    void remove_vertex(Vertex v);

    bool has_vertex(Vertex v) const { return black_.count(v) != 0; }
    std::size_t num_vertices() const { return black_.size(); }
    std::vector<Vertex> vertices() const;
    Vertex max_vertex_id() const;

    void add_black_edge(Vertex u, Vertex v);
    void add_red_edge(Vertex u, Vertex v);
    // Recolors u-v red. Adds the edge if absent.
    void make_red(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);

    bool has_black_edge(Vertex u, Vertex v) const;
    bool has_red_edge(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return has_black_edge(u, v) || has_red_edge(u, v); }

    const VertexSet& black_neighbors(Vertex v) const;
    const VertexSet& red_neighbors(Vertex v) const;
    VertexSet neighbors(Vertex v) const;

    int degree(Vertex v) const;
    int red_degree(Vertex v) const;
    int max_red_degree() const;

    std::size_t num_black_edges() const;
    std::size_t num_red_edges() const;

    // Merges `absorbed` into `survivor`: the merged vertex keeps black edges
    // to common black neighbors and gets red edges to every red neighbor of
    // either endpoint and to every vertex adjacent to exactly one of them.
    // All edges not incident to the pair are unchanged.
    void contract(Vertex survivor, Vertex absorbed);

    Trigraph induced(const VertexSet& keep) const;

    // Structural sanity: symmetry, disjoint colors, no loops.
    void check_invariants() const;

    bool operator==(const Trigraph& other) const = default;

private:
    void require_vertex(Vertex v) const;

    std::map<Vertex, VertexSet> black_;
    std::map<Vertex, VertexSet> red_;
};

// Contraction with the survivor id fixed to min(x, y).
Trigraph contract(const Trigraph& g, Vertex x, Vertex y);

// Disjoint nonempty vertex sets covering the ground trigraph. The
// representative of a part is its smallest id.
struct Partition {
    std::vector<VertexSet> parts;

    static Partition singletons(const Trigraph& g);
    static Partition of(std::vector<VertexSet> parts);

    Vertex representative(std::size_t i) const { return *parts[i].begin(); }
    std::optional<std::size_t> part_of(Vertex v) const;

    // Refinement splitting v off its part; identity if v is a singleton.
    Partition split_off(Vertex v) const;

    // Throws invalid-partition if this is not a partition of V(g).
    void validate_for(const Trigraph& g) const;
};

// One vertex per part (its representative id). A cross pair of parts is
// black iff all cross edges are present and black, absent iff none are
// present, red otherwise.
Trigraph quotient(const Trigraph& g, const Partition& p);

}  // namespace tww

#endif
