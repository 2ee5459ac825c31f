#ifndef TWW_DECOMP_HPP
#define TWW_DECOMP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tww/trigraph.hpp"

namespace tww {

// Rooted bag structure shared by plain and strong tree decompositions.
// Node ids are 0-based indices into bags; the wire format is 1-based.
struct TreeStructure {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;  // tree edges between node ids
    int root = 0;
    int n_graph = 0;  // declared order of the decomposed graph

    // Sidecar annotations (separators a graph was split along, virtual
    // edges of triconnected components).
    std::vector<std::pair<int, VertexSet>> annotated_separators;  // (node, set)
    std::vector<std::pair<Vertex, Vertex>> virtual_edges;

    int node_count() const { return static_cast<int>(bags.size()); }
    std::vector<std::vector<int>> adjacency() const;
    // parent[t] = -1 for the root; requires the edge set to form a tree.
    std::vector<int> parents() const;
    std::vector<std::vector<int>> children() const;
    std::vector<int> depths() const;
    bool is_tree() const;

    // B_t intersect B_parent(t); empty for the root.
    VertexSet parent_separator(int t) const;
    int adhesion() const;  // max over tree edges of |B_i intersect B_j|
};

struct TreeDecomposition : TreeStructure {
    int width() const;  // max bag size - 1
};

struct StrongTreeDecomposition : TreeStructure {
    int width() const;  // max bag size
};

struct DecompViolation {
    enum class Kind {
        vertex_uncovered,
        edge_uncovered,
        vertex_bags_disconnected,
        bags_overlap,
        edge_spans_nonadjacent,
        unknown_vertex,
        not_a_tree,
    };
    Kind kind;
    std::string detail;
};

// Validation never throws; an empty list means the structure satisfies
// every condition of the respective definition.
std::vector<DecompViolation> validate_td(const Trigraph& g, const TreeDecomposition& t);
std::vector<DecompViolation> validate_std(const Trigraph& g, const StrongTreeDecomposition& s);

// Re-attaches nodes so that any two nodes with equal parent separators are
// siblings: every group moves below the parent of its highest member.
// Preserves bags, validity, width and adhesion; idempotent.
TreeDecomposition normalize_siblings(const TreeDecomposition& t);

struct BlockCutTree {
    std::vector<VertexSet> blocks;  // biconnected components (vertex sets)
    VertexSet cut_vertices;
    // Bipartite incidence is containment: block b is joined to cut vertex v
    // iff v is in blocks[b].
    std::vector<std::vector<Vertex>> cut_vertices_of_block;
};

// Lowpoint DFS. Requires g connected; adjacency ignores edge colors.
BlockCutTree block_cut_tree(const Trigraph& g);

bool is_connected(const Trigraph& g);
std::vector<VertexSet> connected_components(const Trigraph& g);

// PACE 2017 style: `s td <#bags> <max-bag-size> <n>` (or `s std ...`),
// `b <id> <v...>` lines, tree edges `<i> <j>`, plus sidecar lines
// `sep <node-id> <v...>` and `virt <u> <v>`.
TreeDecomposition parse_td(std::istream& in);
StrongTreeDecomposition parse_std(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
StrongTreeDecomposition read_std_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& t);
void write_std(std::ostream& out, const StrongTreeDecomposition& s);
void write_td_file(const std::string& path, const TreeDecomposition& t);
void write_std_file(const std::string& path, const StrongTreeDecomposition& s);

}  // namespace tww

#endif
