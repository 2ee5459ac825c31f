#include "tww/gadgets.hpp"

#include <algorithm>
#include <set>

namespace tww {

namespace {

void require_node(const TreeStructure& t, int node) {
    if (node < 0 || node >= t.node_count())
        throw Error(ErrorKind::invalid_decomposition,
                    "node " + std::to_string(node) + " not in decomposition");
}

// Bitmask of m over the sorted elements of base.
unsigned long long mask_of(const VertexSet& m, const VertexSet& base) {
    unsigned long long mask = 0;
    unsigned long long bit = 1;
    for (Vertex s : base) {
        if (m.count(s)) mask |= bit;
        bit <<= 1;
    }
    return mask;
}

Trigraph induced_part(const Trigraph& g, const VertexSet& bag) {
    for (Vertex v : bag)
        if (!g.has_vertex(v))
            throw Error(ErrorKind::invalid_decomposition,
                        "bag vertex " + std::to_string(v) + " not in graph");
    return g.induced(bag);
}

}  // namespace

VertexSet subtree_vertices(const TreeStructure& t, int node) {
    require_node(t, node);
    auto children = t.children();
    VertexSet out;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.insert(t.bags[x].begin(), t.bags[x].end());
        for (int c : children[x]) stack.push_back(c);
    }
    return out;
}

TildePart build_tilde(const Trigraph& g, const TreeDecomposition& t, int node) {
    require_node(t, node);
    TildePart part;
    part.node = node;
    part.bag = t.bags[node];
    part.parent_separator = t.parent_separator(node);
    part.graph = induced_part(g, part.bag);

    Vertex next = g.num_vertices() == 0 ? 0 : g.max_vertex_id() + 1;
    auto children = t.children();
    for (int c : children[node]) {
        TildeChild child;
        child.node = c;
        std::set_intersection(t.bags[c].begin(), t.bags[c].end(), part.bag.begin(),
                              part.bag.end(), std::inserter(child.separator, child.separator.end()));
        // realized neighborhoods of the subtree behind c inside its separator
        std::set<VertexSet> realized;
        for (Vertex v : subtree_vertices(t, c)) {
            if (child.separator.count(v)) continue;
            VertexSet m;
            for (Vertex u : g.neighbors(v))
                if (child.separator.count(u)) m.insert(u);
            realized.insert(std::move(m));
        }
        std::vector<VertexSet> ordered(realized.begin(), realized.end());
        std::sort(ordered.begin(), ordered.end(), [&](const VertexSet& a, const VertexSet& b) {
            return mask_of(a, child.separator) < mask_of(b, child.separator);
        });
        for (VertexSet& m : ordered) {
            part.graph.add_vertex(next);
            for (Vertex u : m) part.graph.add_black_edge(next, u);
            for (const GadgetVertex& other : child.gadget) part.graph.add_red_edge(next, other.id);
            child.gadget.push_back({next, std::move(m)});
            ++next;
        }
        part.children.push_back(std::move(child));
    }
    return part;
}

namespace {

// Distinct child separators of the node, subset-maximal ones only, ordered
// by the smallest child realizing them.
std::vector<VertexSet> maximal_child_separators(const TreeDecomposition& t, int node) {
    std::vector<VertexSet> seps;
    auto children = t.children();
    for (int c : children[node]) {
        VertexSet s;
        std::set_intersection(t.bags[c].begin(), t.bags[c].end(), t.bags[node].begin(),
                              t.bags[node].end(), std::inserter(s, s.end()));
        if (std::find(seps.begin(), seps.end(), s) == seps.end()) seps.push_back(std::move(s));
    }
    std::vector<VertexSet> out;
    for (const VertexSet& s : seps) {
        bool dominated = false;
        for (const VertexSet& other : seps)
            if (s != other && std::includes(other.begin(), other.end(), s.begin(), s.end()))
                dominated = true;
        if (!dominated) out.push_back(s);
    }
    return out;
}

HatPart hat_from(const Trigraph& g, VertexSet bag, VertexSet parent_sep,
                 const std::vector<VertexSet>& separators, int node) {
    HatPart part;
    part.node = node;
    part.bag = std::move(bag);
    part.parent_separator = std::move(parent_sep);
    part.graph = induced_part(g, part.bag);
    Vertex next = g.num_vertices() == 0 ? 0 : g.max_vertex_id() + 1;
    for (const VertexSet& s : separators) {
        for (Vertex u : s)
            if (!part.bag.count(u))
                throw Error(ErrorKind::invalid_decomposition,
                            "separator vertex " + std::to_string(u) + " outside the bag");
        part.graph.add_vertex(next);
        for (Vertex u : s) part.graph.add_red_edge(next, u);
        part.gadgets.emplace_back(s, next);
        ++next;
    }
    return part;
}

}  // namespace

HatPart build_hat(const Trigraph& g, const TreeDecomposition& t, int node) {
    require_node(t, node);
    return hat_from(g, t.bags[node], t.parent_separator(node), maximal_child_separators(t, node),
                    node);
}

HatPart build_hat_from_separators(const Trigraph& g, const std::vector<VertexSet>& separators) {
    std::vector<VertexSet> distinct;
    for (const VertexSet& s : separators)
        if (std::find(distinct.begin(), distinct.end(), s) == distinct.end())
            distinct.push_back(s);
    std::vector<Vertex> vs = g.vertices();
    VertexSet all(vs.begin(), vs.end());
    return hat_from(g, all, {}, distinct, 0);
}

Trigraph complete_red_cliques(const Trigraph& g, const std::vector<VertexSet>& separators) {
    Trigraph out = g;
    for (const VertexSet& s : separators) {
        for (Vertex u : s) {
            if (!out.has_vertex(u))
                throw Error(ErrorKind::invalid_decomposition,
                            "separator vertex " + std::to_string(u) + " not in graph");
            for (Vertex v : s)
                if (u < v) out.make_red(u, v);
        }
    }
    return out;
}

Trigraph build_red_torso(const Trigraph& g, const TreeDecomposition& t, int node) {
    require_node(t, node);
    return complete_red_cliques(induced_part(g, t.bags[node]),
                                maximal_child_separators(t, node));
}

PendantHat build_pendant_hat(const Trigraph& g) {
    PendantHat out;
    out.graph = g;
    Vertex next = g.num_vertices() == 0 ? 0 : g.max_vertex_id() + 1;
    for (Vertex v : g.vertices()) {
        out.graph.add_vertex(next);
        out.graph.add_red_edge(v, next);
        out.pendant[v] = next;
        ++next;
    }
    return out;
}

Trigraph mark_virtual_edges(const std::vector<Vertex>& vertices,
                            const std::vector<MultiEdge>& edges,
                            const std::vector<std::pair<Vertex, Vertex>>& virtual_edges) {
    Trigraph out;
    for (Vertex v : vertices) out.add_vertex(v);
    std::map<std::pair<Vertex, Vertex>, bool> simple;  // pair -> red
    for (const MultiEdge& e : edges) {
        if (e.u == e.v) throw Error(ErrorKind::parse, "loop in component");
        std::pair<Vertex, Vertex> key = std::minmax(e.u, e.v);
        simple[key] = simple[key] || e.red;
    }
    for (auto [u, v] : virtual_edges) {
        std::pair<Vertex, Vertex> key = std::minmax(u, v);
        auto it = simple.find(key);
        if (it == simple.end())
            throw Error(ErrorKind::precondition, "virtual edge {" + std::to_string(u) + "," +
                                                     std::to_string(v) + "} is not an edge");
        it->second = true;
    }
    for (const auto& [key, red] : simple) {
        if (red)
            out.add_red_edge(key.first, key.second);
        else
            out.add_black_edge(key.first, key.second);
    }
    return out;
}

}  // namespace tww
