#include "tww/decomp.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace tww {

std::vector<std::vector<int>> TreeStructure::adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

bool TreeStructure::is_tree() const {
    if (bags.empty()) return false;
    if (edges.size() + 1 != bags.size()) return false;
    auto adj = adjacency();
    std::vector<char> seen(bags.size(), 0);
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    int visited = 0;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        ++visited;
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                q.push(u);
            }
    }
    return visited == node_count();
}

std::vector<int> TreeStructure::parents() const {
    if (!is_tree()) throw Error(ErrorKind::invalid_decomposition, "decomposition tree is not a tree");
    auto adj = adjacency();
    std::vector<int> parent(bags.size(), -2);
    std::queue<int> q;
    q.push(root);
    parent[root] = -1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (int u : adj[t])
            if (parent[u] == -2) {
                parent[u] = t;
                q.push(u);
            }
    }
    return parent;
}

std::vector<std::vector<int>> TreeStructure::children() const {
    auto parent = parents();
    std::vector<std::vector<int>> out(bags.size());
    for (int t = 0; t < node_count(); ++t)
        if (parent[t] >= 0) out[parent[t]].push_back(t);
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
}

std::vector<int> TreeStructure::depths() const {
    auto parent = parents();
    std::vector<int> depth(bags.size(), 0);
    // parents() fills in BFS order from the root, so a second BFS suffices
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (int u = 0; u < node_count(); ++u)
            if (parent[u] == t) {
                depth[u] = depth[t] + 1;
                q.push(u);
            }
    }
    return depth;
}

VertexSet TreeStructure::parent_separator(int t) const {
    auto parent = parents();
    if (t < 0 || t >= node_count())
        throw Error(ErrorKind::invalid_decomposition, "node out of range");
    if (parent[t] < 0) return {};
    VertexSet out;
    std::set_intersection(bags[t].begin(), bags[t].end(), bags[parent[t]].begin(),
                          bags[parent[t]].end(), std::inserter(out, out.end()));
    return out;
}

int TreeStructure::adhesion() const {
    int best = 0;
    for (auto [a, b] : edges) {
        VertexSet inter;
        std::set_intersection(bags[a].begin(), bags[a].end(), bags[b].begin(), bags[b].end(),
                              std::inserter(inter, inter.end()));
        best = std::max(best, static_cast<int>(inter.size()));
    }
    return best;
}

int TreeDecomposition::width() const {
    std::size_t best = 0;
    for (const auto& bag : bags) best = std::max(best, bag.size());
    return static_cast<int>(best) - 1;
}

int StrongTreeDecomposition::width() const {
    std::size_t best = 0;
    for (const auto& bag : bags) best = std::max(best, bag.size());
    return static_cast<int>(best);
}

namespace {


void check_common(const Trigraph& g, const TreeStructure& t, std::vector<DecompViolation>& out) {
    if (!t.is_tree()) {
        out.push_back({DecompViolation::Kind::not_a_tree, "tree edges do not form a tree"});
        return;
    }
    VertexSet covered;
    for (int i = 0; i < t.node_count(); ++i) {
        for (Vertex v : t.bags[i]) {
            if (!g.has_vertex(v))
                out.push_back({DecompViolation::Kind::unknown_vertex,
                               "bag " + std::to_string(i) + " contains unknown vertex " +
                                   std::to_string(v)});
            covered.insert(v);
        }
    }
    for (Vertex v : g.vertices())
        if (!covered.count(v))
            out.push_back({DecompViolation::Kind::vertex_uncovered,
                           "vertex " + std::to_string(v) + " is in no bag"});
}

}  // namespace

std::vector<DecompViolation> validate_td(const Trigraph& g, const TreeDecomposition& t) {
    std::vector<DecompViolation> out;
    check_common(g, t, out);
    if (!t.is_tree()) return out;
    auto adj = t.adjacency();

    // per-vertex bag sets must induce subtrees
    for (Vertex v : g.vertices()) {
        std::vector<int> holding;
        for (int i = 0; i < t.node_count(); ++i)
            if (t.bags[i].count(v)) holding.push_back(i);
        if (holding.empty()) continue;
        std::set<int> hold(holding.begin(), holding.end());
        std::set<int> seen;
        std::queue<int> q;
        q.push(holding.front());
        seen.insert(holding.front());
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (hold.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    q.push(y);
                }
        }
        if (seen.size() != hold.size())
            out.push_back({DecompViolation::Kind::vertex_bags_disconnected,
                           "bags containing vertex " + std::to_string(v) +
                               " do not form a subtree"});
    }

    for (Vertex v : g.vertices()) {
        for (Vertex u : g.neighbors(v)) {
            if (u < v) continue;
            bool found = false;
            for (int i = 0; i < t.node_count() && !found; ++i)
                if (t.bags[i].count(v) && t.bags[i].count(u)) found = true;
            if (!found)
                out.push_back({DecompViolation::Kind::edge_uncovered,
                               "edge {" + std::to_string(v) + "," + std::to_string(u) +
                                   "} is covered by no bag"});
        }
    }
    return out;
}

std::vector<DecompViolation> validate_std(const Trigraph& g, const StrongTreeDecomposition& s) {
    std::vector<DecompViolation> out;
    check_common(g, s, out);
    if (!s.is_tree()) return out;

    std::map<Vertex, int> owner;
    for (int i = 0; i < s.node_count(); ++i) {
        for (Vertex v : s.bags[i]) {
            auto [it, inserted] = owner.emplace(v, i);
            if (!inserted)
                out.push_back({DecompViolation::Kind::bags_overlap,
                               "vertex " + std::to_string(v) + " is in bags " +
                                   std::to_string(it->second) + " and " + std::to_string(i)});
        }
    }

    std::set<std::pair<int, int>> tree_edges;
    for (auto [a, b] : s.edges) tree_edges.insert(std::minmax(a, b));
    for (Vertex v : g.vertices()) {
        for (Vertex u : g.neighbors(v)) {
            if (u < v) continue;
            auto iv = owner.find(v), iu = owner.find(u);
            if (iv == owner.end() || iu == owner.end()) continue;  // reported as uncovered
            if (iv->second == iu->second) continue;
            if (!tree_edges.count(std::minmax(iv->second, iu->second)))
                out.push_back({DecompViolation::Kind::edge_spans_nonadjacent,
                               "edge {" + std::to_string(v) + "," + std::to_string(u) +
                                   "} spans non-adjacent bags"});
        }
    }
    return out;
}

TreeDecomposition normalize_siblings(const TreeDecomposition& input) {
    TreeDecomposition t = input;
    // Re-attach until fixpoint: for every separator value, all non-root
    // nodes carrying it hang below the parent of the highest such node.
    for (int guard = 0; guard < t.node_count() + 2; ++guard) {
        auto parent = t.parents();
        auto depth = t.depths();
        std::map<VertexSet, std::vector<int>> groups;
        for (int x = 0; x < t.node_count(); ++x)
            if (parent[x] >= 0) groups[t.parent_separator(x)].push_back(x);
        bool changed = false;
        for (auto& [sep, nodes] : groups) {
            if (nodes.size() < 2) continue;
            int highest = nodes.front();
            for (int x : nodes)
                if (depth[x] < depth[highest] || (depth[x] == depth[highest] && x < highest))
                    highest = x;
            int target = parent[highest];
            for (int x : nodes) {
                if (x == highest || parent[x] == target) continue;
                for (auto& e : t.edges)
                    if (std::minmax(e.first, e.second) == std::minmax(x, parent[x]))
                        e = {target, x};
                changed = true;
            }
            if (changed) break;  // depths are stale after a move
        }
        if (!changed) return t;
    }
    throw Error(ErrorKind::internal, "normalize_siblings did not reach a fixpoint");
}

bool is_connected(const Trigraph& g) {
    return connected_components(g).size() <= 1;
}

std::vector<VertexSet> connected_components(const Trigraph& g) {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (Vertex start : g.vertices()) {
        if (seen.count(start)) continue;
        VertexSet comp;
        std::queue<Vertex> q;
        q.push(start);
        seen.insert(start);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            comp.insert(v);
            for (Vertex u : g.neighbors(v))
                if (!seen.count(u)) {
                    seen.insert(u);
                    q.push(u);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

BlockCutTree block_cut_tree(const Trigraph& g) {
    if (g.num_vertices() == 0)
        throw Error(ErrorKind::precondition, "block_cut_tree of empty graph");
    if (!is_connected(g))
        throw Error(ErrorKind::precondition,
                    "block_cut_tree requires a connected graph; process components separately");

    BlockCutTree out;
    if (g.num_vertices() == 1) {
        out.blocks.push_back({g.vertices().front()});
        out.cut_vertices_of_block.push_back({});
        return out;
    }

    std::map<Vertex, int> disc, low;
    std::vector<std::pair<Vertex, Vertex>> edge_stack;
    int timer = 0;

    std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex par) {
        disc[v] = low[v] = timer++;
        int children = 0;
        for (Vertex u : g.neighbors(v)) {
            if (!disc.count(u)) {
                ++children;
                edge_stack.push_back({v, u});
                dfs(u, v);
                low[v] = std::min(low[v], low[u]);
                if ((par == -1 && children > 1) || (par != -1 && low[u] >= disc[v]))
                    out.cut_vertices.insert(v);
                if (low[u] >= disc[v]) {
                    VertexSet block;
                    while (true) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        block.insert(a);
                        block.insert(b);
                        if (a == v && b == u) break;
                    }
                    out.blocks.push_back(std::move(block));
                }
            } else if (u != par && disc[u] < disc[v]) {
                edge_stack.push_back({v, u});
                low[v] = std::min(low[v], disc[u]);
            }
        }
    };
    dfs(g.vertices().front(), -1);

    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const VertexSet& a, const VertexSet& b) { return a < b; });
    out.cut_vertices_of_block.resize(out.blocks.size());
    for (std::size_t b = 0; b < out.blocks.size(); ++b)
        for (Vertex v : out.blocks[b])
            if (out.cut_vertices.count(v)) out.cut_vertices_of_block[b].push_back(v);
    return out;
}

namespace {

TreeStructure parse_tree_structure(std::istream& in, const std::string& expected_kind) {
    TreeStructure t;
    std::string line;
    long bags = -1, maxbag = -1, n = -1;
    std::size_t lineno = 0;
    std::vector<bool> bag_seen;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "s") {
            std::string kind;
            if (!(ss >> kind >> bags >> maxbag >> n) || bags < 1 || n < 0)
                throw Error(ErrorKind::parse, "bad solution line at line " + std::to_string(lineno));
            if (kind != expected_kind)
                throw Error(ErrorKind::parse, "expected 's " + expected_kind + "' header, found 's " +
                                                  kind + "'");
            t.bags.assign(bags, {});
            bag_seen.assign(bags, false);
            t.n_graph = static_cast<int>(n);
            continue;
        }
        if (bags < 0) throw Error(ErrorKind::parse, "content before solution line");
        if (tok == "b") {
            long id;
            if (!(ss >> id) || id < 1 || id > bags)
                throw Error(ErrorKind::parse, "bad bag id at line " + std::to_string(lineno));
            if (bag_seen[id - 1])
                throw Error(ErrorKind::parse, "duplicate bag " + std::to_string(id));
            bag_seen[id - 1] = true;
            long v;
            while (ss >> v) {
                if (v < 1 || v > n)
                    throw Error(ErrorKind::parse, "vertex out of range at line " + std::to_string(lineno));
                t.bags[id - 1].insert(static_cast<Vertex>(v - 1));
            }
            continue;
        }
        if (tok == "sep") {
            long id;
            if (!(ss >> id) || id < 1 || id > bags)
                throw Error(ErrorKind::parse, "bad sep node at line " + std::to_string(lineno));
            VertexSet sep;
            long v;
            while (ss >> v) sep.insert(static_cast<Vertex>(v - 1));
            t.annotated_separators.emplace_back(static_cast<int>(id - 1), std::move(sep));
            continue;
        }
        if (tok == "virt") {
            long u, v;
            if (!(ss >> u >> v))
                throw Error(ErrorKind::parse, "bad virt line " + std::to_string(lineno));
            t.virtual_edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            continue;
        }
        long a, b;
        std::istringstream pair_ss(line);
        if (!(pair_ss >> a >> b) || a < 1 || b < 1 || a > bags || b > bags)
            throw Error(ErrorKind::parse, "bad tree edge at line " + std::to_string(lineno));
        t.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (bags < 0) throw Error(ErrorKind::parse, "missing solution line");
    return t;
}

void write_tree_structure(std::ostream& out, const TreeStructure& t, const std::string& kind,
                          long maxbag) {
    out << "s " << kind << ' ' << t.bags.size() << ' ' << maxbag << ' ' << t.n_graph << '\n';
    for (std::size_t i = 0; i < t.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : t.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : t.edges) out << a + 1 << ' ' << b + 1 << '\n';
    for (const auto& [node, sep] : t.annotated_separators) {
        out << "sep " << node + 1;
        for (Vertex v : sep) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [u, v] : t.virtual_edges) out << "virt " << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace

TreeDecomposition parse_td(std::istream& in) {
    TreeDecomposition t;
    static_cast<TreeStructure&>(t) = parse_tree_structure(in, "td");
    return t;
}

StrongTreeDecomposition parse_std(std::istream& in) {
    StrongTreeDecomposition t;
    static_cast<TreeStructure&>(t) = parse_tree_structure(in, "std");
    return t;
}

TreeDecomposition read_td_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    return parse_td(in);
}

StrongTreeDecomposition read_std_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    return parse_std(in);
}

void write_td(std::ostream& out, const TreeDecomposition& t) {
    write_tree_structure(out, t, "td", t.width() + 1);
}

void write_std(std::ostream& out, const StrongTreeDecomposition& s) {
    write_tree_structure(out, s, "std", s.width());
}

void write_td_file(const std::string& path, const TreeDecomposition& t) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse, "cannot open " + path + " for writing");
    write_td(out, t);
}

void write_std_file(const std::string& path, const StrongTreeDecomposition& s) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse, "cannot open " + path + " for writing");
    write_std(out, s);
}

}  // namespace tww
