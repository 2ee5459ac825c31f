#include "tww/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tww::families {

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// Platform-independent biased coin: compares the top 53 generator bits
// against an integer threshold.
bool coin(std::mt19937_64& rng, double p) {
    const double two53 = 9007199254740992.0;
    auto threshold = static_cast<std::uint64_t>(p * two53);
    return (rng() >> 11) < threshold;
}

int rand_below(std::mt19937_64& rng, int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

}  // namespace

Trigraph paley(int q) {
    if (!is_prime(q) || q % 4 != 1)
        throw Error(ErrorKind::domain, "paley requires a prime q = 1 (mod 4), got " + std::to_string(q));
    std::vector<char> residue(q, 0);
    for (long long x = 1; x < q; ++x) residue[(x * x) % q] = 1;
    Trigraph g = Trigraph::with_vertices(q);
    for (Vertex u = 0; u < q; ++u)
        for (Vertex v = u + 1; v < q; ++v)
            if (residue[(v - u) % q]) g.add_black_edge(u, v);
    return g;
}

StrongTreeDecomposition paley_std(int q) {
    if (!is_prime(q) || q % 4 != 1)
        throw Error(ErrorKind::domain, "paley requires a prime q = 1 (mod 4), got " + std::to_string(q));
    StrongTreeDecomposition s;
    s.n_graph = q;
    VertexSet big, small;
    for (Vertex v = 0; v < (q + 1) / 2; ++v) big.insert(v);
    for (Vertex v = (q + 1) / 2; v < q; ++v) small.insert(v);
    s.bags = {big, small};
    s.edges = {{0, 1}};
    return s;
}

Trigraph subdivided_clique(int n) {
    if (n < 2) throw Error(ErrorKind::domain, "subdivided_clique needs n >= 2");
    Trigraph g = Trigraph::with_vertices(n + n * (n - 1) / 2);
    int next = n;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            g.add_black_edge(i, next);
            g.add_black_edge(j, next);
            ++next;
        }
    return g;
}

Trigraph complete(int n) {
    Trigraph g = Trigraph::with_vertices(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_black_edge(u, v);
    return g;
}

Trigraph path(int n) {
    Trigraph g = Trigraph::with_vertices(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_black_edge(v, v + 1);
    return g;
}

Trigraph cycle(int n) {
    if (n < 3) throw Error(ErrorKind::domain, "cycle needs n >= 3");
    Trigraph g = path(n);
    g.add_black_edge(n - 1, 0);
    return g;
}

Trigraph star(int leaves) {
    Trigraph g = Trigraph::with_vertices(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.add_black_edge(0, v);
    return g;
}

Trigraph grid(int rows, int cols) {
    Trigraph g = Trigraph::with_vertices(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_black_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_black_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

Trigraph caterpillar(int spine, int legs_per_vertex) {
    Trigraph g = Trigraph::with_vertices(spine + spine * legs_per_vertex);
    for (Vertex v = 0; v + 1 < spine; ++v) g.add_black_edge(v, v + 1);
    int next = spine;
    for (Vertex v = 0; v < spine; ++v)
        for (int l = 0; l < legs_per_vertex; ++l) g.add_black_edge(v, next++);
    return g;
}

Trigraph complete_binary_tree(int depth) {
    int n = (1 << (depth + 1)) - 1;
    Trigraph g = Trigraph::with_vertices(n);
    for (Vertex v = 1; v < n; ++v) g.add_black_edge(v, (v - 1) / 2);
    return g;
}

Trigraph spider(int legs, int leg_length) {
    Trigraph g = Trigraph::with_vertices(1 + legs * leg_length);
    int next = 1;
    for (int l = 0; l < legs; ++l) {
        Vertex prev = 0;
        for (int i = 0; i < leg_length; ++i) {
            g.add_black_edge(prev, next);
            prev = next++;
        }
    }
    return g;
}

Trigraph gnp(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Trigraph g = Trigraph::with_vertices(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng, p)) g.add_black_edge(u, v);
    return g;
}

Trigraph block_glue(const std::vector<Trigraph>& blocks, const std::vector<Vertex>& attach_at) {
    if (blocks.empty()) throw Error(ErrorKind::domain, "block_glue needs at least one block");
    if (attach_at.size() + 1 != blocks.size())
        throw Error(ErrorKind::domain, "block_glue needs one attachment vertex per block after the first");
    Trigraph g = blocks[0];
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        Vertex at = attach_at[i - 1];
        if (!g.has_vertex(at))
            throw Error(ErrorKind::domain, "attachment vertex " + std::to_string(at) + " not present");
        Vertex offset = g.max_vertex_id() + 1;
        auto remap = [&](Vertex v) { return v == 0 ? at : offset + v - 1; };
        for (Vertex v : blocks[i].vertices()) g.add_vertex(remap(v));
        for (Vertex v : blocks[i].vertices()) {
            for (Vertex u : blocks[i].black_neighbors(v))
                if (u > v) g.add_black_edge(remap(v), remap(u));
            for (Vertex u : blocks[i].red_neighbors(v))
                if (u > v) g.add_red_edge(remap(v), remap(u));
        }
    }
    return g;
}

Trigraph block_glue_from_spec(const std::string& spec) {
    std::vector<Trigraph> blocks;
    std::vector<Vertex> attach;
    std::stringstream ss(spec);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        if (entry.empty()) continue;
        std::string name = entry;
        auto at_pos = entry.find('@');
        if (at_pos != std::string::npos) {
            name = entry.substr(0, at_pos);
            attach.push_back(std::stoi(entry.substr(at_pos + 1)));
        } else if (!blocks.empty()) {
            throw Error(ErrorKind::domain, "block entry after the first needs '@vertex': " + entry);
        }
        if (name.size() < 2) throw Error(ErrorKind::domain, "bad block spec entry: " + entry);
        int size = std::stoi(name.substr(1));
        switch (name[0]) {
            case 'K': blocks.push_back(complete(size)); break;
            case 'C': blocks.push_back(cycle(size)); break;
            case 'P': blocks.push_back(path(size)); break;
            default: throw Error(ErrorKind::domain, "unknown block kind in spec: " + entry);
        }
    }
    return block_glue(blocks, attach);
}

GraphWithStd random_with_std(int bags, int width, double density, std::uint64_t seed) {
    if (bags < 1 || width < 1) throw Error(ErrorKind::domain, "random_with_std needs bags, width >= 1");
    std::mt19937_64 rng(seed);
    StrongTreeDecomposition s;
    // random tree over bag nodes
    for (int t = 1; t < bags; ++t) s.edges.emplace_back(rand_below(rng, t), t);
    Vertex next = 0;
    s.bags.resize(bags);
    for (int t = 0; t < bags; ++t) {
        int size = 1 + rand_below(rng, width);
        if (t == 0) size = width;  // pin the width
        for (int i = 0; i < size; ++i) s.bags[t].insert(next++);
    }
    s.n_graph = next;
    Trigraph g = Trigraph::with_vertices(next);
    for (int t = 0; t < bags; ++t)
        for (Vertex u : s.bags[t])
            for (Vertex v : s.bags[t])
                if (u < v && coin(rng, density)) g.add_black_edge(u, v);
    for (auto [a, b] : s.edges) {
        bool any = false;
        for (Vertex u : s.bags[a])
            for (Vertex v : s.bags[b])
                if (coin(rng, density)) {
                    g.add_black_edge(u, v);
                    any = true;
                }
        if (!any)  // keep the instance connected
            g.add_black_edge(*s.bags[a].begin(), *s.bags[b].begin());
    }
    return {std::move(g), std::move(s)};
}

GraphWithTd random_with_td(int nodes, int width, int adhesion, double density, std::uint64_t seed) {
    if (nodes < 1 || width < 1 || adhesion < 1 || adhesion > width)
        throw Error(ErrorKind::domain, "random_with_td parameter out of range");
    std::mt19937_64 rng(seed);
    TreeDecomposition t;
    t.bags.resize(nodes);

    // bounded fanout keeps gadget graphs small: <= 3 children at the root,
    // <= 4 elsewhere
    std::vector<int> parent(nodes, -1);
    std::vector<int> child_count(nodes, 0);
    for (int x = 1; x < nodes; ++x) {
        int p;
        do {
            p = rand_below(rng, x);
        } while (child_count[p] >= (p == 0 ? 3 : 4));
        parent[x] = p;
        ++child_count[p];
        t.edges.emplace_back(p, x);
    }

    Vertex next = 0;
    for (int i = 0; i <= width; ++i) t.bags[0].insert(next++);
    for (int x = 1; x < nodes; ++x) {
        const VertexSet& pbag = t.bags[parent[x]];
        std::vector<Vertex> pool(pbag.begin(), pbag.end());
        int sep = 1 + rand_below(rng, adhesion);
        sep = std::min<int>(sep, static_cast<int>(pool.size()));
        for (int i = 0; i < sep; ++i) {
            int j = i + rand_below(rng, static_cast<int>(pool.size()) - i);
            std::swap(pool[i], pool[j]);
            t.bags[x].insert(pool[i]);
        }
        int extra = 1 + rand_below(rng, std::max(1, width + 1 - sep));
        for (int i = 0; i < extra && static_cast<int>(t.bags[x].size()) < width + 1; ++i)
            t.bags[x].insert(next++);
    }
    t.n_graph = next;

    Trigraph g = Trigraph::with_vertices(next);
    for (int x = 0; x < nodes; ++x)
        for (Vertex u : t.bags[x])
            for (Vertex v : t.bags[x])
                if (u < v && !g.has_edge(u, v) && coin(rng, density)) g.add_black_edge(u, v);
    return {std::move(g), std::move(t)};
}

Trigraph random_tree(int n, std::uint64_t seed) {
    if (n <= 0) throw Error(ErrorKind::domain, "random_tree needs n >= 1");
    Trigraph g = Trigraph::with_vertices(n);
    if (n == 1) return g;
    if (n == 2) {
        g.add_black_edge(0, 1);
        return g;
    }
    std::mt19937_64 rng(seed);
    std::vector<int> pruefer(n - 2);
    for (int& x : pruefer) x = rand_below(rng, n);
    std::vector<int> degree(n, 1);
    for (int x : pruefer) ++degree[x];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);
    for (int x : pruefer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        g.add_black_edge(leaf, x);
        if (--degree[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    g.add_black_edge(a, b);
    return g;
}

}  // namespace tww::families
