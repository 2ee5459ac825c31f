#include "tww/synth.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace tww {

namespace {

[[noreturn]] void precondition(const std::string& msg) {
    throw Error(ErrorKind::precondition, msg);
}

[[noreturn]] void internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

// Map-based greedy collapse for hosts beyond the bitset solver's slot
// limit: repeatedly contract the valid pair minimizing the resulting
// maximum red degree.
ContractionSequence greedy_map_restricted(const Trigraph& g, const VertexSet& u) {
    Trigraph cur = g;
    std::vector<Vertex> live(u.begin(), u.end());
    ContractionSequence out;
    while (live.size() > 1) {
        int best = INT32_MAX;
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < live.size(); ++i)
            for (std::size_t j = i + 1; j < live.size(); ++j) {
                Trigraph probe = cur;
                probe.contract(live[i], live[j]);
                int score = probe.max_red_degree();
                if (score < best) {
                    best = score;
                    bi = i;
                    bj = j;
                }
            }
        out.push(live[bi], live[bj]);
        cur.contract(live[bi], live[bj]);
        live.erase(live.begin() + static_cast<long>(bj));
    }
    return out;
}

struct Piece {
    ContractionSequence seq;
    bool heuristic = false;
};

// Width-minimal collapse of u inside sim when the piece is small enough for
// the exact oracle, greedy otherwise.
Piece collapse_restricted(const Trigraph& sim, const VertexSet& u, const SynthOptions& opts) {
    if (u.size() <= 1) return {};
    if (static_cast<int>(u.size()) <= opts.parts_exact_limit && sim.num_vertices() <= 128) {
        OracleOptions o = opts.oracle;
        o.max_u = std::max(o.max_u, opts.parts_exact_limit);
        return {exact_tww_restricted(sim, u, o).witness, false};
    }
    if (sim.num_vertices() <= 128) return {greedy_restricted(sim, u), true};
    return {greedy_map_restricted(sim, u), true};
}

Piece collapse_plain(const Trigraph& sim, const SynthOptions& opts) {
    if (sim.num_vertices() <= 1) return {};
    if (static_cast<int>(sim.num_vertices()) <= opts.parts_exact_limit) {
        OracleOptions o = opts.oracle;
        o.max_n_plain = std::max(o.max_n_plain, opts.parts_exact_limit);
        return {exact_tww(sim, o).witness, false};
    }
    if (sim.num_vertices() <= 128) return {greedy_complete(sim), true};
    std::vector<Vertex> vs = sim.vertices();
    return {greedy_map_restricted(sim, VertexSet(vs.begin(), vs.end())), true};
}

void apply(Trigraph& sim, ContractionSequence& seq, const ContractionSequence& piece) {
    for (const ContractionStep& step : piece.steps) {
        sim.contract(step.survivor, step.absorbed);
        seq.push(step.survivor, step.absorbed);
    }
}

}  // namespace

SynthResult strong_tree_contract(const Trigraph& g, const StrongTreeDecomposition& sdec,
                                 const SynthOptions& opts) {
    if (!validate_std(g, sdec).empty())
        precondition("strong tree decomposition invalid for this graph");
    const int k = sdec.width();

    Trigraph sim = g;
    ContractionSequence seq;
    bool heuristic = false;

    // splice out empty bags upfront (their tree edges carry no graph edges)
    int n_nodes = sdec.node_count();
    std::vector<std::set<int>> adj(n_nodes);
    for (auto [a, b] : sdec.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<char> alive(n_nodes, 1);
    std::vector<VertexSet> bag = sdec.bags;
    for (int x = 0; x < n_nodes; ++x) {
        if (!bag[x].empty()) continue;
        std::vector<int> nbrs(adj[x].begin(), adj[x].end());
        for (int y : nbrs) adj[y].erase(x);
        for (std::size_t i = 1; i < nbrs.size(); ++i) {
            adj[nbrs[0]].insert(nbrs[i]);
            adj[nbrs[i]].insert(nbrs[0]);
        }
        adj[x].clear();
        alive[x] = 0;
    }
    int root = sdec.root;
    if (root < 0 || root >= n_nodes) precondition("root out of range");
    if (!alive[root]) {
        root = -1;
        for (int x = 0; x < n_nodes && root < 0; ++x)
            if (alive[x]) root = x;
        if (root < 0) return {};  // graph without vertices
    }

    std::vector<char> merged(n_nodes, 0);
    std::vector<Vertex> vnode(n_nodes, -1);
    for (int x = 0; x < n_nodes; ++x)
        if (alive[x] && bag[x].size() == 1) {
            merged[x] = 1;
            vnode[x] = *bag[x].begin();
        }

    auto alive_count = [&]() {
        int c = 0;
        for (int x = 0; x < n_nodes; ++x) c += alive[x];
        return c;
    };

    auto contract_bag = [&](int node) {
        // width-minimal collapse of the bag, then mark the node merged
        Piece piece = collapse_restricted(sim, bag[node], opts);
        heuristic = heuristic || piece.heuristic;
        apply(sim, seq, piece.seq);
        Vertex survivor = *bag[node].begin();
        bag[node] = {survivor};
        merged[node] = 1;
        vnode[node] = survivor;
        return survivor;
    };

    auto drop_leaf = [&](int node) {
        for (int y : adj[node]) adj[y].erase(node);
        adj[node].clear();
        alive[node] = 0;
    };

    int guard = 0;
    while (alive_count() >= 2) {
        if (++guard > 4 * n_nodes + static_cast<int>(g.num_vertices()) + 16)
            internal("bag-merging loop failed to make progress");

        // BFS depths from the root over alive nodes
        std::vector<int> parent(n_nodes, -2), depth(n_nodes, -1);
        std::vector<int> queue{root};
        parent[root] = -1;
        depth[root] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (int y : adj[x])
                if (parent[y] == -2) {
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
        }

        int leaf = -1;
        for (int x = 0; x < n_nodes; ++x) {
            if (!alive[x] || x == root || adj[x].size() != 1) continue;
            if (leaf < 0 || depth[x] > depth[leaf] || (depth[x] == depth[leaf] && x < leaf))
                leaf = x;
        }
        if (leaf < 0) internal("no leaf in a tree with two or more nodes");
        int p = parent[leaf];

        std::vector<int> kids;
        for (int y : adj[p])
            if (y != parent[p]) kids.push_back(y);
        std::sort(kids.begin(), kids.end());
        for (int c : kids)
            if (adj[c].size() != 1) internal("deepest-leaf parent has a non-leaf child");

        std::vector<int> merged_kids, unmerged_kids;
        for (int c : kids) (merged[c] ? merged_kids : unmerged_kids).push_back(c);

        if (merged_kids.size() >= 2) {
            int l1 = merged_kids[0], l2 = merged_kids[1];
            Vertex x = std::min(vnode[l1], vnode[l2]);
            Vertex y = std::max(vnode[l1], vnode[l2]);
            seq.push(x, y);
            sim.contract(x, y);
            int keep = vnode[l1] == x ? l1 : l2;
            int gone = keep == l1 ? l2 : l1;
            bag[keep] = {x};
            vnode[keep] = x;
            drop_leaf(gone);
        } else if (kids.size() == 1 && merged[kids[0]]) {
            int child = kids[0];
            Vertex bp = contract_bag(p);
            Vertex x = std::min(bp, vnode[child]);
            Vertex y = std::max(bp, vnode[child]);
            seq.push(x, y);
            sim.contract(x, y);
            bag[p] = {x};
            vnode[p] = x;
            drop_leaf(child);
        } else if (!unmerged_kids.empty() && merged_kids.size() <= 1) {
            contract_bag(unmerged_kids.front());
        } else {
            internal("no contraction rule applies");
        }
    }

    // the last node's bag holds every remaining vertex
    Piece final_piece = collapse_plain(sim, opts);
    heuristic = heuristic || final_piece.heuristic;
    apply(sim, seq, final_piece.seq);

    SynthResult result;
    result.sequence = std::move(seq);
    result.bound_name = bounds::Name::thm1;
    result.bound_params = {{{"k", k}}};
    result.bound = bounds::evaluate(result.bound_name, result.bound_params);
    result.heuristic_used = heuristic;
    WidthReport rep = verify_width(g, result.sequence);
    if (!rep.complete) internal("bag-merging produced an incomplete sequence");
    result.achieved_width = rep.width;
    if (!heuristic && !bounds::width_within(rep.width, result.bound_name, result.bound_params))
        internal("bag-merging exceeded the strong tree-width bound");
    return result;
}

ContractionSequence avoid_vertex_lift(const Trigraph& g, Vertex v, const ContractionSequence& s) {
    if (!g.has_vertex(v)) precondition("avoided vertex not in trigraph");
    WidthReport rep = verify_width(g, s);
    if (!rep.complete) precondition("avoid_vertex_lift needs a complete sequence");

    std::map<Vertex, VertexSet> parts;
    std::map<Vertex, Vertex> refined;  // part name -> representative of part minus v
    for (Vertex u : g.vertices()) {
        parts[u] = {u};
        refined[u] = u;
    }

    ContractionSequence out;
    for (const ContractionStep& step : s.steps) {
        VertexSet& pu = parts.at(step.survivor);
        VertexSet& pw = parts.at(step.absorbed);
        bool v_in_u = pu.count(v) != 0, v_in_w = pw.count(v) != 0;
        if ((v_in_u && pu.size() == 1) || (v_in_w && pw.size() == 1)) {
            // the step that first absorbs the still-singleton v: a no-op in
            // the refined world
            refined.at(step.survivor) =
                v_in_u ? refined.at(step.absorbed) : refined.at(step.survivor);
        } else {
            out.push(refined.at(step.survivor), refined.at(step.absorbed));
        }
        pu.insert(pw.begin(), pw.end());
        parts.erase(step.absorbed);
        refined.erase(step.absorbed);
    }
    if (out.size() + 2 != g.num_vertices()) internal("avoided-vertex lift lost steps");
    WidthReport lifted = verify_width(g, out);
    if (lifted.width > rep.width + 1) internal("avoided-vertex lift exceeded width + 1");
    return out;
}

ContractionSequence apex_lift(const Trigraph& g, Vertex v, const VertexSet& a,
                              const ContractionSequence& s) {
    if (!g.has_vertex(v)) precondition("apex not in trigraph");
    if (a.count(v)) precondition("apex must not be in the respected set");
    if (g.red_degree(v) > 0) precondition("apex has nonzero red degree");
    for (Vertex x : a)
        if (g.red_degree(x) > 0) precondition("respected vertex has nonzero red degree");

    Trigraph without = g;
    without.remove_vertex(v);
    RespectReport rep = check_respects(without, s, a);
    if (!rep.respects || !rep.complete)
        precondition("input sequence is not complete-respecting on g - v");
    int d = rep.width;

    const VertexSet& nv = g.black_neighbors(v);
    struct Halves {
        std::optional<Vertex> in, out;
    };
    std::map<Vertex, Halves> halves;
    for (Vertex u : without.vertices()) {
        if (a.count(u)) continue;
        if (nv.count(u))
            halves[u] = {u, std::nullopt};
        else
            halves[u] = {std::nullopt, u};
    }

    ContractionSequence out;
    for (const ContractionStep& step : s.steps) {
        Halves& hu = halves.at(step.survivor);
        Halves hw = halves.at(step.absorbed);
        if (hu.in && hw.in) out.push(*hu.in, *hw.in);
        if (!hu.in) hu.in = hw.in;
        if (hu.out && hw.out) out.push(*hu.out, *hw.out);
        if (!hu.out) hu.out = hw.out;
        halves.erase(step.absorbed);
    }

    VertexSet respected = a;
    respected.insert(v);
    RespectReport lifted = check_respects(g, out, respected);
    if (!lifted.respects || !lifted.complete)
        internal("apex lift produced a non-respecting or incomplete sequence");
    if (lifted.width > 2 * d + 2) internal("apex lift exceeded 2d + 2");
    return out;
}

ContractionSequence respect_lift(const Trigraph& g, const VertexSet& a,
                                 const ContractionSequence& base) {
    for (Vertex x : a) {
        if (!g.has_vertex(x)) precondition("respected vertex not in trigraph");
        if (g.red_degree(x) > 0) precondition("respected vertex has nonzero red degree");
    }
    if (a.empty()) {
        WidthReport rep = verify_width(g, base);
        if (!rep.complete) precondition("base sequence must be complete");
        return base;
    }
    Vertex pivot = *a.rbegin();
    VertexSet rest = a;
    rest.erase(pivot);
    Trigraph sub = g;
    sub.remove_vertex(pivot);
    ContractionSequence inner = respect_lift(sub, rest, base);
    ContractionSequence out = apex_lift(g, pivot, rest, inner);

    VertexSet others;
    for (Vertex u : g.vertices())
        if (!a.count(u)) others.insert(u);
    int base_width = verify_width(g.induced(others), base).width;
    RespectReport rep = check_respects(g, out, a);
    bounds::Params params{{{"a", static_cast<long long>(a.size())}, {"d", base_width}}};
    if (!bounds::width_within(rep.width, bounds::Name::cor_apex_iter, params))
        internal("iterated apex lift exceeded its bound");
    return out;
}

ContractionSequence restrict_sequence(const Trigraph& g, const VertexSet& keep,
                                      const ContractionSequence& s) {
    for (Vertex u : keep)
        if (!g.has_vertex(u)) precondition("restriction set not inside the graph");
    std::map<Vertex, std::optional<Vertex>> rep;
    for (Vertex u : g.vertices())
        rep[u] = keep.count(u) ? std::optional<Vertex>(u) : std::nullopt;
    ContractionSequence out;
    for (const ContractionStep& step : s.steps) {
        std::optional<Vertex> hu = rep.at(step.survivor);
        std::optional<Vertex> hw = rep.at(step.absorbed);
        if (hu && hw) {
            out.push(std::min(*hu, *hw), std::max(*hu, *hw));
            rep[step.survivor] = std::min(*hu, *hw);
        } else {
            rep[step.survivor] = hu ? hu : hw;
        }
        rep.erase(step.absorbed);
    }
    return out;
}

BlockSupplier oracle_block_supplier(const SynthOptions& opts) {
    return [opts](const Trigraph& block) -> std::pair<ContractionSequence, bool> {
        Piece piece = collapse_plain(block, opts);
        return {piece.seq, piece.heuristic};
    };
}

SynthResult compose_blocks(const Trigraph& g, const BlockCutTree& bct,
                           const BlockSupplier& per_block, const SynthOptions&) {
    if (g.num_vertices() == 0) precondition("empty graph");
    if (!is_connected(g)) precondition("compose_blocks needs a connected graph");
    {
        BlockCutTree fresh = block_cut_tree(g);
        if (fresh.blocks != bct.blocks || fresh.cut_vertices != bct.cut_vertices)
            precondition("block-cut tree inconsistent with the graph");
    }

    PendantHat hat = build_pendant_hat(g);
    Trigraph sim = hat.graph;
    std::map<Vertex, Vertex> pend = hat.pendant;
    ContractionSequence seq;
    int max_block_width = 0;
    bool heuristic = false;

    auto emit = [&](Vertex survivor, Vertex absorbed) {
        seq.push(survivor, absorbed);
        sim.contract(survivor, absorbed);
    };

    // Collapses one block inside sim. With a parent cut vertex the block is
    // folded into a fresh pendant blob for that vertex; without one (the
    // single-block case) the graph collapses completely.
    auto run_block = [&](const VertexSet& block, std::optional<Vertex> vc) {
        Trigraph piece = g.induced(block);
        auto [block_seq, heur] = per_block(piece);
        heuristic = heuristic || heur;
        WidthReport rep = verify_width(piece, block_seq);
        if (!rep.complete) precondition("block sequence is not complete");
        max_block_width = std::max(max_block_width, rep.width);

        ContractionSequence inner = vc ? avoid_vertex_lift(piece, *vc, block_seq) : block_seq;
        for (const ContractionStep& step : inner.steps) {
            Vertex pu = pend.at(step.survivor), pw = pend.at(step.absorbed);
            emit(std::min(pu, pw), std::max(pu, pw));
            pend[step.survivor] = std::min(pu, pw);
            pend.erase(step.absorbed);
            emit(step.survivor, step.absorbed);
        }

        Vertex remainder = -1;
        for (Vertex u : block) {
            if (vc && u == *vc) continue;
            if (sim.has_vertex(u)) {
                if (remainder >= 0) internal("block collapse left two representatives");
                remainder = u;
            }
        }
        if (remainder < 0) internal("block collapse lost its representative");

        Vertex q = pend.at(remainder);
        Vertex blob = std::min(remainder, q);
        emit(blob, std::max(remainder, q));
        pend.erase(remainder);
        if (vc) {
            Vertex pvc = pend.at(*vc);
            Vertex fresh = std::min(blob, pvc);
            emit(fresh, std::max(blob, pvc));
            pend[*vc] = fresh;
        }
    };

    if (bct.cut_vertices.empty()) {
        run_block(bct.blocks.at(0), std::nullopt);
    } else {
        Vertex root = *bct.cut_vertices.begin();
        std::function<void(Vertex, int)> process_cut = [&](Vertex c, int parent_block) {
            for (std::size_t b = 0; b < bct.blocks.size(); ++b) {
                if (static_cast<int>(b) == parent_block || !bct.blocks[b].count(c)) continue;
                for (Vertex c2 : bct.cut_vertices_of_block[b])
                    if (c2 != c) process_cut(c2, static_cast<int>(b));
                run_block(bct.blocks[b], c);
            }
        };
        process_cut(root, -1);
        Vertex pr = pend.at(root);
        emit(std::min(root, pr), std::max(root, pr));
    }

    if (sim.num_vertices() != 1) internal("block composition did not collapse the graph");

    SynthResult result;
    result.bound_name = bounds::Name::thm2_upper;
    result.bound_params = {{{"w", max_block_width}}};
    result.bound = bounds::evaluate(result.bound_name, result.bound_params);
    result.heuristic_used = heuristic;

    WidthReport hat_rep = verify_width(hat.graph, seq);
    if (!hat_rep.complete) internal("pendant-graph sequence incomplete");
    std::vector<Vertex> vs = g.vertices();
    result.sequence = restrict_sequence(hat.graph, VertexSet(vs.begin(), vs.end()), seq);
    WidthReport rep = verify_width(g, result.sequence);
    if (!rep.complete) internal("restricted sequence incomplete");
    if (rep.width > hat_rep.width) internal("restriction increased the verified width");
    result.achieved_width = rep.width;
    if (!heuristic && !bounds::width_within(rep.width, result.bound_name, result.bound_params))
        internal("block composition exceeded max block width + 2");
    return result;
}

SynthResult compose_adhesion(const Trigraph& g, const TreeDecomposition& t,
                             const PartSupplier& parts, const SynthOptions&) {
    if (!validate_td(g, t).empty()) precondition("tree decomposition invalid for this graph");

    Trigraph sim = g;
    ContractionSequence seq;
    int max_part_width = 0;
    auto children = t.children();

    std::function<void(int)> process = [&](int node) {
        for (int c : children[node]) process(c);

        TildePart part = build_tilde(g, t, node);
        ContractionSequence part_seq = parts(node, part);
        RespectReport rep = check_respects(part.graph, part_seq, part.parent_separator);
        if (!rep.respects || !rep.complete)
            precondition("part sequence for node " + std::to_string(node + 1) +
                         " is not complete-respecting");
        max_part_width = std::max(max_part_width, rep.width);

        // gadget vertices stand for the collapsed classes behind each child
        std::map<Vertex, Vertex> image;
        for (Vertex v : part.bag) image[v] = v;
        for (const TildeChild& child : part.children) {
            std::map<VertexSet, Vertex> survivor_of;
            for (Vertex x : subtree_vertices(t, child.node)) {
                if (child.separator.count(x) || !sim.has_vertex(x)) continue;
                VertexSet m;
                for (Vertex u : sim.black_neighbors(x))
                    if (child.separator.count(u)) m.insert(u);
                for (Vertex u : sim.red_neighbors(x))
                    if (child.separator.count(u))
                        internal("red edge into a child separator during composition");
                if (!survivor_of.emplace(std::move(m), x).second)
                    internal("two survivors share a separator neighborhood");
            }
            if (survivor_of.size() != child.gadget.size())
                internal("survivor classes disagree with the gadget construction");
            for (const GadgetVertex& gv : child.gadget) {
                auto it = survivor_of.find(gv.neighborhood);
                if (it == survivor_of.end()) internal("gadget class without survivor");
                image[gv.id] = it->second;
            }
        }

        for (const ContractionStep& step : part_seq.steps) {
            Vertex pu = image.at(step.survivor), pw = image.at(step.absorbed);
            seq.push(pu, pw);
            sim.contract(pu, pw);
            image.erase(step.absorbed);
        }
    };
    process(t.root);

    SynthResult result;
    result.sequence = std::move(seq);
    WidthReport rep = verify_width(g, result.sequence);
    if (!rep.complete) internal("adhesion composition did not collapse the graph");
    if (rep.width > max_part_width) internal("composition exceeded the maximum part width");
    result.achieved_width = rep.width;
    // default bound: the part-width maximum itself; pipelines overwrite it
    result.bound_name = bounds::Name::thm2_upper;
    result.bound_params = {{{"w", std::max(0, max_part_width - 2)}}};
    result.bound = bounds::evaluate(result.bound_name, result.bound_params);
    return result;
}

namespace {

VertexSet black_row_in(const Trigraph& g, Vertex v, const VertexSet& inside) {
    VertexSet out;
    for (Vertex u : g.black_neighbors(v))
        if (inside.count(u)) out.insert(u);
    return out;
}

// Greedy dedupe: while two pool vertices share their black neighborhood in
// sep, contract the pair minimizing the resulting maximum red degree.
void dedupe_by_separator_row(Trigraph& q, ContractionSequence& seq, std::set<Vertex>& pool,
                             const VertexSet& sep) {
    for (;;) {
        std::map<VertexSet, std::vector<Vertex>> classes;
        for (Vertex v : pool) classes[black_row_in(q, v, sep)].push_back(v);
        int best = INT32_MAX;
        std::pair<Vertex, Vertex> pick{-1, -1};
        for (const auto& [row, members] : classes) {
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    Trigraph probe = q;
                    probe.contract(members[i], members[j]);
                    int score = probe.max_red_degree();
                    if (score < best) {
                        best = score;
                        pick = {members[i], members[j]};
                    }
                }
        }
        if (pick.first < 0) return;
        q.contract(pick.first, pick.second);
        seq.push(pick.first, pick.second);
        pool.erase(pick.second);
    }
}

}  // namespace

ContractionSequence contract_tilde_bounded(const TildePart& part, int k, int w) {
    if (static_cast<int>(part.bag.size()) > w + 1)
        precondition("bag larger than the promised width");
    if (static_cast<int>(part.parent_separator.size()) > k)
        precondition("parent separator larger than the promised adhesion");
    for (const TildeChild& child : part.children) {
        if (static_cast<int>(child.separator.size()) > k)
            precondition("child separator larger than the promised adhesion");
        if (child.separator == part.parent_separator)
            precondition("child separator equals the parent separator; normalize first");
    }

    Trigraph q = part.graph;
    ContractionSequence seq;
    const VertexSet& sep = part.parent_separator;

    std::set<Vertex> accumulated;
    for (const TildeChild& child : part.children) {
        // fold the child clique respecting the parent separator: classes by
        // neighborhood inside sep are fixed, fold each to one vertex
        std::map<VertexSet, std::vector<Vertex>> classes;
        for (const GadgetVertex& gv : child.gadget) {
            VertexSet row;
            for (Vertex u : gv.neighborhood)
                if (sep.count(u)) row.insert(u);
            classes[row].push_back(gv.id);
        }
        std::set<Vertex> folded;
        for (const auto& [row, members] : classes) {
            Vertex survivor = members.front();
            for (std::size_t i = 1; i < members.size(); ++i) {
                q.contract(survivor, members[i]);
                seq.push(survivor, members[i]);
            }
            folded.insert(survivor);
        }
        // merge equal-row vertices across the accumulator and the fold
        std::set<Vertex> pool = accumulated;
        pool.insert(folded.begin(), folded.end());
        dedupe_by_separator_row(q, seq, pool, sep);
        accumulated = std::move(pool);
    }

    // residue: bag vertices outside the separator plus the accumulator
    std::set<Vertex> residue = accumulated;
    for (Vertex v : part.bag)
        if (!sep.count(v)) residue.insert(v);
    dedupe_by_separator_row(q, seq, residue, sep);

    RespectReport rep = check_respects(part.graph, seq, sep);
    if (!rep.respects || !rep.complete)
        internal("bounded part collapse is not complete-respecting");
    bounds::Params params{{{"k", k}, {"w", w}}};
    if (!bounds::width_within(rep.width, bounds::Name::lemma_width_adhesion, params))
        internal("bounded part collapse exceeded 3*2^(k-1) + max(w-k-2, 0)");
    return seq;
}

ContractionSequence tilde_to_hat(const TildePart& part) {
    for (std::size_t i = 0; i < part.children.size(); ++i)
        for (std::size_t j = i + 1; j < part.children.size(); ++j) {
            const VertexSet& a = part.children[i].separator;
            const VertexSet& b = part.children[j].separator;
            if (std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
                std::includes(b.begin(), b.end(), a.begin(), a.end()))
                precondition("child separators must be pairwise incomparable");
        }

    int k = 0;
    for (const TildeChild& child : part.children)
        k = std::max(k, static_cast<int>(child.separator.size()));

    Trigraph q = part.graph;
    ContractionSequence seq;
    for (const TildeChild& child : part.children) {
        if (child.gadget.size() <= 1) continue;
        std::map<VertexSet, Vertex> by_row;
        std::set<Vertex> remaining;
        for (const GadgetVertex& gv : child.gadget) {
            by_row[gv.neighborhood] = gv.id;
            remaining.insert(gv.id);
        }
        Vertex x = child.gadget.front().id;  // smallest id, smallest mask
        remaining.erase(x);
        // alternate-neighborhood targets first: toggling the separator
        // elements one at a time trades clique neighbors for separator
        // neighbors and keeps the red degree of x below 2^k
        VertexSet toggled = child.gadget.front().neighborhood;
        for (Vertex s : child.separator) {
            if (toggled.count(s))
                toggled.erase(s);
            else
                toggled.insert(s);
            auto it = by_row.find(toggled);
            if (it == by_row.end() || !remaining.count(it->second)) continue;
            q.contract(x, it->second);
            seq.push(x, it->second);
            remaining.erase(it->second);
        }
        for (Vertex rest : remaining) {
            q.contract(x, rest);
            seq.push(x, rest);
        }
    }

    WidthReport rep = verify_width(part.graph, seq);
    int cap = (1 << k) - 1;
    if (rep.width > cap) internal("gadget folding exceeded 2^k - 1");
    return seq;
}

namespace {

// Neighborhood with x and y identified into one placeholder.
VertexSet identified(const VertexSet& n, Vertex x, Vertex y, Vertex placeholder) {
    VertexSet out;
    for (Vertex u : n) out.insert(u == x || u == y ? placeholder : u);
    return out;
}

}  // namespace

ContractionSequence hat_from_torso(const HatPart& hat, const ContractionSequence& torso_seq) {
    int k = 1;
    std::vector<VertexSet> separators;
    for (const auto& [s, id] : hat.gadgets) {
        separators.push_back(s);
        k = std::max(k, static_cast<int>(s.size()));
    }
    Trigraph torso = complete_red_cliques(hat.graph.induced(hat.bag), separators);
    WidthReport torso_rep = verify_width(torso, torso_seq);
    if (!torso_rep.complete) precondition("torso sequence is not complete");
    int t = torso_rep.width;

    Trigraph q = hat.graph;
    std::set<Vertex> stars;
    for (const auto& [s, id] : hat.gadgets) stars.insert(id);

    ContractionSequence seq;
    for (const ContractionStep& step : torso_seq.steps) {
        // loop-head invariants: star neighborhoods form an antichain and
        // every star has red degree at most k
        for (Vertex a : stars) {
            if (q.red_degree(a) > k) internal("star red degree exceeded k at loop head");
            for (Vertex b : stars) {
                if (a == b) continue;
                VertexSet na = q.neighbors(a), nb = q.neighbors(b);
                if (std::includes(nb.begin(), nb.end(), na.begin(), na.end()))
                    internal("star neighborhoods nest at loop head");
            }
        }
        for (;;) {
            std::pair<Vertex, Vertex> pick{-1, -1};
            for (Vertex a : stars) {
                for (Vertex b : stars) {
                    if (a == b) continue;
                    VertexSet na = identified(q.neighbors(a), step.survivor, step.absorbed, -2);
                    VertexSet nb = identified(q.neighbors(b), step.survivor, step.absorbed, -2);
                    if (std::includes(nb.begin(), nb.end(), na.begin(), na.end())) {
                        pick = {std::min(a, b), std::max(a, b)};
                        break;
                    }
                }
                if (pick.first >= 0) break;
            }
            if (pick.first < 0) break;
            q.contract(pick.first, pick.second);
            seq.push(pick.first, pick.second);
            stars.erase(pick.second);
            if (q.red_degree(pick.first) > k + 1)
                internal("star red degree exceeded k + 1 after a merge");
        }
        q.contract(step.survivor, step.absorbed);
        seq.push(step.survivor, step.absorbed);
    }

    // all stars now see only the collapsed part vertex
    while (stars.size() > 1) {
        Vertex a = *stars.begin();
        Vertex b = *std::next(stars.begin());
        q.contract(std::min(a, b), std::max(a, b));
        seq.push(std::min(a, b), std::max(a, b));
        stars.erase(std::max(a, b));
    }
    if (!stars.empty()) {
        Vertex p = -1;
        for (Vertex u : q.vertices())
            if (!stars.count(u)) p = u;
        if (p < 0) internal("part vanished before the final merge");
        Vertex s = *stars.begin();
        q.contract(std::min(p, s), std::max(p, s));
        seq.push(std::min(p, s), std::max(p, s));
    }

    WidthReport rep = verify_width(hat.graph, seq);
    if (!rep.complete) internal("hat contraction incomplete");
    bounds::Params params{{{"k", k}, {"t", t}}};
    if (!bounds::width_within(rep.width, bounds::Name::torso_version, params))
        internal("hat contraction exceeded the torso-version bound");
    return seq;
}

}  // namespace tww
