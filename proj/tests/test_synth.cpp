#include <random>

#include "doctest.h"
#include "tww/families.hpp"
#include "tww/oracle.hpp"
#include "tww/synth.hpp"

using namespace tww;

namespace {

PartSupplier oracle_part_supplier() {
    return [](int, const TildePart& part) {
        OracleOptions opts;
        opts.max_n_respect = 12;
        return exact_tww_respecting(part.graph, part.parent_separator, opts).witness;
    };
}

// bag {0,1,2} plus children behind the given separators, each realizing
// every neighborhood of its separator
struct GadgetInstance {
    Trigraph g;
    TreeDecomposition t;
};

GadgetInstance antichain_instance(const std::vector<VertexSet>& separators) {
    GadgetInstance inst;
    inst.t.bags.push_back({0, 1, 2});
    Vertex next = 3;
    int node = 1;
    for (const VertexSet& sep : separators) {
        VertexSet bag = sep;
        unsigned full = 1u << sep.size();
        for (unsigned m = 0; m < full; ++m) bag.insert(next + static_cast<Vertex>(m));
        inst.t.bags.push_back(bag);
        inst.t.edges.emplace_back(0, node++);
        next += static_cast<Vertex>(full);
    }
    inst.g = Trigraph::with_vertices(next);
    inst.g.add_black_edge(0, 1);
    inst.g.add_black_edge(1, 2);
    next = 3;
    for (const VertexSet& sep : separators) {
        std::vector<Vertex> ordered(sep.begin(), sep.end());
        unsigned full = 1u << sep.size();
        for (unsigned m = 0; m < full; ++m) {
            for (std::size_t i = 0; i < ordered.size(); ++i)
                if (m & (1u << i)) inst.g.add_black_edge(next, ordered[i]);
            ++next;
        }
    }
    inst.t.n_graph = next;
    return inst;
}

}  // namespace

TEST_CASE("single-bag strong decomposition reduces to the exact oracle") {
    Trigraph g = families::complete(3);
    StrongTreeDecomposition s;
    s.bags = {{0, 1, 2}};
    s.n_graph = 3;
    SynthResult r = strong_tree_contract(g, s);
    CHECK(r.achieved_width == 0);
    CHECK_FALSE(r.heuristic_used);
}

TEST_CASE("a star with singleton bags contracts within the width-1 budget") {
    int leaves = 6;
    Trigraph g = families::star(leaves);
    StrongTreeDecomposition s;
    s.bags.push_back({0});
    for (Vertex v = 1; v <= leaves; ++v) {
        s.bags.push_back({v});
        s.edges.emplace_back(0, v);
    }
    s.n_graph = leaves + 1;
    SynthResult r = strong_tree_contract(g, s);
    CHECK(r.achieved_width <= 2);
    CHECK(r.bound.width_cap == 3);  // floor(3/2 + 1 + (1 + 1 + 0)/2)
}

TEST_CASE("paley(13) with its two-bag split stays within the bag-size bound") {
    Trigraph g = families::paley(13);
    StrongTreeDecomposition s = families::paley_std(13);
    SynthResult r = strong_tree_contract(g, s);
    CHECK(verify_width(g, r.sequence).width == r.achieved_width);
    CHECK(r.achieved_width <= r.bound.width_cap);  // thm1 at k = 7
    CHECK(r.achieved_width >= 6);                  // the exact twin-width of paley(13)
}

TEST_CASE("avoided vertex: isolated vertices never cost width") {
    Trigraph g = families::complete(4);
    g.add_vertex(9);
    ExactResult base = exact_tww(g);
    ContractionSequence lifted = avoid_vertex_lift(g, 9, base.witness);
    CHECK(verify_width(g, lifted).width == base.width);
    for (const ContractionStep& s : lifted.steps) {
        CHECK(s.survivor != 9);
        CHECK(s.absorbed != 9);
    }
}

TEST_CASE("avoided vertex on K3 and C5 within one extra unit") {
    Trigraph k3 = families::complete(3);
    ContractionSequence s3 = exact_tww(k3).witness;
    CHECK(verify_width(k3, avoid_vertex_lift(k3, 1, s3)).width <= 1);

    Trigraph c5 = families::cycle(5);
    ExactResult base = exact_tww(c5);
    REQUIRE(base.width == 2);
    for (Vertex v : c5.vertices()) {
        ContractionSequence lifted = avoid_vertex_lift(c5, v, base.witness);
        CHECK(verify_width(c5, lifted).width <= 3);
        CHECK(lifted.size() == c5.num_vertices() - 2);
    }
}

TEST_CASE("apex lift over the star center") {
    Trigraph g = families::star(3);
    Trigraph leaves_only = g;
    leaves_only.remove_vertex(0);
    ContractionSequence s = exact_tww(leaves_only).witness;  // width 0
    ContractionSequence lifted = apex_lift(g, 0, {}, s);
    RespectReport rep = check_respects(g, lifted, {0});
    CHECK(rep.respects);
    CHECK(rep.complete);
    CHECK(rep.width <= 2);
}

TEST_CASE("apex lift respects its bound on random instances") {
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 40; ++iter) {
        Trigraph g = families::gnp(7, 0.45, rng());
        Vertex v = static_cast<Vertex>(rng() % 7);
        VertexSet a;
        while (a.size() < rng() % 3) {
            Vertex x = static_cast<Vertex>(rng() % 7);
            if (x != v) a.insert(x);
        }
        Trigraph without = g;
        without.remove_vertex(v);
        ExactResult base = exact_tww_respecting(without, a);
        ContractionSequence lifted = apex_lift(g, v, a, base.witness);
        VertexSet av = a;
        av.insert(v);
        RespectReport rep = check_respects(g, lifted, av);
        CHECK(rep.respects);
        CHECK(rep.complete);
        CHECK(rep.width <= 2 * base.width + 2);
    }
}

TEST_CASE("respect lift: empty set returns the base sequence") {
    Trigraph g = families::cycle(5);
    ContractionSequence base = exact_tww(g).witness;
    CHECK(respect_lift(g, {}, base) == base);
}

TEST_CASE("respect lift of two apices over a cograph stays within width 6") {
    // 4-vertex cograph (K2 + K2 join) plus two isolated-from-red apices
    Trigraph g = Trigraph::with_vertices(6);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v)
            if (!((u == 0 && v == 1) || (u == 2 && v == 3))) g.add_black_edge(u, v);
    g.add_black_edge(4, 0);
    g.add_black_edge(4, 2);
    g.add_black_edge(5, 1);
    VertexSet a{4, 5};
    Trigraph core = g.induced({0, 1, 2, 3});
    ExactResult base = exact_tww(core);
    REQUIRE(base.width == 0);
    ContractionSequence lifted = respect_lift(g, a, base.witness);
    RespectReport rep = check_respects(g, lifted, a);
    CHECK(rep.respects);
    CHECK(rep.complete);
    CHECK(rep.width <= 6);
}

TEST_CASE("restriction to the whole graph is the identity") {
    Trigraph g = families::gnp(7, 0.5, 5);
    ContractionSequence s = exact_tww(g).witness;
    std::vector<Vertex> vs = g.vertices();
    CHECK(restrict_sequence(g, VertexSet(vs.begin(), vs.end()), s) == s);
    CHECK(restrict_sequence(g, {3}, s).empty());
}

TEST_CASE("restriction never increases the verified width") {
    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 40; ++iter) {
        Trigraph g = families::gnp(8, 0.5, rng());
        ContractionSequence s = greedy_complete(g);
        VertexSet keep;
        for (Vertex v : g.vertices())
            if (rng() % 2) keep.insert(v);
        if (keep.empty()) continue;
        ContractionSequence restricted = restrict_sequence(g, keep, s);
        CHECK(verify_width(g.induced(keep), restricted).width <= verify_width(g, s).width);
        CHECK(verify_width(g.induced(keep), restricted).complete);
    }
}

TEST_CASE("two triangles at a cut vertex compose within width 2") {
    Trigraph g = families::block_glue_from_spec("K3;K3@0");
    SynthResult r = compose_blocks(g, block_cut_tree(g), oracle_block_supplier({}));
    CHECK(r.achieved_width <= 2);
    CHECK_FALSE(r.heuristic_used);
    CHECK(exact_tww(g).width <= 2);
}

TEST_CASE("a single block costs at most its own width plus two") {
    Trigraph g = families::cycle(5);
    SynthResult r = compose_blocks(g, block_cut_tree(g), oracle_block_supplier({}));
    CHECK(r.achieved_width <= 4);
    CHECK(verify_width(g, r.sequence).complete);
}

TEST_CASE("trees compose within width 2") {
    std::mt19937_64 rng(59);
    for (int iter = 0; iter < 12; ++iter) {
        Trigraph t = families::random_tree(4 + static_cast<int>(rng() % 9), rng());
        SynthResult r = compose_blocks(t, block_cut_tree(t), oracle_block_supplier({}));
        CHECK(r.achieved_width <= 2);
    }
}

TEST_CASE("block sandwich on small glued graphs") {
    std::vector<std::string> specs{"K3;K3@0", "K4;K3@1", "C4;K3@2;P3@0", "K2;K2@1;K2@2",
                                   "C5;K3@3"};
    for (const std::string& spec : specs) {
        Trigraph g = families::block_glue_from_spec(spec);
        REQUIRE(g.num_vertices() <= 9);
        BlockCutTree bct = block_cut_tree(g);
        int lower = 0;
        for (const VertexSet& c : bct.blocks)
            lower = std::max(lower, exact_tww(g.induced(c)).width);
        int exact = exact_tww(g).width;
        SynthResult r = compose_blocks(g, bct, oracle_block_supplier({}));
        CHECK(lower <= exact);
        CHECK(exact <= r.achieved_width);
        CHECK(r.achieved_width <= lower + 2);
    }
}

TEST_CASE("adhesion composition over the three-bag path") {
    Trigraph g = families::path(6);
    TreeDecomposition t;
    t.bags = {{0, 1, 2}, {2, 3, 4}, {4, 5}};
    t.edges = {{0, 1}, {1, 2}};
    t.n_graph = 6;
    REQUIRE(validate_td(g, t).empty());
    SynthResult r = compose_adhesion(g, t, oracle_part_supplier());
    CHECK(verify_width(g, r.sequence).complete);
    CHECK(exact_tww(g).width == 1);
    CHECK(r.achieved_width >= 1);
}

TEST_CASE("single-node decomposition composes to the part sequence") {
    Trigraph g = families::cycle(4);
    TreeDecomposition t;
    t.bags = {{0, 1, 2, 3}};
    t.n_graph = 4;
    SynthResult r = compose_adhesion(g, t, oracle_part_supplier());
    CHECK(verify_width(g, r.sequence).complete);
}

TEST_CASE("bounded part collapse honours the width/adhesion formula") {
    // k = 1, w = 2: bound is 3
    Trigraph g = Trigraph::with_vertices(6);
    g.add_black_edge(0, 1);
    g.add_black_edge(1, 2);
    g.add_black_edge(3, 1);  // child realizes {1} and {} on separator {1}
    TreeDecomposition t;
    t.bags = {{0, 1, 2}, {1, 3, 4, 5}};
    t.edges = {{0, 1}};
    t.n_graph = 6;
    TildePart part = build_tilde(g, t, 0);
    ContractionSequence seq = contract_tilde_bounded(part, 1, 2);
    RespectReport rep = check_respects(part.graph, seq, part.parent_separator);
    CHECK(rep.respects);
    CHECK(rep.complete);
    CHECK(rep.width <= 3);
}

TEST_CASE("adhesion pipeline: bounded parts compose under the global bound") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 10; ++iter) {
        auto [g, raw] = families::random_with_td(6, 4, 2, 0.5, rng());
        TreeDecomposition t = normalize_siblings(raw);
        int k = std::max(1, t.adhesion());
        int w = t.width();
        SynthResult r = compose_adhesion(g, t, [&](int, const TildePart& part) {
            return contract_tilde_bounded(part, k, w);
        });
        bounds::Params params{{{"k", k}, {"w", w}}};
        CHECK(bounds::width_within(r.achieved_width, bounds::Name::lemma_width_adhesion, params));
    }
}

TEST_CASE("gadget folding: one vertex per child is a no-op") {
    GadgetInstance inst = antichain_instance({});
    TildePart part = build_tilde(inst.g, inst.t, 0);
    CHECK(tilde_to_hat(part).empty());
}

TEST_CASE("gadget folding stays below 2^k with fully realized separators") {
    GadgetInstance inst = antichain_instance({{0, 1}, {1, 2}, {0, 2}});
    TildePart part = build_tilde(inst.g, inst.t, 0);
    REQUIRE(part.children.size() == 3);
    for (const TildeChild& c : part.children) REQUIRE(c.gadget.size() == 4);
    ContractionSequence seq = tilde_to_hat(part);
    CHECK(seq.size() == 9);  // each clique of 4 folds into its anchor
    WidthReport rep = verify_width(part.graph, seq);
    CHECK(rep.width <= 3);  // 2^2 - 1

    // the anchors' red degree never exceeds 2^k - 1 along the fold
    std::set<Vertex> anchors;
    for (const TildeChild& c : part.children) anchors.insert(c.gadget.front().id);
    verify_width_trace(part.graph, seq, [&](const Trigraph& q, std::size_t) {
        for (Vertex x : anchors)
            if (q.has_vertex(x)) CHECK(q.red_degree(x) <= 3);
    });
}

TEST_CASE("gadget folding rejects nested separators") {
    GadgetInstance inst = antichain_instance({{0, 1}, {0}});
    TildePart part = build_tilde(inst.g, inst.t, 0);
    CHECK_THROWS_AS(tilde_to_hat(part), Error);
}

TEST_CASE("hat contraction from a torso sequence: no gadgets means the torso sequence") {
    Trigraph g = families::cycle(4);
    HatPart hat = build_hat_from_separators(g, {});
    ContractionSequence torso_seq = exact_tww(g).witness;
    ContractionSequence seq = hat_from_torso(hat, torso_seq);
    CHECK(verify_width(g, seq).complete);
}

TEST_CASE("hat contraction bound at k = 2") {
    // bag on 4 vertices, two incomparable 2-separators
    Trigraph g = families::path(4);
    HatPart hat = build_hat_from_separators(g, {{0, 1}, {2, 3}});
    Trigraph torso = complete_red_cliques(g, {{0, 1}, {2, 3}});
    OracleOptions opts;
    ContractionSequence torso_seq = exact_tww(torso, opts).witness;
    int t = verify_width(torso, torso_seq).width;
    ContractionSequence seq = hat_from_torso(hat, torso_seq);
    WidthReport rep = verify_width(hat.graph, seq);
    CHECK(rep.complete);
    bounds::Params params{{{"k", 2}, {"t", t}}};
    CHECK(bounds::width_within(rep.width, bounds::Name::torso_version, params));
}

TEST_CASE("hat contraction on random instances with k in {2,3}") {
    std::mt19937_64 rng(67);
    for (int iter = 0; iter < 15; ++iter) {
        int n = 5 + static_cast<int>(rng() % 3);
        Trigraph g = families::gnp(n, 0.45, rng());
        int k = 2 + static_cast<int>(rng() % 2);
        std::vector<VertexSet> seps;
        for (int s = 0; s < 2; ++s) {
            VertexSet sep;
            while (static_cast<int>(sep.size()) < k)
                sep.insert(static_cast<Vertex>(rng() % n));
            bool comparable = false;
            for (const VertexSet& other : seps)
                if (std::includes(other.begin(), other.end(), sep.begin(), sep.end()) ||
                    std::includes(sep.begin(), sep.end(), other.begin(), other.end()))
                    comparable = true;
            if (!comparable) seps.push_back(sep);
        }
        HatPart hat = build_hat_from_separators(g, seps);
        Trigraph torso = complete_red_cliques(g, seps);
        ContractionSequence torso_seq = exact_tww(torso).witness;
        ContractionSequence seq = hat_from_torso(hat, torso_seq);
        CHECK(verify_width(hat.graph, seq).complete);
    }
}
