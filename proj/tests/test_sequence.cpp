#include <random>
#include <sstream>

#include "doctest.h"
#include "tww/families.hpp"
#include "tww/io.hpp"
#include "tww/oracle.hpp"
#include "tww/sequence.hpp"

using namespace tww;

TEST_CASE("a single edge contracts with width 0") {
    Trigraph g = families::path(2);
    ContractionSequence s;
    s.push(0, 1);
    WidthReport r = verify_width(g, s);
    CHECK(r.width == 0);
    CHECK(r.complete);
}

TEST_CASE("P4 with the pair-then-merge sequence has width 1") {
    Trigraph g = families::path(4);  // 0-1-2-3
    ContractionSequence s;
    s.push(0, 1);
    s.push(2, 3);
    s.push(0, 2);
    WidthReport r = verify_width(g, s);
    CHECK(r.width == 1);
    CHECK(r.per_step_max_red_degree == std::vector<int>{1, 1, 0});
    CHECK(r.complete);
}

TEST_CASE("every complete sequence of C5 has width at least 2") {
    Trigraph g = families::cycle(5);
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 50; ++iter) {
        Trigraph cur = g;
        ContractionSequence s;
        while (cur.num_vertices() > 1) {
            std::vector<Vertex> vs = cur.vertices();
            Vertex a = vs[rng() % vs.size()], b;
            do {
                b = vs[rng() % vs.size()];
            } while (b == a);
            s.push(std::min(a, b), std::max(a, b));
            cur.contract(std::min(a, b), std::max(a, b));
        }
        CHECK(verify_width(g, s).width >= 2);
    }
}

TEST_CASE("steps touching dead or absent vertices report the offending index") {
    Trigraph g = families::path(4);
    ContractionSequence s;
    s.push(0, 1);
    s.push(2, 1);  // 1 is dead here
    try {
        verify_width(g, s);
        FAIL("expected invalid-sequence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_sequence);
        CHECK(e.index() == 1);
    }
}

TEST_CASE("width accounts for red edges already present in the input") {
    Trigraph g = Trigraph::with_vertices(3);
    g.add_red_edge(0, 1);
    g.add_red_edge(0, 2);
    CHECK(verify_width(g, {}).width == 2);
}

TEST_CASE("respecting the empty set is vacuous; completeness means one vertex") {
    Trigraph g = families::path(3);
    ContractionSequence s;
    s.push(0, 2);
    RespectReport r = check_respects(g, s, {});
    CHECK(r.respects);
    CHECK_FALSE(r.complete);
    s.push(0, 1);
    r = check_respects(g, s, {});
    CHECK(r.respects);
    CHECK(r.complete);
}

TEST_CASE("star leaves are twins with respect to the center") {
    Trigraph g = families::star(3);  // center 0, leaves 1..3
    ContractionSequence s;
    s.push(1, 2);
    s.push(1, 3);
    RespectReport r = check_respects(g, s, {0});
    CHECK(r.respects);
    CHECK(r.complete);  // one non-A vertex left, <= 2^1
    CHECK(r.width == 0);
}

TEST_CASE("merging vertices with different A-neighborhoods violates at that step") {
    Trigraph g = families::path(4);  // 0-1-2-3, A = {0}
    ContractionSequence s;
    s.push(1, 2);  // 1 sees 0, 2 does not: red edge lands on 0
    RespectReport r = check_respects(g, s, {0});
    CHECK_FALSE(r.respects);
    CHECK(r.violation_index == 0);
}

TEST_CASE("contracting an A-vertex is a violation") {
    Trigraph g = families::path(4);
    ContractionSequence s;
    s.push(0, 2);
    RespectReport r = check_respects(g, s, {0});
    CHECK_FALSE(r.respects);
    CHECK(r.violation_index == 0);
}

TEST_CASE("check_respects rejects sets with initial red degree") {
    Trigraph g = Trigraph::with_vertices(2);
    g.add_red_edge(0, 1);
    CHECK_THROWS_AS(check_respects(g, {}, {0}), Error);
}

TEST_CASE("a complete respecting sequence leaves at most 2^|A| vertices besides A") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 40; ++iter) {
        Trigraph g = families::gnp(7, 0.5, rng());
        VertexSet a;
        a.insert(static_cast<Vertex>(rng() % 7));
        if (rng() % 2) a.insert(static_cast<Vertex>(rng() % 7));
        ExactResult r = exact_tww_respecting(g, a);
        RespectReport rep = check_respects(g, r.witness, a);
        CHECK(rep.respects);
        CHECK(rep.complete);
        std::size_t outside = g.num_vertices() - a.size() - r.witness.size();
        CHECK(outside <= (std::size_t{1} << a.size()));
    }
}

TEST_CASE("sequence files round-trip") {
    ContractionSequence s;
    s.push(0, 4);
    s.push(2, 0);
    std::stringstream ss;
    write_seq(ss, s);
    CHECK(ss.str() == "1 5\n3 1\n");
    std::stringstream in("c comment\n1 5\n3 1\n");
    CHECK(parse_seq(in) == s);
}

TEST_CASE("gr files round-trip including red edges") {
    Trigraph g = Trigraph::with_vertices(4);
    g.add_black_edge(0, 1);
    g.add_black_edge(1, 2);
    g.add_red_edge(2, 3);
    std::stringstream ss;
    write_gr(ss, g);
    std::stringstream in(ss.str());
    CHECK(parse_gr(in) == g);
}

TEST_CASE("gr parsing normalizes parallel edges, red wins") {
    std::stringstream in("p tww 3 3\n1 2\nr 1 2\n2 3\n");
    Trigraph g = parse_gr(in);
    CHECK(g.has_red_edge(0, 1));
    CHECK_FALSE(g.has_black_edge(0, 1));
    CHECK(g.has_black_edge(1, 2));
}

TEST_CASE("gr parsing rejects loops and count mismatches") {
    std::stringstream a("p tww 2 1\n1 1\n");
    CHECK_THROWS_AS(parse_gr(a), Error);
    std::stringstream b("p tww 2 2\n1 2\n");
    CHECK_THROWS_AS(parse_gr(b), Error);
}

TEST_CASE("restricted-sequence checking") {
    Trigraph g = families::path(5);
    ContractionSequence s;
    s.push(0, 1);
    s.push(0, 2);
    RestrictedReport r = check_restricted(g, s, {0, 1, 2});
    CHECK(r.valid);
    CHECK(r.complete);  // |U| - 1 steps collapse U into one part
    CHECK(r.width == verify_width(g, s).width);

    ContractionSequence bad;
    bad.push(0, 3);
    RestrictedReport rb = check_restricted(g, bad, {0, 1, 2});
    CHECK_FALSE(rb.valid);
    CHECK(rb.violation_index == 0);

    ContractionSequence partial;
    partial.push(0, 1);
    CHECK_FALSE(check_restricted(g, partial, {0, 1, 2}).complete);
}

TEST_CASE("per-step report matches fresh prefix recomputation") {
    std::mt19937_64 rng(71);
    Trigraph g = families::gnp(8, 0.5, rng());
    ContractionSequence s = greedy_complete(g);
    WidthReport rep = verify_width(g, s);
    for (std::size_t cut = 0; cut <= s.size(); ++cut) {
        ContractionSequence prefix;
        prefix.steps.assign(s.steps.begin(), s.steps.begin() + static_cast<long>(cut));
        WidthReport fresh = verify_width(g, prefix);
        int expect = g.max_red_degree();
        for (std::size_t i = 0; i < cut; ++i)
            expect = std::max(expect, rep.per_step_max_red_degree[i]);
        CHECK(fresh.width == expect);
    }
}
