#include <sstream>

#include "doctest.h"
#include "tww/decomp.hpp"
#include "tww/families.hpp"
#include "tww/io.hpp"

using namespace tww;

TEST_CASE("paley(5) is the five-cycle") {
    Trigraph g = families::paley(5);
    // residues mod 5 are {1,4}: each vertex joins its +-1 neighbors
    CHECK(g == families::cycle(5));
}

TEST_CASE("paley graphs are (q-1)/2-regular and self-complementary") {
    for (int q : {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}) {
        Trigraph g = families::paley(q);
        for (Vertex v : g.vertices()) CHECK(g.degree(v) == (q - 1) / 2);
        // multiplication by a non-residue maps edges onto non-edges
        int nr = -1;
        std::vector<char> residue(q, 0);
        for (long long x = 1; x < q; ++x) residue[(x * x) % q] = 1;
        for (int c = 1; c < q; ++c)
            if (!residue[c]) {
                nr = c;
                break;
            }
        REQUIRE(nr > 0);
        for (Vertex u = 0; u < q; ++u)
            for (Vertex v = u + 1; v < q; ++v) {
                Vertex mu = static_cast<Vertex>((1ll * nr * u) % q);
                Vertex mv = static_cast<Vertex>((1ll * nr * v) % q);
                CHECK(g.has_edge(u, v) == !g.has_edge(mu, mv));
            }
    }
}

TEST_CASE("paley rejects bad moduli") {
    CHECK_THROWS_AS(families::paley(7), Error);   // 7 = 3 mod 4
    CHECK_THROWS_AS(families::paley(9), Error);   // prime power, unsupported
    CHECK_THROWS_AS(families::paley(15), Error);  // composite
}

TEST_CASE("subdivided clique counts, degrees and bipartiteness") {
    Trigraph g = families::subdivided_clique(4);
    CHECK(g.num_vertices() == 10);
    CHECK(g.num_black_edges() == 12);
    for (Vertex v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
    for (Vertex v = 4; v < 10; ++v) CHECK(g.degree(v) == 2);
    // branch vertices form one side, subdivision vertices the other
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) CHECK_FALSE(g.has_edge(u, v));
    for (Vertex u = 4; u < 10; ++u)
        for (Vertex v = u + 1; v < 10; ++v) CHECK_FALSE(g.has_edge(u, v));
}

TEST_CASE("generators are pure functions of their parameters") {
    std::stringstream a, b;
    write_gr(a, families::gnp(12, 0.37, 99));
    write_gr(b, families::gnp(12, 0.37, 99));
    CHECK(a.str() == b.str());
    CHECK(families::paley(13) == families::paley(13));
    auto r1 = families::random_with_td(6, 4, 2, 0.5, 7);
    auto r2 = families::random_with_td(6, 4, 2, 0.5, 7);
    CHECK(r1.graph == r2.graph);
    CHECK(r1.decomposition.bags == r2.decomposition.bags);
}

TEST_CASE("two triangles glued at a vertex") {
    Trigraph g = families::block_glue_from_spec("K3;K3@0");
    CHECK(g.num_vertices() == 5);
    BlockCutTree bct = block_cut_tree(g);
    CHECK(bct.blocks.size() == 2);
    CHECK(bct.cut_vertices == VertexSet{0});
}

TEST_CASE("random strong tree decompositions are valid and hit the width") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (int width : {2, 3, 4}) {
            auto [g, s] = families::random_with_std(8, width, 0.5, seed);
            CHECK(validate_std(g, s).empty());
            CHECK(s.width() == width);
            CHECK(g.num_vertices() <= 8 * width);
        }
    }
}

TEST_CASE("random tree decompositions are valid with adhesion in range") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto [g, t] = families::random_with_td(7, 5, 3, 0.5, seed);
        CHECK(validate_td(g, t).empty());
        CHECK(t.adhesion() >= 1);
        CHECK(t.adhesion() <= 3);
        CHECK(t.width() <= 5);
    }
}

TEST_CASE("random trees are trees") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Trigraph t = families::random_tree(9, seed);
        CHECK(t.num_black_edges() == 8);
        CHECK(is_connected(t));
    }
}

TEST_CASE("grid and caterpillar shapes") {
    Trigraph g = families::grid(3, 4);
    CHECK(g.num_vertices() == 12);
    CHECK(g.num_black_edges() == 3 * 3 + 2 * 4);
    Trigraph c = families::caterpillar(4, 2);
    CHECK(c.num_vertices() == 12);
    CHECK(c.num_black_edges() == 11);
    Trigraph s = families::spider(3, 2);
    CHECK(s.num_vertices() == 7);
    CHECK(s.degree(0) == 3);
}
