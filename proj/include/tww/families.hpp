#ifndef TWW_FAMILIES_HPP
#define TWW_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tww/decomp.hpp"
#include "tww/trigraph.hpp"

namespace tww::families {

// All generators are pure functions of their parameters: identical calls
// produce identical graphs on every platform.

// Vertices Z_q, edge iff the difference is a nonzero quadratic residue.
// Implemented for primes q = 1 (mod 4).
Trigraph paley(int q);

// The two-bag strong tree decomposition of paley(q): bag sizes (q+1)/2 and
// (q-1)/2.
StrongTreeDecomposition paley_std(int q);

// K_n with every edge subdivided once: n + n(n-1)/2 vertices. Branch
// vertices come first (0..n-1).
Trigraph subdivided_clique(int n);

Trigraph complete(int n);
Trigraph path(int n);
Trigraph cycle(int n);
Trigraph star(int leaves);           // vertex 0 is the center
Trigraph grid(int rows, int cols);
Trigraph caterpillar(int spine, int legs_per_vertex);
Trigraph complete_binary_tree(int depth);  // depth 0 = single vertex
Trigraph spider(int legs, int leg_length);

// Erdos-Renyi with a fixed 64-bit generator; edge draws use integer
// threshold comparison so results are bit-identical across platforms.
Trigraph gnp(int n, double p, std::uint64_t seed);

// Glues blocks at cut vertices. blocks[0] is placed as-is; block i >= 1 has
// its vertex 0 identified with vertex attach_at[i-1] of the accumulated
// graph. Vertex ids of later blocks are shifted past the current maximum.
Trigraph block_glue(const std::vector<Trigraph>& blocks, const std::vector<Vertex>& attach_at);

// Spec strings for the CLI: semicolon-separated `NAME@v` entries where NAME
// is one of K<n>, C<n>, P<n> and v is the attachment vertex (absent for the
// first block), e.g. "K3;K3@0;C4@2".
Trigraph block_glue_from_spec(const std::string& spec);

// Random connected graph together with a valid strong tree decomposition of
// width exactly <= width (edges only inside bags or across tree edges).
struct GraphWithStd {
    Trigraph graph;
    StrongTreeDecomposition decomposition;
};
GraphWithStd random_with_std(int bags, int width, double density, std::uint64_t seed);

// Random graph together with a valid rooted tree decomposition of width
// <= width and adhesion in [1, adhesion]. Fanout is capped so gadget sizes
// stay manageable.
struct GraphWithTd {
    Trigraph graph;
    TreeDecomposition decomposition;
};
GraphWithTd random_with_td(int nodes, int width, int adhesion, double density, std::uint64_t seed);

// Uniform random labelled tree (Pruefer).
Trigraph random_tree(int n, std::uint64_t seed);

}  // namespace tww::families

#endif
