#include "tww/trigraph.hpp"

#include <algorithm>
#include <string>

namespace tww {

Trigraph Trigraph::with_vertices(int n) {
    Trigraph g;
    for (Vertex v = 0; v < n; ++v) g.add_vertex(v);
    return g;
}

void Trigraph::add_vertex(Vertex v) {
    black_.try_emplace(v);
    red_.try_emplace(v);
}

void Trigraph::remove_vertex(Vertex v) {
    require_vertex(v);
    for (Vertex u : black_.at(v)) black_.at(u).erase(v);
    for (Vertex u : red_.at(v)) red_.at(u).erase(v);
    black_.erase(v);
    red_.erase(v);
}

std::vector<Vertex> Trigraph::vertices() const {
    std::vector<Vertex> out;
    out.reserve(black_.size());
    for (const auto& [v, _] : black_) out.push_back(v);
    return out;
}

Vertex Trigraph::max_vertex_id() const {
    if (black_.empty()) throw Error(ErrorKind::internal, "max_vertex_id of empty trigraph");
    return black_.rbegin()->first;
}

void Trigraph::require_vertex(Vertex v) const {
    if (!has_vertex(v))
        throw Error(ErrorKind::invalid_contraction, "vertex " + std::to_string(v) + " not in trigraph");
}

void Trigraph::add_black_edge(Vertex u, Vertex v) {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw Error(ErrorKind::parse, "loop at vertex " + std::to_string(u));
    if (has_red_edge(u, v))
        throw Error(ErrorKind::internal, "edge already red: " + std::to_string(u) + "-" + std::to_string(v));
    black_.at(u).insert(v);
    black_.at(v).insert(u);
}

void Trigraph::add_red_edge(Vertex u, Vertex v) {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw Error(ErrorKind::parse, "loop at vertex " + std::to_string(u));
    if (has_black_edge(u, v))
        throw Error(ErrorKind::internal, "edge already black: " + std::to_string(u) + "-" + std::to_string(v));
    red_.at(u).insert(v);
    red_.at(v).insert(u);
}

void Trigraph::make_red(Vertex u, Vertex v) {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw Error(ErrorKind::parse, "loop at vertex " + std::to_string(u));
    black_.at(u).erase(v);
    black_.at(v).erase(u);
    red_.at(u).insert(v);
    red_.at(v).insert(u);
}

void Trigraph::remove_edge(Vertex u, Vertex v) {
    require_vertex(u);
    require_vertex(v);
    black_.at(u).erase(v);
    black_.at(v).erase(u);
    red_.at(u).erase(v);
    red_.at(v).erase(u);
}

bool Trigraph::has_black_edge(Vertex u, Vertex v) const {
    auto it = black_.find(u);
    return it != black_.end() && it->second.count(v) != 0;
}

bool Trigraph::has_red_edge(Vertex u, Vertex v) const {
    auto it = red_.find(u);
    return it != red_.end() && it->second.count(v) != 0;
}

const VertexSet& Trigraph::black_neighbors(Vertex v) const {
    require_vertex(v);
    return black_.at(v);
}

const VertexSet& Trigraph::red_neighbors(Vertex v) const {
    require_vertex(v);
    return red_.at(v);
}

VertexSet Trigraph::neighbors(Vertex v) const {
    VertexSet out = black_neighbors(v);
    const VertexSet& r = red_neighbors(v);
    out.insert(r.begin(), r.end());
    return out;
}

int Trigraph::degree(Vertex v) const {
    return static_cast<int>(black_neighbors(v).size() + red_neighbors(v).size());
}

int Trigraph::red_degree(Vertex v) const {
    return static_cast<int>(red_neighbors(v).size());
}

int Trigraph::max_red_degree() const {
    int best = 0;
    for (const auto& [v, nbrs] : red_) best = std::max(best, static_cast<int>(nbrs.size()));
    return best;
}

std::size_t Trigraph::num_black_edges() const {
    std::size_t twice = 0;
    for (const auto& [v, nbrs] : black_) twice += nbrs.size();
    return twice / 2;
}

std::size_t Trigraph::num_red_edges() const {
    std::size_t twice = 0;
    for (const auto& [v, nbrs] : red_) twice += nbrs.size();
    return twice / 2;
}

void Trigraph::contract(Vertex survivor, Vertex absorbed) {
    if (survivor == absorbed)
        throw Error(ErrorKind::invalid_contraction, "cannot contract a vertex with itself");
    require_vertex(survivor);
    require_vertex(absorbed);

    VertexSet sb = black_.at(survivor);
    VertexSet ab = black_.at(absorbed);
    VertexSet sr = red_.at(survivor);
    VertexSet ar = red_.at(absorbed);
    sb.erase(absorbed);
    ab.erase(survivor);
    sr.erase(absorbed);
    ar.erase(survivor);

    VertexSet new_black;
    std::set_intersection(sb.begin(), sb.end(), ab.begin(), ab.end(),
                          std::inserter(new_black, new_black.end()));
    VertexSet new_red = sr;
    new_red.insert(ar.begin(), ar.end());
    // vertices adjacent (in any color) to exactly one endpoint become red
    VertexSet sn = sb, an = ab;
    sn.insert(sr.begin(), sr.end());
    an.insert(ar.begin(), ar.end());
    for (Vertex v : sn)
        if (!an.count(v)) new_red.insert(v);
    for (Vertex v : an)
        if (!sn.count(v)) new_red.insert(v);
    // black-to-one, red-to-other is already covered by the red union
    for (Vertex v : new_black) new_red.erase(v);

    // detach both old rows, then install the merged row at the survivor
    for (Vertex u : black_.at(survivor)) black_.at(u).erase(survivor);
    for (Vertex u : red_.at(survivor)) red_.at(u).erase(survivor);
    for (Vertex u : black_.at(absorbed)) black_.at(u).erase(absorbed);
    for (Vertex u : red_.at(absorbed)) red_.at(u).erase(absorbed);
    black_.erase(absorbed);
    red_.erase(absorbed);

    black_.at(survivor) = new_black;
    red_.at(survivor) = new_red;
    for (Vertex u : new_black) black_.at(u).insert(survivor);
    for (Vertex u : new_red) red_.at(u).insert(survivor);
}

Trigraph Trigraph::induced(const VertexSet& keep) const {
    Trigraph out;
    for (Vertex v : keep) {
        require_vertex(v);
        out.add_vertex(v);
    }
    for (Vertex v : keep) {
        for (Vertex u : black_.at(v))
            if (u > v && keep.count(u)) out.add_black_edge(v, u);
        for (Vertex u : red_.at(v))
            if (u > v && keep.count(u)) out.add_red_edge(v, u);
    }
    return out;
}

void Trigraph::check_invariants() const {
    for (const auto& [v, nbrs] : black_) {
        for (Vertex u : nbrs) {
            if (u == v) throw Error(ErrorKind::internal, "loop");
            if (!black_.count(u) || !black_.at(u).count(v))
                throw Error(ErrorKind::internal, "asymmetric black edge");
            if (red_.at(v).count(u))
                throw Error(ErrorKind::internal, "edge both black and red");
        }
    }
    for (const auto& [v, nbrs] : red_) {
        for (Vertex u : nbrs) {
            if (u == v) throw Error(ErrorKind::internal, "loop");
            if (!red_.count(u) || !red_.at(u).count(v))
                throw Error(ErrorKind::internal, "asymmetric red edge");
        }
    }
}

Trigraph contract(const Trigraph& g, Vertex x, Vertex y) {
    if (x == y) throw Error(ErrorKind::invalid_contraction, "contract(x, x)");
    if (!g.has_vertex(x) || !g.has_vertex(y))
        throw Error(ErrorKind::invalid_contraction, "contraction endpoint not in trigraph");
    Trigraph out = g;
    out.contract(std::min(x, y), std::max(x, y));
    return out;
}

Partition Partition::singletons(const Trigraph& g) {
    Partition p;
    for (Vertex v : g.vertices()) p.parts.push_back({v});
    return p;
}

Partition Partition::of(std::vector<VertexSet> parts) {
    for (const auto& part : parts)
        if (part.empty()) throw Error(ErrorKind::invalid_partition, "empty part");
    std::sort(parts.begin(), parts.end(),
              [](const VertexSet& a, const VertexSet& b) { return *a.begin() < *b.begin(); });
    Partition p;
    p.parts = std::move(parts);
    return p;
}

std::optional<std::size_t> Partition::part_of(Vertex v) const {
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].count(v)) return i;
    return std::nullopt;
}

Partition Partition::split_off(Vertex v) const {
    auto idx = part_of(v);
    if (!idx) throw Error(ErrorKind::invalid_partition, "vertex not covered by partition");
    if (parts[*idx].size() == 1) return *this;
    std::vector<VertexSet> out = parts;
    out[*idx].erase(v);
    out.push_back({v});
    return Partition::of(std::move(out));
}

void Partition::validate_for(const Trigraph& g) const {
    std::size_t total = 0;
    VertexSet seen;
    for (const auto& part : parts) {
        if (part.empty()) throw Error(ErrorKind::invalid_partition, "empty part");
        for (Vertex v : part) {
            if (!g.has_vertex(v))
                throw Error(ErrorKind::invalid_partition,
                            "part contains unknown vertex " + std::to_string(v));
            if (!seen.insert(v).second)
                throw Error(ErrorKind::invalid_partition,
                            "vertex " + std::to_string(v) + " in two parts");
        }
        total += part.size();
    }
    if (total != g.num_vertices())
        throw Error(ErrorKind::invalid_partition, "parts do not cover the vertex set");
}

Trigraph quotient(const Trigraph& g, const Partition& p) {
    p.validate_for(g);
    Trigraph out;
    for (const auto& part : p.parts) out.add_vertex(*part.begin());
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        for (std::size_t j = i + 1; j < p.parts.size(); ++j) {
            std::size_t cross = p.parts[i].size() * p.parts[j].size();
            std::size_t black = 0;
            bool any_red = false;
            for (Vertex u : p.parts[i]) {
                for (Vertex v : p.parts[j]) {
                    if (g.has_black_edge(u, v)) ++black;
                    if (g.has_red_edge(u, v)) any_red = true;
                }
            }
            Vertex ri = p.representative(i), rj = p.representative(j);
            if (any_red || (black > 0 && black < cross))
                out.add_red_edge(ri, rj);
            else if (black == cross)
                out.add_black_edge(ri, rj);
        }
    }
    return out;
}

}  // namespace tww
