#include "tww/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace tww {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse, "cannot open " + path + " for writing");
    return out;
}

}  // namespace

Trigraph parse_gr(std::istream& in) {
    std::string line;
    long n = -1, m = -1;
    long edge_lines = 0;
    // pair -> is_red; parallel copies collapse, red wins
    std::map<std::pair<Vertex, Vertex>, bool> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            if (!(ss >> fmt >> n >> m) || n < 0 || m < 0)
                throw Error(ErrorKind::parse, "bad problem line at line " + std::to_string(lineno));
            continue;
        }
        bool red = false;
        long u, v;
        if (tok == "r") {
            red = true;
            if (!(ss >> u >> v))
                throw Error(ErrorKind::parse, "bad red edge at line " + std::to_string(lineno));
        } else {
            std::istringstream pair_ss(line);
            if (!(pair_ss >> u >> v))
                throw Error(ErrorKind::parse, "bad edge at line " + std::to_string(lineno));
        }
        if (n < 0) throw Error(ErrorKind::parse, "edge before problem line");
        if (u < 1 || u > n || v < 1 || v > n)
            throw Error(ErrorKind::parse, "vertex out of range at line " + std::to_string(lineno));
        if (u == v)
            throw Error(ErrorKind::parse, "loop at line " + std::to_string(lineno));
        ++edge_lines;
        Vertex a = static_cast<Vertex>(u - 1), b = static_cast<Vertex>(v - 1);
        std::pair<Vertex, Vertex> key = std::minmax(a, b);
        edges[key] = edges[key] || red;
    }
    if (n < 0) throw Error(ErrorKind::parse, "missing problem line");
    if (edge_lines != m)
        throw Error(ErrorKind::parse, "edge count mismatch: header says " + std::to_string(m) +
                                          ", found " + std::to_string(edge_lines));
    Trigraph g = Trigraph::with_vertices(static_cast<int>(n));
    for (const auto& [e, red] : edges) {
        if (red)
            g.add_red_edge(e.first, e.second);
        else
            g.add_black_edge(e.first, e.second);
    }
    return g;
}

Trigraph read_gr_file(const std::string& path) {
    auto in = open_input(path);
    return parse_gr(in);
}

void write_gr(std::ostream& out, const Trigraph& g) {
    std::vector<Vertex> vs = g.vertices();
    std::map<Vertex, int> wire;
    bool contiguous = true;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        wire[vs[i]] = static_cast<int>(i) + 1;
        if (vs[i] != static_cast<Vertex>(i)) contiguous = false;
    }
    out << "p tww " << vs.size() << ' ' << g.num_black_edges() + g.num_red_edges() << '\n';
    if (!contiguous)
        for (Vertex v : vs) out << "c map " << wire[v] << ' ' << v + 1 << '\n';
    for (Vertex v : vs)
        for (Vertex u : g.black_neighbors(v))
            if (u > v) out << wire[v] << ' ' << wire[u] << '\n';
    for (Vertex v : vs)
        for (Vertex u : g.red_neighbors(v))
            if (u > v) out << "r " << wire[v] << ' ' << wire[u] << '\n';
}

void write_gr_file(const std::string& path, const Trigraph& g) {
    auto out = open_output(path);
    write_gr(out, g);
}

ContractionSequence parse_seq(std::istream& in) {
    ContractionSequence s;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "c") continue;
        long u, v;
        std::istringstream pair_ss(line);
        if (!(pair_ss >> u >> v) || u < 1 || v < 1)
            throw Error(ErrorKind::parse, "bad sequence line " + std::to_string(lineno));
        s.push(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    return s;
}

ContractionSequence read_seq_file(const std::string& path) {
    auto in = open_input(path);
    return parse_seq(in);
}

void write_seq(std::ostream& out, const ContractionSequence& s) {
    for (const ContractionStep& step : s.steps)
        out << step.survivor + 1 << ' ' << step.absorbed + 1 << '\n';
}

void write_seq_file(const std::string& path, const ContractionSequence& s) {
    auto out = open_output(path);
    write_seq(out, s);
}

}  // namespace tww
