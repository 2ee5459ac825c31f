#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tww/bounds.hpp"
#include "tww/decomp.hpp"
#include "tww/families.hpp"
#include "tww/gadgets.hpp"
#include "tww/io.hpp"
#include "tww/oracle.hpp"
#include "tww/sequence.hpp"
#include "tww/synth.hpp"

using json = nlohmann::ordered_json;
using namespace tww;

namespace {

constexpr int kSchema = 1;

VertexSet parse_vertex_list(const std::string& csv) {
    VertexSet out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        long v = std::stol(tok);
        if (v < 1) throw Error(ErrorKind::parse, "vertex ids on the command line are 1-indexed");
        out.insert(static_cast<Vertex>(v - 1));
    }
    return out;
}

json vertices_json(const VertexSet& s) {
    json out = json::array();
    for (Vertex v : s) out.push_back(v + 1);
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("TWW_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

json bound_json(const bounds::Value& value) {
    json out;
    out["value"] = value.exact ? json(value.rational.to_double()) : json(value.hi);
    if (value.exact) out["value_exact"] = value.rational.str();
    out["width_cap"] = value.width_cap;
    out["formula"] = value.formula;
    return out;
}

struct SequenceOutput {
    std::string path;
    void write(const ContractionSequence& seq) const {
        if (path.empty()) return;
        write_seq_file(path, seq);
    }
};

int cmd_gen(const std::string& family, int q, int n, int rows, int cols, double p,
            std::uint64_t seed, int spine, int legs, int depth, const std::string& spec,
            const std::string& out, const std::string& emit_decomp) {
    Trigraph g;
    std::optional<StrongTreeDecomposition> companion;
    if (family == "paley") {
        g = families::paley(q);
        companion = families::paley_std(q);
    } else if (family == "subdivided-clique") {
        g = families::subdivided_clique(n);
    } else if (family == "complete") {
        g = families::complete(n);
    } else if (family == "path") {
        g = families::path(n);
    } else if (family == "cycle") {
        g = families::cycle(n);
    } else if (family == "star") {
        g = families::star(n);
    } else if (family == "grid") {
        g = families::grid(rows, cols);
    } else if (family == "caterpillar") {
        g = families::caterpillar(spine, legs);
    } else if (family == "binary-tree") {
        g = families::complete_binary_tree(depth);
    } else if (family == "spider") {
        g = families::spider(legs, n);
    } else if (family == "gnp") {
        g = families::gnp(n, p, seed);
    } else if (family == "block-glue") {
        g = families::block_glue_from_spec(spec);
    } else {
        throw Error(ErrorKind::domain, "unknown family '" + family + "'");
    }
    if (out.empty())
        write_gr(std::cout, g);
    else
        write_gr_file(out, g);
    if (!emit_decomp.empty()) {
        if (!companion) throw Error(ErrorKind::domain, "family has no companion decomposition");
        write_std_file(emit_decomp, *companion);
    }
    json report;
    report["schema"] = kSchema;
    report["family"] = family;
    report["n"] = g.num_vertices();
    report["edges"] = g.num_black_edges() + g.num_red_edges();
    if (!out.empty()) std::cout << report.dump() << "\n";
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& seq_path,
               const std::string& respect_csv, const std::string& restrict_csv) {
    Trigraph g = read_gr_file(graph_path);
    ContractionSequence s = read_seq_file(seq_path);
    json report;
    report["schema"] = kSchema;
    WidthReport rep = verify_width(g, s);
    report["width"] = rep.width;
    report["steps"] = s.size();
    report["complete"] = rep.complete;
    if (!respect_csv.empty()) {
        RespectReport rr = check_respects(g, s, parse_vertex_list(respect_csv));
        rep.respected_set_ok = rr.respects;
        report["respected"] = rr.respects;
        report["respect_complete"] = rr.complete;
        if (rr.violation_index) report["violation_index"] = *rr.violation_index;
    }
    if (!restrict_csv.empty()) {
        RestrictedReport rr = check_restricted(g, s, parse_vertex_list(restrict_csv));
        report["restricted_valid"] = rr.valid;
        report["restrict_complete"] = rr.complete;
        if (rr.violation_index) report["violation_index"] = *rr.violation_index;
    }
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_solve_exact(const std::string& graph_path, const SequenceOutput& out,
                    const std::string& respect_csv, const std::string& restrict_csv,
                    int max_d, int max_n, long long budget, int threads) {
    Trigraph g = read_gr_file(graph_path);
    OracleOptions opts;
    opts.budget = budget;
    opts.threads = threads;
    if (max_n > 0) {
        opts.max_n_plain = max_n;
        opts.max_n_respect = max_n;
        opts.max_u = max_n;
    }

    json report;
    report["schema"] = kSchema;
    if (max_d >= 0) {
        DecideResult r = decide_tww_le(g, max_d, opts);
        report["mode"] = "decide";
        report["d"] = max_d;
        report["nodes"] = r.nodes;
        switch (r.outcome) {
            case Outcome::yes: report["answer"] = true; break;
            case Outcome::no: report["answer"] = false; break;
            case Outcome::inconclusive: report["answer"] = "inconclusive"; break;
        }
        if (r.witness) {
            out.write(*r.witness);
            report["width"] = verify_width(g, *r.witness).width;
        }
        std::cout << report.dump() << "\n";
        return r.outcome == Outcome::inconclusive ? 2 : 0;
    }

    ExactResult r;
    if (!respect_csv.empty()) {
        VertexSet a = parse_vertex_list(respect_csv);
        r = exact_tww_respecting(g, a, opts);
        report["mode"] = "respecting";
        report["respected"] = vertices_json(a);
    } else if (!restrict_csv.empty()) {
        VertexSet u = parse_vertex_list(restrict_csv);
        r = exact_tww_restricted(g, u, opts);
        report["mode"] = "restricted";
        report["restricted"] = vertices_json(u);
    } else {
        r = exact_tww(g, opts);
        report["mode"] = "plain";
    }
    report["width"] = r.width;
    report["nodes"] = r.nodes;
    report["steps"] = r.witness.size();
    out.write(r.witness);
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_synth(const std::string& strategy, const std::string& graph_path,
              const std::string& decomp_path, int parts_exact_limit, const SequenceOutput& out,
              int threads, int root_wire) {
    Trigraph g = read_gr_file(graph_path);
    SynthOptions opts;
    if (parts_exact_limit > 0) opts.parts_exact_limit = parts_exact_limit;
    opts.oracle.threads = threads;

    SynthResult result;
    if (strategy == "strong-tree") {
        if (decomp_path.empty()) throw Error(ErrorKind::parse, "strong-tree needs --decomp");
        StrongTreeDecomposition s = read_std_file(decomp_path);
        if (root_wire > 0) s.root = root_wire - 1;
        result = strong_tree_contract(g, s, opts);
    } else if (strategy == "blocks") {
        result = compose_blocks(g, block_cut_tree(g), oracle_block_supplier(opts), opts);
    } else if (strategy == "adhesion") {
        if (decomp_path.empty()) throw Error(ErrorKind::parse, "adhesion needs --decomp");
        TreeDecomposition raw = read_td_file(decomp_path);
        if (root_wire > 0) raw.root = root_wire - 1;
        TreeDecomposition t = normalize_siblings(raw);
        int k = std::max(1, t.adhesion());
        int w = t.width();
        result = compose_adhesion(
            g, t, [&](int, const TildePart& part) { return contract_tilde_bounded(part, k, w); },
            opts);
        result.bound_name = bounds::Name::thm6;
        result.bound_params = {{{"k", k}, {"w", w}}};
        result.bound = bounds::evaluate(result.bound_name, result.bound_params);
        if (!bounds::width_within(result.achieved_width, result.bound_name, result.bound_params))
            throw Error(ErrorKind::internal, "adhesion pipeline exceeded its bound");
    } else {
        throw Error(ErrorKind::parse, "unknown strategy '" + strategy + "'");
    }

    out.write(result.sequence);
    json report;
    report["schema"] = kSchema;
    report["strategy"] = strategy;
    report["achieved_width"] = result.achieved_width;
    report["bound"] = result.bound.exact ? json(result.bound.rational.to_double())
                                         : json(result.bound.hi);
    report["bound_cap"] = result.bound.width_cap;
    report["bound_formula"] = result.bound.formula;
    report["bound_name"] = bounds::to_string(result.bound_name);
    report["heuristic_used"] = result.heuristic_used;
    report["steps"] = result.sequence.size();
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_gadget(const std::string& kind, const std::string& graph_path,
               const std::string& decomp_path, int node_wire, int root_wire,
               const std::string& out) {
    Trigraph g = read_gr_file(graph_path);
    Trigraph result;
    if (kind == "pendant") {
        result = build_pendant_hat(g).graph;
    } else {
        if (decomp_path.empty()) throw Error(ErrorKind::parse, "gadget needs --decomp");
        TreeDecomposition t = read_td_file(decomp_path);
        if (root_wire > 0) t.root = root_wire - 1;
        int node = node_wire - 1;
        if (node < 0 || node >= t.node_count())
            throw Error(ErrorKind::invalid_decomposition, "node out of range");
        // annotated split separators (triconnected / quasi-4-connected
        // ingestion) take precedence over child separators
        std::vector<VertexSet> annotated;
        for (const auto& [n, sep] : t.annotated_separators)
            if (n == node) annotated.push_back(sep);
        if (kind == "tilde") {
            result = build_tilde(g, t, node).graph;
        } else if (kind == "hat") {
            result = annotated.empty() ? build_hat(g, t, node).graph
                                       : build_hat_from_separators(g.induced(t.bags[node]),
                                                                   annotated)
                                             .graph;
        } else if (kind == "torso") {
            result = annotated.empty() ? build_red_torso(g, t, node)
                                       : complete_red_cliques(g.induced(t.bags[node]), annotated);
        } else {
            throw Error(ErrorKind::parse, "unknown gadget kind '" + kind + "'");
        }
        // virtual split pairs are red in torso components
        if (kind == "torso") {
            for (auto [u, v] : t.virtual_edges) {
                if (!result.has_vertex(u) || !result.has_vertex(v)) continue;
                if (!result.has_edge(u, v))
                    throw Error(ErrorKind::precondition, "virtual pair without a matching edge");
                result.make_red(u, v);
            }
        }
    }
    if (out.empty())
        write_gr(std::cout, result);
    else
        write_gr_file(out, result);
    return 0;
}

int cmd_bounds(const std::string& name_str, const std::map<std::string, long long>& params) {
    bounds::Name name = bounds::name_from_string(name_str);
    bounds::Params p;
    p.values = params;
    bounds::Value value = bounds::evaluate(name, p);
    json report;
    report["schema"] = kSchema;
    json b = bound_json(value);
    report["value"] = b["value"];
    if (b.contains("value_exact")) report["value_exact"] = b["value_exact"];
    report["width_cap"] = b["width_cap"];
    report["formula"] = b["formula"];
    report["citation"] = name_str;
    json jp;
    for (const auto& [key, v] : params) jp[key] = v;
    report["params"] = jp;
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_decompose_blocks(const std::string& graph_path, const std::string& out_path) {
    Trigraph g = read_gr_file(graph_path);
    BlockCutTree bct = block_cut_tree(g);
    json report;
    report["schema"] = kSchema;
    json blocks = json::array();
    for (const VertexSet& b : bct.blocks) blocks.push_back(vertices_json(b));
    report["blocks"] = blocks;
    report["cut_vertices"] = vertices_json(bct.cut_vertices);
    if (out_path.empty()) {
        std::cout << report.dump() << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorKind::parse, "cannot open " + out_path);
        f << report.dump() << "\n";
        std::cout << report.dump() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twin-width toolkit: verification, exact solving and synthesis"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph family");
    std::string gen_family, gen_out, gen_decomp, gen_spec;
    int gen_q = 5, gen_n = 5, gen_rows = 2, gen_cols = 2, gen_spine = 3, gen_legs = 2,
        gen_depth = 2;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 1;
    gen->add_option("--family", gen_family, "family name")->required();
    gen->add_option("--q", gen_q, "paley modulus");
    gen->add_option("--n", gen_n, "order parameter");
    gen->add_option("--rows", gen_rows);
    gen->add_option("--cols", gen_cols);
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--spine", gen_spine);
    gen->add_option("--legs", gen_legs);
    gen->add_option("--depth", gen_depth);
    gen->add_option("--spec", gen_spec, "block-glue spec, e.g. K3;K3@0");
    gen->add_option("-o,--output", gen_out, "output .gr file");
    gen->add_option("--emit-decomp", gen_decomp, "companion decomposition file");

    // verify
    auto* verify = app.add_subcommand("verify", "replay and measure a contraction sequence");
    std::string verify_graph, verify_seq, verify_respect;
    verify->add_option("--graph", verify_graph)->required();
    verify->add_option("--seq", verify_seq)->required();
    verify->add_option("--respect", verify_respect, "comma separated 1-indexed vertex ids");
    std::string verify_restrict;
    verify->add_option("--restrict", verify_restrict, "restricted-set check, 1-indexed ids");

    // solve-exact
    auto* solve = app.add_subcommand("solve-exact", "exact twin-width at desk scale");
    std::string solve_graph, solve_out, solve_respect, solve_restrict;
    int solve_max_d = -1, solve_max_n = 0, solve_threads = default_threads();
    long long solve_budget = 0;
    solve->add_option("--graph", solve_graph)->required();
    solve->add_option("-o,--output", solve_out, "witness sequence file");
    solve->add_option("--respect", solve_respect, "respected vertex ids");
    solve->add_option("--restrict", solve_restrict, "restricted vertex ids");
    solve->add_option("--max-d", solve_max_d, "decide width <= d instead of solving");
    solve->add_option("--max-n", solve_max_n, "override the size limits");
    solve->add_option("--budget", solve_budget, "search node budget, 0 = unlimited");
    solve->add_option("--threads", solve_threads, "worker threads for the search");

    // synth
    auto* synth = app.add_subcommand("synth", "build a sequence from a decomposition");
    std::string synth_strategy, synth_graph, synth_decomp, synth_out;
    int synth_limit = 0, synth_threads = default_threads();
    synth->add_option("--strategy", synth_strategy, "strong-tree | blocks | adhesion")
        ->required();
    synth->add_option("--graph", synth_graph)->required();
    synth->add_option("--decomp", synth_decomp, ".td / .std input");
    synth->add_option("--parts-exact-limit", synth_limit, "exact-oracle cap for pieces");
    synth->add_option("-o,--output", synth_out, "sequence output file");
    synth->add_option("--threads", synth_threads);
    int synth_root = 0;
    synth->add_option("--root", synth_root, "override the decomposition root, 1-indexed");

    // gadget
    auto* gadget = app.add_subcommand("gadget", "emit a gadget trigraph");
    std::string gadget_kind, gadget_graph, gadget_decomp, gadget_out;
    int gadget_node = 1;
    gadget->add_option("--kind", gadget_kind, "tilde | hat | torso | pendant")->required();
    gadget->add_option("--graph", gadget_graph)->required();
    gadget->add_option("--decomp", gadget_decomp);
    gadget->add_option("--node", gadget_node, "decomposition node, 1-indexed");
    gadget->add_option("-o,--output", gadget_out);
    int gadget_root = 0;
    gadget->add_option("--root", gadget_root, "override the decomposition root, 1-indexed");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "evaluate a closed-form width bound");
    std::string bounds_name;
    bnd->add_option("--name", bounds_name)->required();
    std::map<std::string, long long> bound_params;
    for (const char* key : {"a", "k", "w", "t", "d", "n", "delta"}) {
        bnd->add_option_function<long long>(
            std::string("--") + key,
            [&bound_params, key](long long v) { bound_params[key] = v; });
    }

    // decompose-blocks
    auto* blocks = app.add_subcommand("decompose-blocks", "block-cut tree of a graph");
    std::string blocks_graph, blocks_out;
    blocks->add_option("--graph", blocks_graph)->required();
    blocks->add_option("-o,--output", blocks_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_family, gen_q, gen_n, gen_rows, gen_cols, gen_p, gen_seed,
                           gen_spine, gen_legs, gen_depth, gen_spec, gen_out, gen_decomp);
        if (verify->parsed())
            return cmd_verify(verify_graph, verify_seq, verify_respect, verify_restrict);
        if (solve->parsed())
            return cmd_solve_exact(solve_graph, {solve_out}, solve_respect, solve_restrict,
                                   solve_max_d, solve_max_n, solve_budget, solve_threads);
        if (synth->parsed())
            return cmd_synth(synth_strategy, synth_graph, synth_decomp, synth_limit, {synth_out},
                             synth_threads, synth_root);
        if (gadget->parsed())
            return cmd_gadget(gadget_kind, gadget_graph, gadget_decomp, gadget_node, gadget_root,
                              gadget_out);
        if (bnd->parsed()) return cmd_bounds(bounds_name, bound_params);
        if (blocks->parsed()) return cmd_decompose_blocks(blocks_graph, blocks_out);
    } catch (const Error& e) {
        json err;
        err["schema"] = kSchema;
        err["error"] = e.kind_name();
        err["message"] = e.what();
        if (e.index()) err["index"] = *e.index();
        std::cerr << err.dump() << "\n";
        return e.kind() == ErrorKind::resource ? 2 : 1;
    } catch (const std::exception& e) {
        json err;
        err["schema"] = kSchema;
        err["error"] = "internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
