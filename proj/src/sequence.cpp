#include "tww/sequence.hpp"

#include <functional>
#include <map>
#include <string>

namespace tww {

namespace {

void require_step_valid(const Trigraph& g, const ContractionStep& step, std::size_t idx) {
    if (step.survivor == step.absorbed)
        throw Error(ErrorKind::invalid_sequence,
                    "step " + std::to_string(idx) + " contracts a vertex with itself", idx);
    if (!g.has_vertex(step.survivor))
        throw Error(ErrorKind::invalid_sequence,
                    "step " + std::to_string(idx) + " references dead or absent vertex " +
                        std::to_string(step.survivor),
                    idx);
    if (!g.has_vertex(step.absorbed))
        throw Error(ErrorKind::invalid_sequence,
                    "step " + std::to_string(idx) + " references dead or absent vertex " +
                        std::to_string(step.absorbed),
                    idx);
}

}  // namespace

WidthReport verify_width_trace(const Trigraph& g, const ContractionSequence& s,
                               const std::function<void(const Trigraph&, std::size_t)>& inspect) {
    Trigraph cur = g;
    WidthReport report;
    report.width = cur.max_red_degree();
    if (inspect) inspect(cur, 0);
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const ContractionStep& step = s.steps[i];
        require_step_valid(cur, step, i);
        cur.contract(step.survivor, step.absorbed);
        int d = cur.max_red_degree();
        report.per_step_max_red_degree.push_back(d);
        report.width = std::max(report.width, d);
        if (inspect) inspect(cur, i + 1);
    }
    report.complete = cur.num_vertices() == 1;
    return report;
}

WidthReport verify_width(const Trigraph& g, const ContractionSequence& s) {
    return verify_width_trace(g, s, nullptr);
}

RespectReport check_respects(const Trigraph& g, const ContractionSequence& s, const VertexSet& a) {
    for (Vertex v : a) {
        if (!g.has_vertex(v))
            throw Error(ErrorKind::precondition, "respected vertex " + std::to_string(v) + " not in trigraph");
        if (g.red_degree(v) > 0)
            throw Error(ErrorKind::precondition,
                        "respected vertex " + std::to_string(v) + " has nonzero red degree");
    }
    const Trigraph base_a = g.induced(a);

    Trigraph cur = g;
    RespectReport report;
    report.respects = true;
    report.width = cur.max_red_degree();
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const ContractionStep& step = s.steps[i];
        require_step_valid(cur, step, i);
        if (a.count(step.survivor) || a.count(step.absorbed)) {
            report.respects = false;
            report.violation_index = i;
            return report;
        }
        cur.contract(step.survivor, step.absorbed);
        report.width = std::max(report.width, cur.max_red_degree());
        bool ok = cur.induced(a) == base_a;
        for (Vertex v : a)
            if (cur.red_degree(v) > 0) ok = false;
        if (!ok) {
            report.respects = false;
            report.violation_index = i;
            return report;
        }
    }

    // completeness: no two surviving non-A vertices with equal black
    // neighborhoods inside A
    std::map<VertexSet, int> classes;
    std::size_t outside = 0;
    bool further = false;
    for (Vertex v : cur.vertices()) {
        if (a.count(v)) continue;
        ++outside;
        VertexSet in_a;
        for (Vertex u : cur.black_neighbors(v))
            if (a.count(u)) in_a.insert(u);
        if (++classes[in_a] > 1) further = true;
    }
    report.complete = !further;
    if (report.complete && outside > (std::size_t{1} << std::min<std::size_t>(a.size(), 20)))
        throw Error(ErrorKind::internal,
                    "complete respecting sequence left more than 2^|A| vertices besides A");
    return report;
}

RestrictedReport check_restricted(const Trigraph& g, const ContractionSequence& s,
                                  const VertexSet& u) {
    for (Vertex v : u)
        if (!g.has_vertex(v))
            throw Error(ErrorKind::precondition,
                        "restricted vertex " + std::to_string(v) + " not in trigraph");
    Trigraph cur = g;
    RestrictedReport report;
    report.valid = true;
    report.width = cur.max_red_degree();
    std::size_t alive_in_u = u.size();
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const ContractionStep& step = s.steps[i];
        require_step_valid(cur, step, i);
        if (!u.count(step.survivor) || !u.count(step.absorbed)) {
            report.valid = false;
            report.violation_index = i;
            return report;
        }
        cur.contract(step.survivor, step.absorbed);
        --alive_in_u;
        report.width = std::max(report.width, cur.max_red_degree());
    }
    report.complete = alive_in_u == 1;
    return report;
}

}  // namespace tww
