#include "tww/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace tww {

namespace {

constexpr int kMaxSlots = 128;
constexpr std::size_t kMemoCap = 1u << 22;

struct Mask {
    std::uint64_t w0 = 0, w1 = 0;

    void set(int i) { (i < 64 ? w0 : w1) |= 1ull << (i & 63); }
    void clear(int i) { (i < 64 ? w0 : w1) &= ~(1ull << (i & 63)); }
    bool test(int i) const { return ((i < 64 ? w0 : w1) >> (i & 63)) & 1; }
    int count() const { return std::popcount(w0) + std::popcount(w1); }
    bool any() const { return w0 || w1; }

    friend Mask operator&(Mask a, Mask b) { return {a.w0 & b.w0, a.w1 & b.w1}; }
    friend Mask operator|(Mask a, Mask b) { return {a.w0 | b.w0, a.w1 | b.w1}; }
    friend Mask operator^(Mask a, Mask b) { return {a.w0 ^ b.w0, a.w1 ^ b.w1}; }
    Mask andnot(Mask b) const { return {w0 & ~b.w0, w1 & ~b.w1}; }
    bool operator==(const Mask&) const = default;

    template <typename F>
    void for_each(F f) const {
        std::uint64_t a = w0;
        while (a) {
            f(std::countr_zero(a));
            a &= a - 1;
        }
        std::uint64_t b = w1;
        while (b) {
            f(64 + std::countr_zero(b));
            b &= b - 1;
        }
    }
};

enum class Mode { plain, respecting, restricted };

// Quotient trigraph over slots 0..n-1 (sorted original vertex order). A
// dead slot's part pointer names its surviving representative; the
// representative is always the smallest slot of its part.
struct State {
    int n = 0;
    Mode mode = Mode::plain;
    Mask special;  // A (respecting) or U (restricted)
    std::vector<Mask> black, red;
    Mask alive;
    std::vector<std::uint8_t> part;

    int max_red() const {
        int best = 0;
        alive.for_each([&](int i) { best = std::max(best, red[i].count()); });
        return best;
    }

    bool terminal() const {
        switch (mode) {
            case Mode::plain: return alive.count() == 1;
            case Mode::restricted: return (alive & special).count() == 1;
            case Mode::respecting: return !has_candidate();
        }
        return false;
    }

    bool valid_pair(int i, int j) const {
        switch (mode) {
            case Mode::plain: return true;
            case Mode::restricted: return special.test(i) && special.test(j);
            case Mode::respecting:
                if (special.test(i) || special.test(j)) return false;
                return (black[i] & special) == (black[j] & special);
        }
        return false;
    }

    bool has_candidate() const {
        bool found = false;
        alive.for_each([&](int i) {
            if (found) return;
            alive.for_each([&](int j) {
                if (!found && i < j && valid_pair(i, j)) found = true;
            });
        });
        return found;
    }

    template <typename F>
    void for_each_candidate(F f) const {
        std::vector<int> slots;
        alive.for_each([&](int i) { slots.push_back(i); });
        for (std::size_t x = 0; x < slots.size(); ++x)
            for (std::size_t y = x + 1; y < slots.size(); ++y)
                if (valid_pair(slots[x], slots[y])) f(slots[x], slots[y]);
    }

    // Exact twins: identical neighborhoods in both colors (ignoring the
    // pair itself). Contracting such a pair never increases any red degree
    // and is equivalent to deleting one of the two vertices.
    bool twins(int i, int j) const {
        Mask ij;
        ij.set(i);
        ij.set(j);
        return black[i].andnot(ij) == black[j].andnot(ij) &&
               red[i].andnot(ij) == red[j].andnot(ij);
    }

    void contract(int a, int b) {
        Mask ab;
        ab.set(a);
        ab.set(b);
        Mask live = alive.andnot(ab);
        Mask common = black[a] & black[b] & live;
        Mask newred = (red[a] | red[b] | (black[a] ^ black[b])) & live;
        newred = newred.andnot(common);
        black[a] = common;
        red[a] = newred;
        black[b] = {};
        red[b] = {};
        alive.clear(b);
        live.for_each([&](int v) {
            if (common.test(v))
                black[v].set(a);
            else
                black[v].clear(a);
            if (newred.test(v))
                red[v].set(a);
            else
                red[v].clear(a);
            black[v].clear(b);
            red[v].clear(b);
        });
        for (int i = 0; i < n; ++i)
            if (part[i] == b) part[i] = static_cast<std::uint8_t>(a);
    }

    std::string memo_key() const {
        return std::string(reinterpret_cast<const char*>(part.data()), part.size());
    }
};

State make_state(const Trigraph& g, Mode mode, const VertexSet& special,
                 std::vector<Vertex>& slot_to_vertex) {
    slot_to_vertex = g.vertices();
    int n = static_cast<int>(slot_to_vertex.size());
    if (n > kMaxSlots)
        throw Error(ErrorKind::resource,
                    "search graph has " + std::to_string(n) + " vertices, limit is " +
                        std::to_string(kMaxSlots));
    State s;
    s.n = n;
    s.mode = mode;
    s.black.assign(n, {});
    s.red.assign(n, {});
    s.part.resize(n);
    std::map<Vertex, int> slot_of;
    for (int i = 0; i < n; ++i) {
        slot_of[slot_to_vertex[i]] = i;
        s.alive.set(i);
        s.part[i] = static_cast<std::uint8_t>(i);
    }
    for (int i = 0; i < n; ++i) {
        for (Vertex u : g.black_neighbors(slot_to_vertex[i])) s.black[i].set(slot_of.at(u));
        for (Vertex u : g.red_neighbors(slot_to_vertex[i])) s.red[i].set(slot_of.at(u));
    }
    for (Vertex v : special) {
        auto it = slot_of.find(v);
        if (it == slot_of.end())
            throw Error(ErrorKind::precondition,
                        "special vertex " + std::to_string(v) + " not in trigraph");
        s.special.set(it->second);
    }
    if (mode == Mode::respecting) {
        bool bad = false;
        s.special.for_each([&](int i) {
            if ((s.red[i] & s.alive).any()) bad = true;
        });
        if (bad)
            throw Error(ErrorKind::precondition, "respected set has nonzero red degree");
    }
    return s;
}

struct BudgetExhausted {};
struct Aborted {};

struct Searcher {
    State state;
    int d = 0;
    long long budget = 0;  // 0 = unlimited
    long long nodes = 0;
    std::unordered_set<std::string> memo;
    std::vector<State> snapshots;
    std::vector<std::pair<int, int>> chosen;
    const std::atomic<bool>* stop = nullptr;

    struct Cand {
        int score;
        int i, j;
    };

    void collect_scored(std::vector<Cand>& out) {
        out.clear();
        State tmp;
        state.for_each_candidate([&](int i, int j) {
            tmp = state;
            tmp.contract(i, j);
            out.push_back({tmp.max_red(), i, j});
        });
        std::stable_sort(out.begin(), out.end(), [](const Cand& a, const Cand& b) {
            if (a.score != b.score) return a.score < b.score;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        });
    }

    bool dfs(std::size_t depth) {
        if (stop && stop->load(std::memory_order_relaxed)) throw Aborted{};
        if (budget > 0 && ++nodes > budget) throw BudgetExhausted{};
        if (budget == 0) ++nodes;
        if (state.terminal()) return true;

        std::string key = state.memo_key();
        if (memo.count(key)) return false;

        // dominance: a twin pair can always be contracted first
        int ti = -1, tj = -1;
        {
            bool found = false;
            state.for_each_candidate([&](int i, int j) {
                if (!found && state.twins(i, j)) {
                    ti = i;
                    tj = j;
                    found = true;
                }
            });
        }
        if (snapshots.size() <= depth) snapshots.resize(depth + 1);
        if (ti >= 0) {
            snapshots[depth] = state;
            state.contract(ti, tj);
            if (state.max_red() <= d) {
                chosen.push_back({ti, tj});
                if (dfs(depth + 1)) return true;
                chosen.pop_back();
            }
            state = snapshots[depth];
        } else {
            std::vector<Cand> cands;
            collect_scored(cands);
            for (const Cand& c : cands) {
                if (c.score > d) break;  // sorted; the rest only get worse
                snapshots[depth] = state;
                state.contract(c.i, c.j);
                chosen.push_back({c.i, c.j});
                if (dfs(depth + 1)) return true;
                chosen.pop_back();
                state = snapshots[depth];
            }
        }
        if (memo.size() < kMemoCap) memo.insert(std::move(key));
        return false;
    }
};

ContractionSequence steps_to_sequence(const std::vector<std::pair<int, int>>& steps,
                                      const std::vector<Vertex>& slot_to_vertex) {
    ContractionSequence s;
    for (auto [a, b] : steps) s.push(slot_to_vertex[a], slot_to_vertex[b]);
    return s;
}

// One greedy descent; returns steps if it reaches a terminal state without
// ever exceeding cap (cap < 0: never give up).
std::optional<std::vector<std::pair<int, int>>> greedy_descent(State state, int cap) {
    std::vector<std::pair<int, int>> steps;
    State tmp;
    while (!state.terminal()) {
        int besti = -1, bestj = -1, best = INT32_MAX;
        state.for_each_candidate([&](int i, int j) {
            tmp = state;
            tmp.contract(i, j);
            int score = tmp.max_red();
            if (score < best) {
                best = score;
                besti = i;
                bestj = j;
            }
        });
        if (besti < 0) return std::nullopt;
        if (cap >= 0 && best > cap) return std::nullopt;
        state.contract(besti, bestj);
        steps.push_back({besti, bestj});
    }
    return steps;
}

DecideResult decide(const State& root, int d, const OracleOptions& opts,
                    const std::vector<Vertex>& slot_to_vertex) {
    DecideResult result;
    if (root.max_red() > d) {
        result.outcome = Outcome::no;
        return result;
    }
    // cheap upper-bound probe before the full search
    if (auto steps = greedy_descent(root, d)) {
        result.outcome = Outcome::yes;
        result.witness = steps_to_sequence(*steps, slot_to_vertex);
        return result;
    }

    int threads = std::max(1, opts.threads);
    if (threads == 1) {
        Searcher searcher;
        searcher.state = root;
        searcher.d = d;
        searcher.budget = opts.budget;
        try {
            if (searcher.dfs(0)) {
                result.outcome = Outcome::yes;
                result.witness = steps_to_sequence(searcher.chosen, slot_to_vertex);
            } else {
                result.outcome = Outcome::no;
            }
        } catch (const BudgetExhausted&) {
            result.outcome = Outcome::inconclusive;
        }
        result.nodes = searcher.nodes;
        return result;
    }

    // parallel fan-out over root branches; workers run independent
    // sequential searches with private memo tables
    Searcher probe;
    probe.state = root;
    std::vector<Searcher::Cand> cands;
    probe.collect_scored(cands);
    cands.erase(std::remove_if(cands.begin(), cands.end(),
                               [&](const Searcher::Cand& c) { return c.score > d; }),
                cands.end());
    if (cands.empty()) {
        // no admissible first move and not terminal
        result.outcome = Outcome::no;
        return result;
    }

    std::atomic<bool> stop{false};
    std::atomic<bool> any_budget{false};
    std::atomic<long long> total_nodes{0};
    std::mutex winner_mutex;
    std::optional<ContractionSequence> winner;

    auto worker = [&](int wid) {
        Searcher searcher;
        searcher.d = d;
        searcher.budget = opts.budget > 0 ? std::max<long long>(1, opts.budget / threads) : 0;
        searcher.stop = &stop;
        for (std::size_t c = wid; c < cands.size(); c += threads) {
            if (stop.load()) return;
            searcher.state = root;
            searcher.state.contract(cands[c].i, cands[c].j);
            searcher.chosen.clear();
            searcher.chosen.push_back({cands[c].i, cands[c].j});
            searcher.memo.clear();
            try {
                if (searcher.dfs(1)) {
                    std::lock_guard<std::mutex> lock(winner_mutex);
                    if (!winner) winner = steps_to_sequence(searcher.chosen, slot_to_vertex);
                    stop.store(true);
                    break;
                }
            } catch (const BudgetExhausted&) {
                any_budget.store(true);
            } catch (const Aborted&) {
                break;
            }
        }
        total_nodes += searcher.nodes;
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();

    result.nodes = total_nodes.load();
    if (winner) {
        result.outcome = Outcome::yes;
        result.witness = std::move(winner);
    } else if (any_budget.load()) {
        result.outcome = Outcome::inconclusive;
    } else {
        result.outcome = Outcome::no;
    }
    return result;
}

ExactResult exact_search(const Trigraph& g, Mode mode, const VertexSet& special,
                         const OracleOptions& opts) {
    std::vector<Vertex> slot_to_vertex;
    State root = make_state(g, mode, special, slot_to_vertex);

    int lb = root.max_red();
    if (!root.terminal()) {
        int first_move = INT32_MAX;
        State tmp;
        root.for_each_candidate([&](int i, int j) {
            tmp = root;
            tmp.contract(i, j);
            first_move = std::min(first_move, tmp.max_red());
        });
        if (first_move != INT32_MAX) lb = std::max(lb, first_move);
    }

    ExactResult result;
    for (int d = lb; d <= root.n; ++d) {
        DecideResult dr = decide(root, d, opts, slot_to_vertex);
        result.nodes += dr.nodes;
        if (dr.outcome == Outcome::yes) {
            result.width = d;
            result.witness = std::move(*dr.witness);
            return result;
        }
        if (dr.outcome == Outcome::inconclusive)
            throw Error(ErrorKind::resource, "node budget exhausted at width " + std::to_string(d));
    }
    throw Error(ErrorKind::internal, "exact search exceeded the trivial width bound");
}

}  // namespace

ExactResult exact_tww(const Trigraph& g, const OracleOptions& opts) {
    if (g.num_vertices() == 0) throw Error(ErrorKind::precondition, "empty trigraph");
    if (static_cast<int>(g.num_vertices()) > opts.max_n_plain)
        throw Error(ErrorKind::resource, "graph order " + std::to_string(g.num_vertices()) +
                                             " exceeds plain exact limit " +
                                             std::to_string(opts.max_n_plain));
    return exact_search(g, Mode::plain, {}, opts);
}

ExactResult exact_tww_respecting(const Trigraph& g, const VertexSet& a, const OracleOptions& opts) {
    if (a.empty()) return exact_tww(g, opts);
    if (static_cast<int>(g.num_vertices()) > opts.max_n_respect)
        throw Error(ErrorKind::resource, "graph order " + std::to_string(g.num_vertices()) +
                                             " exceeds respecting exact limit " +
                                             std::to_string(opts.max_n_respect));
    return exact_search(g, Mode::respecting, a, opts);
}

ExactResult exact_tww_restricted(const Trigraph& g, const VertexSet& u, const OracleOptions& opts) {
    if (u.empty()) throw Error(ErrorKind::precondition, "restricted mode needs a nonempty set");
    if (static_cast<int>(u.size()) > opts.max_u)
        throw Error(ErrorKind::resource, "restricted set size " + std::to_string(u.size()) +
                                             " exceeds limit " + std::to_string(opts.max_u));
    return exact_search(g, Mode::restricted, u, opts);
}

DecideResult decide_tww_le(const Trigraph& g, int d, const OracleOptions& opts) {
    if (g.num_vertices() == 0) throw Error(ErrorKind::precondition, "empty trigraph");
    std::vector<Vertex> slot_to_vertex;
    State root = make_state(g, Mode::plain, {}, slot_to_vertex);
    return decide(root, d, opts, slot_to_vertex);
}

namespace {

ContractionSequence greedy(const Trigraph& g, Mode mode, const VertexSet& special) {
    std::vector<Vertex> slot_to_vertex;
    State root = make_state(g, mode, special, slot_to_vertex);
    auto steps = greedy_descent(std::move(root), -1);
    if (!steps) throw Error(ErrorKind::internal, "greedy descent failed to reach a terminal state");
    return steps_to_sequence(*steps, slot_to_vertex);
}

}  // namespace

ContractionSequence greedy_complete(const Trigraph& g) { return greedy(g, Mode::plain, {}); }

ContractionSequence greedy_respecting(const Trigraph& g, const VertexSet& a) {
    return greedy(g, Mode::respecting, a);
}

ContractionSequence greedy_restricted(const Trigraph& g, const VertexSet& u) {
    return greedy(g, Mode::restricted, u);
}

}  // namespace tww
