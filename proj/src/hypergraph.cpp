#include "lcmix/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "lcmix/errors.hpp"

namespace lcmix {

Hypergraph Hypergraph::make(int n, int r, std::vector<std::vector<int>> edges) {
    if (n < 1) throw InputError("hypergraph needs at least one vertex");
    if (r < 2) throw InputError("hypergraph uniformity must be >= 2");
    for (auto& e : edges) {
        if ((int)e.size() != r)
            throw InputError("edge of size " + std::to_string(e.size()) +
                             " in an r=" + std::to_string(r) + " hypergraph");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InputError("edge with a repeated vertex");
        for (int v : e)
            if (v < 0 || v >= n) throw InputError("edge vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Hypergraph h;
    h.n = n;
    h.r = r;
    h.edges = std::move(edges);
    return h;
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges)
        for (int v : e) ++deg[v];
    return deg;
}

std::vector<std::vector<int>> Hypergraph::incident_edges() const {
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < m(); ++e)
        for (int v : edges[e]) inc[v].push_back(e);
    return inc;
}

std::vector<int> links(const Hypergraph& h) {
    auto deg = h.degrees();
    std::vector<int> out;
    for (int e = 0; e < h.m(); ++e) {
        int deg2 = 0, deg1 = 0;
        for (int v : h.edges[e]) {
            if (deg[v] == 2) ++deg2;
            else if (deg[v] == 1) ++deg1;
        }
        if (deg2 == 2 && deg1 == h.r - 2) out.push_back(e);
    }
    return out;
}

std::vector<int> pendent_edges(const Hypergraph& h) {
    auto deg = h.degrees();
    std::vector<int> out;
    for (int e = 0; e < h.m(); ++e) {
        int high = 0;
        for (int v : h.edges[e])
            if (deg[v] >= 2) ++high;
        if (high <= 1) out.push_back(e);
    }
    return out;
}

namespace {

// Connector: a degree-2 vertex shared between two links.
struct LinkGraph {
    std::vector<int> link_edges;
    std::vector<int> link_of_edge;                          // edge index -> link rank or -1
    std::vector<std::vector<std::pair<int, int>>> adj;      // link rank -> (vertex, other rank)
};

LinkGraph build_link_graph(const Hypergraph& h) {
    LinkGraph g;
    g.link_edges = links(h);
    g.link_of_edge.assign(h.m(), -1);
    for (int i = 0; i < (int)g.link_edges.size(); ++i) g.link_of_edge[g.link_edges[i]] = i;
    g.adj.assign(g.link_edges.size(), {});
    auto inc = h.incident_edges();
    for (int v = 0; v < h.n; ++v) {
        if (inc[v].size() != 2) continue;
        int a = g.link_of_edge[inc[v][0]];
        int b = g.link_of_edge[inc[v][1]];
        if (a < 0 || b < 0) continue;
        g.adj[a].push_back({v, b});
        g.adj[b].push_back({v, a});
    }
    return g;
}

} // namespace

FiberDecomposition fiber_decomposition(const Hypergraph& h) {
    LinkGraph g = build_link_graph(h);
    const int L = (int)g.link_edges.size();
    FiberDecomposition out;
    out.link_edges = g.link_edges;
    out.pendent = pendent_edges(h);

    std::vector<int> comp(L, -1);
    for (int s = 0; s < L; ++s) {
        if (comp[s] >= 0) continue;
        // collect the component
        std::vector<int> members;
        std::vector<int> stack{s};
        comp[s] = s;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (auto [v, w] : g.adj[u]) {
                (void)v;
                if (comp[w] < 0) {
                    comp[w] = s;
                    stack.push_back(w);
                }
            }
        }
        int shared = 0;
        for (int u : members) shared += (int)g.adj[u].size();
        shared /= 2;
        const bool cycle = shared == (int)members.size();

        // pick the chain start: least-index endpoint for open chains, least
        // member for cycles
        int start = -1;
        if (cycle) {
            for (int u : members)
                if (start < 0 || g.link_edges[u] < g.link_edges[start]) start = u;
        } else {
            for (int u : members)
                if (g.adj[u].size() <= 1 &&
                    (start < 0 || g.link_edges[u] < g.link_edges[start]))
                    start = u;
        }

        Fiber fiber;
        fiber.degenerate = cycle;
        std::set<int> used_connectors;
        int current = start;
        for (;;) {
            fiber.link_edges.push_back(g.link_edges[current]);
            int next = -1, via = -1;
            for (auto [v, w] : g.adj[current]) {
                if (used_connectors.count(v)) continue;
                if (cycle && (int)fiber.link_edges.size() == (int)members.size()) continue;
                if (next < 0 || g.link_edges[w] < g.link_edges[next] ||
                    (g.link_edges[w] == g.link_edges[next] && v < via)) {
                    next = w;
                    via = v;
                }
            }
            if (next < 0 || (int)fiber.link_edges.size() == (int)members.size()) break;
            used_connectors.insert(via);
            current = next;
        }
        out.maximal_fibers.push_back(std::move(fiber));
    }
    std::sort(out.maximal_fibers.begin(), out.maximal_fibers.end(),
              [](const Fiber& a, const Fiber& b) { return a.link_edges[0] < b.link_edges[0]; });
    return out;
}

long long tau_fibrosity(const Hypergraph& h, int tau) {
    if (tau < 1) throw InputError("tau must be >= 1");
    long long total = 0;
    for (const Fiber& f : fiber_decomposition(h).maximal_fibers)
        total += (long long)f.link_edges.size() / tau;
    return total;
}

std::optional<int> girth(const Hypergraph& h) {
    // length-2 cycles: two edges meeting in two or more vertices
    for (int a = 0; a < h.m(); ++a)
        for (int b = a + 1; b < h.m(); ++b) {
            int common = 0;
            size_t i = 0, j = 0;
            while (i < h.edges[a].size() && j < h.edges[b].size()) {
                if (h.edges[a][i] == h.edges[b][j]) { ++common; ++i; ++j; }
                else if (h.edges[a][i] < h.edges[b][j]) ++i;
                else ++j;
            }
            if (common >= 2) return 2;
        }

    // Berge cycles of length l correspond to 2l-cycles of the vertex-edge
    // incidence graph; take its girth by BFS from every node.
    const int nodes = h.n + h.m();
    std::vector<std::vector<int>> adj(nodes);
    for (int e = 0; e < h.m(); ++e)
        for (int v : h.edges[e]) {
            adj[v].push_back(h.n + e);
            adj[h.n + e].push_back(v);
        }
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(nodes), parent(nodes);
    for (int s = 0; s < nodes; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        q.push(s);
        dist[s] = 0;
        parent[s] = -1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (2 * dist[u] >= best) break;
            for (int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best / 2;
}

Rat sdr(const Hypergraph& h, int edge_index) {
    if (edge_index < 0 || edge_index >= h.m()) throw InputError("edge index out of range");
    auto deg = h.degrees();
    Rat total(0);
    for (int v : h.edges[edge_index]) total = total + Rat(1, deg[v]);
    return total;
}

SdrTotal sdr_total(const Hypergraph& h) {
    auto deg = h.degrees();
    Rat total(0);
    bool isolated = false;
    for (int v = 0; v < h.n; ++v)
        if (deg[v] == 0) isolated = true;
    for (const auto& e : h.edges)
        for (int v : e) total = total + Rat(1, deg[v]);
    return {total, !isolated && total == Rat(h.n)};
}

bool is_beta_sparse(const Hypergraph& h, const Rat& beta) {
    if (!(beta > Rat(1))) throw InputError("beta must be > 1");
    // m < beta/(r-1) * n
    return Rat(h.m()) * Rat(h.r - 1) < beta * Rat(h.n);
}

namespace {

// Dinic max flow on small graphs, int64 capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    void add_edge(int from, int to, long long cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = (int)edges_.size() - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = (int)edges_.size() - 1;
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            long long f;
            while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
        }
        return flow;
    }

    // after run(): nodes reachable from s in the residual graph
    std::vector<char> min_cut_side(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
                    seen[edges_[e].to] = 1;
                    stack.push_back(edges_[e].to);
                }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        int next;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_, level_, iter_;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e >= 0; e = edges_[e].next) {
            auto& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                long long f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }
};

struct ClosureResult {
    long long best = 0;          // max of profit*|E'| - cost*|union E'| over all E'
    std::vector<int> edges;      // a maximizing subset (empty set attains 0)
};

// Maximum-closure / project-selection: pick edges (profit each) which force
// their vertices (cost each).
ClosureResult densest_edge_closure(const Hypergraph& h, long long edge_profit,
                                   long long vertex_cost) {
    const int source = 0;
    const int sink = h.m() + h.n + 1;
    MaxFlow mf(sink + 1);
    long long total = 0;
    const long long inf = std::numeric_limits<long long>::max() / 4;
    for (int e = 0; e < h.m(); ++e) {
        mf.add_edge(source, 1 + e, edge_profit);
        total += edge_profit;
        for (int v : h.edges[e]) mf.add_edge(1 + e, 1 + h.m() + v, inf);
    }
    for (int v = 0; v < h.n; ++v) mf.add_edge(1 + h.m() + v, sink, vertex_cost);
    long long flow = mf.run(source, sink);
    ClosureResult res;
    res.best = total - flow;
    auto side = mf.min_cut_side(source);
    for (int e = 0; e < h.m(); ++e)
        if (side[1 + e]) res.edges.push_back(e);
    return res;
}

long long union_size(const Hypergraph& h, const std::vector<int>& edge_subset) {
    std::set<int> verts;
    for (int e : edge_subset) verts.insert(h.edges[e].begin(), h.edges[e].end());
    return (long long)verts.size();
}

} // namespace

bool is_hereditarily_beta_sparse(const Hypergraph& h, const Rat& beta) {
    if (!(beta > Rat(1))) throw InputError("beta must be > 1");
    // Not hereditarily sparse iff some nonempty E' has
    // (r-1)*q*|E'| - p*|union E'| >= 0 where beta = p/q. Scaling profits by
    // K = m+1 and adding a +1 bonus per edge makes "max > 0" detect exactly
    // that, with the empty set still scoring 0.
    const long long K = h.m() + 1;
    auto res = densest_edge_closure(h, (long long)(h.r - 1) * beta.den() * K + 1,
                                    beta.num() * K);
    return res.best <= 0;
}

SparsityVerdict is_threshold_sparse(const Hypergraph& h, const Rat& gamma, const Rat& beta) {
    if (!(beta > Rat(1))) throw InputError("beta must be > 1");
    SparsityVerdict verdict;
    const long long kmax = std::min<long long>(gamma.floor(), h.m());
    if (kmax <= 0) { // no nonempty subhypergraph is constrained
        verdict.value = true;
        verdict.mode = VerdictMode::Exact;
        return verdict;
    }
    if (h.m() <= 20) {
        const unsigned full = 1u << h.m();
        std::vector<int> subset;
        for (unsigned mask = 1; mask < full; ++mask) {
            if (__builtin_popcount(mask) > kmax) continue;
            subset.clear();
            for (int e = 0; e < h.m(); ++e)
                if (mask & (1u << e)) subset.push_back(e);
            long long msub = (long long)subset.size();
            long long nsub = union_size(h, subset);
            if (!(Rat(msub) * Rat(h.r - 1) < beta * Rat(nsub))) {
                verdict.value = false;
                verdict.mode = VerdictMode::Exact;
                verdict.witness_edges = subset;
                return verdict;
            }
        }
        verdict.value = true;
        verdict.mode = VerdictMode::Exact;
        return verdict;
    }
    const long long K = h.m() + 1;
    auto res = densest_edge_closure(h, (long long)(h.r - 1) * beta.den() * K + 1,
                                    beta.num() * K);
    if (res.best <= 0) {
        verdict.value = true;
        verdict.mode = VerdictMode::Implied; // hereditarily sparse implies threshold sparse
        return verdict;
    }
    if ((long long)res.edges.size() <= kmax) {
        verdict.value = false;
        verdict.mode = VerdictMode::Exact;
        verdict.witness_edges = res.edges;
        return verdict;
    }
    verdict.mode = VerdictMode::Unknown; // dense witness is larger than gamma
    return verdict;
}

namespace {

struct ColorSearch {
    const Hypergraph& h;
    int colors;
    long long budget;
    std::vector<std::vector<int>> inc;
    std::vector<int> color;           // -1 = uncolored
    std::vector<int> uncolored_count; // per edge
    std::vector<int> mono;            // per edge: -1 virgin, -2 mixed, else the color
    std::vector<std::uint64_t> forbidden;
    std::vector<int> order_degree;

    ColorSearch(const Hypergraph& h_, int colors_, long long budget_)
        : h(h_), colors(colors_), budget(budget_), inc(h_.incident_edges()),
          color(h_.n, -1), uncolored_count(h_.m(), h_.r), mono(h_.m(), -1),
          forbidden(h_.n, 0), order_degree(h_.n, 0) {
        if (colors > 62) throw InputError("color count beyond 62 is unsupported");
        auto deg = h.degrees();
        order_degree = deg;
    }

    int pick() const {
        int best = -1, best_sat = -1;
        for (int v = 0; v < h.n; ++v) {
            if (color[v] >= 0) continue;
            int sat = __builtin_popcountll(forbidden[v]);
            if (sat > best_sat ||
                (sat == best_sat && order_degree[v] > order_degree[best])) {
                best = v;
                best_sat = sat;
            }
        }
        return best;
    }

    // Processes every incident edge even after a conflict so that undo can
    // reverse unconditionally.
    bool assign(int v, int c, std::vector<std::pair<int, std::uint64_t>>& trail) {
        color[v] = c;
        bool ok = true;
        for (int e : inc[v]) {
            --uncolored_count[e];
            if (mono[e] == -1) mono[e] = c;
            else if (mono[e] >= 0 && mono[e] != c) mono[e] = -2;
            if (mono[e] >= 0 && uncolored_count[e] == 0) ok = false; // monochromatic edge
            if (mono[e] >= 0 && uncolored_count[e] == 1) {
                for (int u : h.edges[e])
                    if (color[u] < 0) {
                        std::uint64_t bit = 1ULL << mono[e];
                        if (!(forbidden[u] & bit)) {
                            trail.push_back({u, forbidden[u]});
                            forbidden[u] |= bit;
                            if (__builtin_popcountll(forbidden[u]) >= colors) ok = false;
                        }
                    }
            }
        }
        return ok;
    }

    void undo(int v, const std::vector<std::pair<int, std::uint64_t>>& trail,
              const std::vector<int>& saved_mono) {
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) forbidden[it->first] = it->second;
        int i = 0;
        for (int e : inc[v]) {
            ++uncolored_count[e];
            mono[e] = saved_mono[i++];
        }
        color[v] = -1;
    }

    bool search(int assigned, int max_used) {
        if (--budget < 0) throw ResourceError("coloring search budget exhausted");
        if (assigned == h.n) return true;
        int v = pick();
        int limit = std::min(colors, max_used + 1); // one fresh color at most
        for (int c = 0; c < limit; ++c) {
            if (forbidden[v] & (1ULL << c)) continue;
            std::vector<std::pair<int, std::uint64_t>> trail;
            std::vector<int> saved_mono;
            saved_mono.reserve(inc[v].size());
            for (int e : inc[v]) saved_mono.push_back(mono[e]);
            bool ok = assign(v, c, trail);
            if (ok && search(assigned + 1, std::max(max_used, c + 1))) return true;
            undo(v, trail, saved_mono);
        }
        return false;
    }
};

} // namespace

bool is_weakly_colorable(const Hypergraph& h, int colors, long long node_budget) {
    if (colors < 1) throw InputError("color count must be >= 1");
    if (h.edges.empty()) return true;
    if (colors == 1) return false; // any edge would be monochromatic
    ColorSearch cs(h, colors, node_budget);
    return cs.search(0, 0);
}

int chromatic_number(const Hypergraph& h, long long node_budget) {
    if (h.edges.empty()) return 1;
    for (int c = 2; c <= h.n; ++c)
        if (is_weakly_colorable(h, c, node_budget)) return c;
    // r >= 2 guarantees n distinct classes always work
    return h.n;
}

namespace {

struct IndependenceSearch {
    const Hypergraph& h;
    long long budget;
    std::vector<std::vector<int>> inc;
    std::vector<int> order;   // vertices, highest degree first
    std::vector<int> chosen_in_edge;
    std::vector<char> in_set;
    int best = 0;
    std::vector<char> best_set;

    IndependenceSearch(const Hypergraph& h_, long long budget_)
        : h(h_), budget(budget_), inc(h_.incident_edges()),
          chosen_in_edge(h_.m(), 0), in_set(h_.n, 0) {
        order.resize(h.n);
        for (int i = 0; i < h.n; ++i) order[i] = i;
        auto deg = h.degrees();
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return deg[a] > deg[b]; });
    }

    void search(int pos, int count) {
        if (--budget < 0) throw ResourceError("independence search budget exhausted");
        if (count + (h.n - pos) <= best) return;
        if (pos == h.n) {
            best = count;
            best_set.assign(in_set.begin(), in_set.end());
            return;
        }
        int v = order[pos];
        bool can_take = true;
        for (int e : inc[v])
            if (chosen_in_edge[e] == h.r - 1) { can_take = false; break; }
        if (can_take) {
            in_set[v] = 1;
            for (int e : inc[v]) ++chosen_in_edge[e];
            search(pos + 1, count + 1);
            for (int e : inc[v]) --chosen_in_edge[e];
            in_set[v] = 0;
        }
        search(pos + 1, count);
    }
};

} // namespace

int independence_number(const Hypergraph& h, long long node_budget) {
    IndependenceSearch is(h, node_budget);
    is.search(0, 0);
    return is.best;
}

Joint fiber_joint(const Hypergraph& h, const std::vector<int>& chain, bool degenerate) {
    auto deg = h.degrees();
    if (degenerate) {
        int best = -1;
        for (int e : chain)
            for (int v : h.edges[e])
                if (deg[v] == 2 && (best < 0 || v < best)) best = v;
        return {{best}};
    }
    auto deg2 = [&](int e) {
        std::vector<int> out;
        for (int v : h.edges[e])
            if (deg[v] == 2) out.push_back(v);
        return out;
    };
    auto shares = [&](int v, int e) {
        return std::binary_search(h.edges[e].begin(), h.edges[e].end(), v);
    };
    int first = chain.front(), last = chain.back();
    int u = -1, v = -1;
    if (chain.size() == 1) {
        auto d2 = deg2(first);
        u = d2[0];
        v = d2[1];
    } else {
        for (int w : deg2(first))
            if (!shares(w, chain[1])) u = w;
        for (int w : deg2(last))
            if (!shares(w, chain[chain.size() - 2])) v = w;
    }
    if (u < 0 || v < 0) throw InputError("chain is not an open fiber");
    if (u > v) std::swap(u, v);
    return {{u, v}};
}

Joint joint_of(const Hypergraph& h, const FiberDecomposition& d, const JointOwner& owner,
               std::uint64_t) {
    auto deg = h.degrees();
    if (owner.kind == JointOwner::Kind::PendentEdge) {
        if (std::find(d.pendent.begin(), d.pendent.end(), owner.index) == d.pendent.end())
            throw InputError("edge is not pendent");
        int best = -1;
        for (int v : h.edges[owner.index])
            if (best < 0 || deg[v] > deg[best]) best = v; // least index wins ties
        return {{best}};
    }
    if (owner.index < 0 || owner.index >= (int)d.maximal_fibers.size())
        throw InputError("fiber index out of range");
    const Fiber& f = d.maximal_fibers[owner.index];
    return fiber_joint(h, f.link_edges, f.degenerate);
}

FibrosityReport fibrosity_report(const Hypergraph& h, int tau, const std::optional<Rat>& beta) {
    FibrosityReport rep;
    rep.tau = tau;
    auto d = fiber_decomposition(h);
    rep.link_count = (long long)d.link_edges.size();
    rep.fbr_max = (long long)d.maximal_fibers.size();
    rep.pendency = (long long)d.pendent.size();
    long long fbr = 0;
    for (const Fiber& f : d.maximal_fibers) fbr += (long long)f.link_edges.size() / tau;
    rep.fbr_tau = fbr;
    rep.girth = girth(h);
    auto s = sdr_total(h);
    rep.sdr_total = s.total;
    rep.sdr_identity_holds = s.identity_holds;
    if (beta) {
        rep.beta = *beta;
        rep.beta_sparse = is_beta_sparse(h, *beta);
        rep.hereditarily_beta_sparse = is_hereditarily_beta_sparse(h, *beta);
    }
    return rep;
}

} // namespace lcmix
