#pragma once

#include <deque>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

// A node set whose removal disconnects the graph, plus the witnessing
// bipartition: no edge joins part1 to part2.
struct Separator {
    std::vector<int> nodes;  // ascending node labels; empty iff already disconnected
    std::vector<int> part1;
    std::vector<int> part2;
};

inline std::string to_string(const std::vector<int>& nodes) {
    std::string s = "{";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(nodes[i]);
    }
    return s + "}";
}

// Connectivity hypothesis failure carrying the measured connectivity and a
// witness separator, so callers can hand the witness to the falsifier.
class ConnectivityError : public HypothesisError {
public:
    ConnectivityError(const std::string& what_arg, int connectivity, Separator separator)
        : HypothesisError(what_arg), connectivity_(connectivity), separator_(std::move(separator)) {}

    int connectivity() const { return connectivity_; }
    const Separator& separator() const { return separator_; }

private:
    int connectivity_;
    Separator separator_;
};

namespace detail {

// Unit-node-capacity flow network: node v splits into in(v) -> out(v) with
// capacity 1; each graph edge becomes a pair of high-capacity arcs. Max flow
// from out(s) to in(t) equals the number of internally disjoint s-t paths.
class NodeSplitNetwork {
public:
    explicit NodeSplitNetwork(const Graph& g) : n_(g.node_count()), arcs_(2 * static_cast<std::size_t>(n_)) {
        const int big = n_;  // any value > n-2 acts as infinite here
        for (int v = 1; v <= n_; ++v) add_arc(in(v), out(v), 1);
        for (auto [u, v] : g.edges()) {
            add_arc(out(u), in(v), big);
            add_arc(out(v), in(u), big);
        }
    }

    static int in(int v) { return 2 * (v - 1); }
    static int out(int v) { return 2 * (v - 1) + 1; }

    // Edmonds-Karp; augmenting paths found by BFS scanning arcs in insertion
    // order, so the result and the residual cut are deterministic.
    int max_flow(int source, int sink) {
        int flow = 0;
        for (;;) {
            std::vector<std::pair<int, int>> prev(arcs_.size(), {-1, -1});  // node -> (from, arc idx)
            std::deque<int> queue{source};
            prev[static_cast<std::size_t>(source)] = {source, -1};
            while (!queue.empty() && prev[static_cast<std::size_t>(sink)].first < 0) {
                const int u = queue.front();
                queue.pop_front();
                const auto& alist = arcs_[static_cast<std::size_t>(u)];
                for (int k = 0; k < static_cast<int>(alist.size()); ++k) {
                    const Arc& a = alist[static_cast<std::size_t>(k)];
                    if (a.cap > 0 && prev[static_cast<std::size_t>(a.to)].first < 0) {
                        prev[static_cast<std::size_t>(a.to)] = {u, k};
                        queue.push_back(a.to);
                    }
                }
            }
            if (prev[static_cast<std::size_t>(sink)].first < 0) return flow;
            int bottleneck = n_;
            for (int v = sink; v != source;) {
                auto [u, k] = prev[static_cast<std::size_t>(v)];
                bottleneck = std::min(bottleneck, arcs_[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)].cap);
                v = u;
            }
            for (int v = sink; v != source;) {
                auto [u, k] = prev[static_cast<std::size_t>(v)];
                Arc& a = arcs_[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)];
                a.cap -= bottleneck;
                arcs_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += bottleneck;
                v = u;
            }
            flow += bottleneck;
        }
    }

    // Nodes whose internal arc is saturated and crosses the residual cut.
    std::vector<int> cut_nodes(int source) const {
        std::vector<char> reach(arcs_.size(), 0);
        std::vector<int> stack{source};
        reach[static_cast<std::size_t>(source)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const Arc& a : arcs_[static_cast<std::size_t>(u)]) {
                if (a.cap > 0 && !reach[static_cast<std::size_t>(a.to)]) {
                    reach[static_cast<std::size_t>(a.to)] = 1;
                    stack.push_back(a.to);
                }
            }
        }
        std::vector<int> cut;
        for (int v = 1; v <= n_; ++v)
            if (reach[static_cast<std::size_t>(in(v))] && !reach[static_cast<std::size_t>(out(v))]) cut.push_back(v);
        return cut;
    }

private:
    struct Arc {
        int to;
        int cap;
        int rev;  // index of the reverse arc in arcs_[to]
    };

    void add_arc(int u, int v, int cap) {
        arcs_[static_cast<std::size_t>(u)].push_back({v, cap, static_cast<int>(arcs_[static_cast<std::size_t>(v)].size())});
        arcs_[static_cast<std::size_t>(v)].push_back({u, 0, static_cast<int>(arcs_[static_cast<std::size_t>(u)].size()) - 1});
    }

    int n_;
    std::vector<std::vector<Arc>> arcs_;
};

// Local connectivity between non-adjacent s and t (Menger).
inline int st_vertex_connectivity(const Graph& g, int s, int t) {
    NodeSplitNetwork net(g);
    return net.max_flow(NodeSplitNetwork::out(s), NodeSplitNetwork::in(t));
}

inline std::vector<int> st_min_vertex_cut(const Graph& g, int s, int t) {
    NodeSplitNetwork net(g);
    net.max_flow(NodeSplitNetwork::out(s), NodeSplitNetwork::in(t));
    return net.cut_nodes(NodeSplitNetwork::out(s));
}

// Even's sweep: kappa = min over kappa(v1, t) for t not adjacent to v1, and
// kappa(u, w) over non-adjacent pairs of neighbors of v1 (covers the case
// where every minimum separator contains v1). Returns the achieving pair.
inline std::pair<int, std::pair<int, int>> connectivity_with_pair(const Graph& g) {
    const int n = g.node_count();
    if (n < 2) throw InputError("vertex connectivity needs n >= 2");
    if (g.is_complete()) return {n - 1, {-1, -1}};
    int best = n - 1;
    std::pair<int, int> best_pair{-1, -1};
    const int s = 1;
    for (int t = 2; t <= n; ++t) {
        if (g.has_edge(s, t)) continue;
        const int k = st_vertex_connectivity(g, s, t);
        if (k < best) {
            best = k;
            best_pair = {s, t};
        }
    }
    const auto& nbrs = g.neighbors(s);
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
            const int u = nbrs[a], w = nbrs[b];
            if (g.has_edge(u, w)) continue;
            const int k = st_vertex_connectivity(g, u, w);
            if (k < best) {
                best = k;
                best_pair = {u, w};
            }
        }
    }
    return {best, best_pair};
}

// Connected component of `from` after deleting `removed` (both 1-based).
inline std::vector<int> component_without(const Graph& g, const std::vector<char>& removed, int from) {
    std::vector<char> vis(static_cast<std::size_t>(g.node_count()) + 1, 0);
    std::vector<int> stack{from}, comp;
    vis[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w : g.neighbors(v)) {
            if (!removed[static_cast<std::size_t>(w)] && !vis[static_cast<std::size_t>(w)]) {
                vis[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

}  // namespace detail

// Vertex connectivity per the standard definition: n-1 for the complete
// graph, otherwise the minimum size of a node set whose deletion disconnects
// the graph (0 if already disconnected). Max-flow based, not brute force.
inline int vertex_connectivity(const Graph& g) {
    return detail::connectivity_with_pair(g).first;
}

// Exhaustive oracle: minimum cardinality over all node subsets whose deletion
// disconnects the graph, enumerated in increasing size. Intended for testing
// the max-flow implementation at small n.
inline int brute_force_connectivity(const Graph& g) {
    const int n = g.node_count();
    if (n < 2) throw InputError("vertex connectivity needs n >= 2");
    if (n > 12) throw InputError("brute-force connectivity capped at n <= 12");
    if (g.is_complete()) return n - 1;
    for (int k = 0; k <= n - 2; ++k) {
        std::vector<int> comb(static_cast<std::size_t>(k));
        std::iota(comb.begin(), comb.end(), 1);
        for (;;) {
            std::vector<char> removed(static_cast<std::size_t>(n) + 1, 0);
            for (int v : comb) removed[static_cast<std::size_t>(v)] = 1;
            int from = 0;
            for (int v = 1; v <= n; ++v)
                if (!removed[static_cast<std::size_t>(v)]) {
                    from = v;
                    break;
                }
            const auto comp = detail::component_without(g, removed, from);
            if (static_cast<int>(comp.size()) < n - k) return k;
            // next k-combination of {1..n}, lexicographic
            int i = k - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return n - 1;
}

// Minimum separator with its witnessing bipartition. For a disconnected
// graph the separator is empty and the parts are one component vs the rest.
inline Separator min_separator(const Graph& g) {
    const int n = g.node_count();
    if (n < 3) throw InputError("min_separator needs n >= 3");
    if (g.is_complete()) throw HypothesisError("complete graph has no separator");
    const auto [kappa, pair] = detail::connectivity_with_pair(g);
    Separator sep;
    int anchor = 1;
    if (kappa > 0) {
        sep.nodes = detail::st_min_vertex_cut(g, pair.first, pair.second);
        anchor = pair.first;
    }
    std::vector<char> removed(static_cast<std::size_t>(n) + 1, 0);
    for (int v : sep.nodes) removed[static_cast<std::size_t>(v)] = 1;
    sep.part1 = detail::component_without(g, removed, anchor);
    for (int v = 1; v <= n; ++v)
        if (!removed[static_cast<std::size_t>(v)] && !std::binary_search(sep.part1.begin(), sep.part1.end(), v))
            sep.part2.push_back(v);
    return sep;
}

}  // namespace rigidity
