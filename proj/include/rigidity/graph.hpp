#pragma once

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"

namespace rigidity {

// Simple undirected graph on nodes labeled 1..n. Edges are unordered pairs
// stored with i < j, sorted lexicographically. Connectedness is not an
// invariant; operations state their own hypotheses.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
        if (n_ < 1) throw InputError("graph needs at least one node");
        adj_.assign(static_cast<std::size_t>(n_) + 1, {});
        std::set<std::pair<int, int>> seen;
        for (auto [i, j] : edge_list) {
            if (i > j) std::swap(i, j);
            if (i < 1 || j > n_) throw InputError("edge endpoint out of range 1.." + std::to_string(n_));
            if (i == j) throw InputError("self-loop at node " + std::to_string(i));
            if (!seen.insert({i, j}).second)
                throw InputError("duplicate edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
        }
        edges_.assign(seen.begin(), seen.end());
        for (auto [i, j] : edges_) {
            adj_[static_cast<std::size_t>(i)].push_back(j);
            adj_[static_cast<std::size_t>(j)].push_back(i);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Sorted pairs (i, j) with i < j.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // E of the complement graph: all unordered non-adjacent pairs, sorted.
    std::vector<std::pair<int, int>> non_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                if (!has_edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    bool has_edge(int i, int j) const {
        check_node(i);
        check_node(j);
        if (i == j) return false;
        const auto& nbrs = adj_[static_cast<std::size_t>(i)];
        return std::binary_search(nbrs.begin(), nbrs.end(), j);
    }

    const std::vector<int>& neighbors(int i) const {
        check_node(i);
        return adj_[static_cast<std::size_t>(i)];
    }

    int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

    bool is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }

    bool is_connected() const {
        if (n_ == 1) return true;
        std::vector<char> vis(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<int> stack{1};
        vis[1] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj_[static_cast<std::size_t>(v)]) {
                if (!vis[static_cast<std::size_t>(w)]) {
                    vis[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n_;
    }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    void check_node(int i) const {
        if (i < 1 || i > n_) throw InputError("node index " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;  // adj_[0] unused; labels are 1-based
};

namespace detail {

inline bool parse_two_ints(const std::string& line, int& a, int& b) {
    std::istringstream iss(line);
    std::string extra;
    if (!(iss >> a >> b)) return false;
    if (iss >> extra) return false;
    return true;
}

}  // namespace detail

// Edge-list text format: line 1 = "n m"; then m lines "i j" (1-based).
// Lines starting with '#' are ignored; blank lines are skipped; LF or CRLF.
inline Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    int edges_read = 0;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (n < 0) {
            if (!detail::parse_two_ints(line, n, m))
                throw ParseError(lineno, "expected header \"n m\", got \"" + line + "\"");
            if (n < 1) throw ParseError(lineno, "node count must be positive");
            if (m < 0) throw ParseError(lineno, "edge count must be nonnegative");
            continue;
        }
        if (edges_read == m) throw ParseError(lineno, "unexpected extra line after " + std::to_string(m) + " edges");
        int i = 0, j = 0;
        if (!detail::parse_two_ints(line, i, j))
            throw ParseError(lineno, "expected edge \"i j\", got \"" + line + "\"");
        if (i == j) throw ParseError(lineno, "self-loop at node " + std::to_string(i));
        if (i < 1 || i > n || j < 1 || j > n)
            throw ParseError(lineno, "node index out of range 1.." + std::to_string(n));
        auto e = std::minmax(i, j);
        if (!seen.insert({e.first, e.second}).second)
            throw ParseError(lineno, "duplicate edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "}");
        edges.emplace_back(e.first, e.second);
        ++edges_read;
    }
    if (n < 0) throw ParseError(lineno, "missing header \"n m\"");
    if (edges_read < m)
        throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " + std::to_string(edges_read));
    return Graph(n, std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
    return out.str();
}

// Generator families with known connectivity: cycle -> 2, path -> 1,
// K_n -> n-1, K_{a,b} -> min(a,b), circulant(n,k) -> 2k for n >= 2k+2.
enum class Family { cycle, path, complete, complete_bipartite, circulant };

inline Family family_from_name(const std::string& name) {
    if (name == "cycle") return Family::cycle;
    if (name == "path") return Family::path;
    if (name == "complete") return Family::complete;
    if (name == "complete_bipartite") return Family::complete_bipartite;
    if (name == "circulant") return Family::circulant;
    throw InputError("unknown graph family \"" + name + "\" (expected cycle, path, complete, complete_bipartite or circulant)");
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::cycle: return "cycle";
        case Family::path: return "path";
        case Family::complete: return "complete";
        case Family::complete_bipartite: return "complete_bipartite";
        case Family::circulant: return "circulant";
    }
    return "?";
}

inline Graph generate(Family f, const std::vector<int>& params) {
    const auto want = [&](std::size_t k) {
        if (params.size() != k)
            throw InputError(family_name(f) + " takes " + std::to_string(k) + " parameter(s), got " + std::to_string(params.size()));
    };
    std::vector<std::pair<int, int>> edges;
    switch (f) {
        case Family::cycle: {
            want(1);
            const int n = params[0];
            if (n < 3) throw InputError("cycle needs n >= 3");
            for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(1, n);
            return Graph(n, std::move(edges));
        }
        case Family::path: {
            want(1);
            const int n = params[0];
            if (n < 2) throw InputError("path needs n >= 2");
            for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
            return Graph(n, std::move(edges));
        }
        case Family::complete: {
            want(1);
            const int n = params[0];
            if (n < 1) throw InputError("complete needs n >= 1");
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
            return Graph(n, std::move(edges));
        }
        case Family::complete_bipartite: {
            want(2);
            const int a = params[0], b = params[1];
            if (a < 1 || b < 1) throw InputError("complete_bipartite needs a, b >= 1");
            for (int i = 1; i <= a; ++i)
                for (int j = a + 1; j <= a + b; ++j) edges.emplace_back(i, j);
            return Graph(a + b, std::move(edges));
        }
        case Family::circulant: {
            want(2);
            const int n = params[0], k = params[1];
            if (n < 3) throw InputError("circulant needs n >= 3");
            if (k < 1 || 2 * k >= n) throw InputError("circulant needs 1 <= k < n/2");
            for (int i = 1; i <= n; ++i)
                for (int t = 1; t <= k; ++t) {
                    const int j = (i - 1 + t) % n + 1;
                    edges.emplace_back(std::min(i, j), std::max(i, j));
                }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            return Graph(n, std::move(edges));
        }
    }
    throw InputError("unknown family");
}

}  // namespace rigidity
