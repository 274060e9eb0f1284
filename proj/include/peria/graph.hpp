#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

namespace peria {

struct DisjointSets {
    explicit DisjointSets(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    // keep the smaller root so class representatives are deterministic
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }
    int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
};

// Undirected simple graph on vertices 0..n-1.
class SimpleGraph {
public:
    explicit SimpleGraph(int n = 0) : adj_(n) {}

    int n() const { return static_cast<int>(adj_.size()); }

    int add_vertex() {
        adj_.emplace_back();
        return n() - 1;
    }

    void add_edge(int a, int b) {
        if (a == b || has_edge(a, b)) return;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        edge_set_.insert(key(a, b));
        edges_.push_back({std::min(a, b), std::max(a, b)});
    }

    bool has_edge(int a, int b) const { return edge_set_.count(key(a, b)) > 0; }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // canonical (min,max) pairs in insertion order
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int edge_count() const { return static_cast<int>(edges_.size()); }

    // -1 marks unreachable vertices
    std::vector<int> bfs(int src) const {
        std::vector<int> d(n(), -1);
        d[src] = 0;
        std::deque<int> q{src};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj_[x])
                if (d[y] < 0) {
                    d[y] = d[x] + 1;
                    q.push_back(y);
                }
        }
        return d;
    }

    // BFS that refuses to traverse edges for which blocked(a,b) holds.
    std::vector<int> bfs_avoiding(int src,
                                  const std::unordered_set<int64_t>& blocked) const {
        std::vector<int> d(n(), -1);
        d[src] = 0;
        std::deque<int> q{src};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj_[x]) {
                if (d[y] >= 0 || blocked.count(key(x, y))) continue;
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
        return d;
    }

    // component id per vertex after deleting the given edges; ids are dense,
    // numbered by smallest contained vertex order
    std::vector<int> components_avoiding(const std::unordered_set<int64_t>& blocked) const {
        std::vector<int> comp(n(), -1);
        int next = 0;
        for (int s = 0; s < n(); ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = next;
            std::deque<int> q{s};
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                for (int y : adj_[x]) {
                    if (comp[y] >= 0 || blocked.count(key(x, y))) continue;
                    comp[y] = next;
                    q.push_back(y);
                }
            }
            ++next;
        }
        return comp;
    }

    std::vector<int> components() const { return components_avoiding({}); }

    bool connected() const {
        if (n() == 0) return true;
        auto d = bfs(0);
        return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
    }

    // all triangles as sorted triples, lexicographic
    std::vector<std::array<int, 3>> triangles() const {
        std::vector<std::array<int, 3>> out;
        for (auto [a, b] : edges_)
            for (int c : adj_[a])
                if (c > b && has_edge(b, c)) out.push_back({a, b, c});
        std::sort(out.begin(), out.end());
        return out;
    }

    // induced K4 minus an edge: vertices {a,b,c,d} with exactly 5 of the 6
    // pairs adjacent.  Returns one witness (missing pair last) or nothing.
    std::optional<std::array<int, 4>> find_k4_minus() const {
        for (auto [a, b] : edges_) {
            // c,d adjacent to both a and b; K4^- iff exactly one of the
            // remaining pairs (c,d) is a non-edge with everything else present
            std::vector<int> common;
            for (int c : adj_[a])
                if (c != b && has_edge(b, c)) common.push_back(c);
            for (size_t i = 0; i < common.size(); ++i)
                for (size_t j = i + 1; j < common.size(); ++j)
                    if (!has_edge(common[i], common[j]))
                        return std::array<int, 4>{a, b, common[i], common[j]};
        }
        return std::nullopt;
    }

    // induced K_{3,2}: parts {a,b,c} and {x,y}, all 6 cross pairs adjacent,
    // no edge inside either part.  Returns (a,b,c,x,y) or nothing.
    std::optional<std::array<int, 5>> find_k32() const {
        for (int x = 0; x < n(); ++x)
            for (int y = x + 1; y < n(); ++y) {
                if (has_edge(x, y)) continue;
                std::vector<int> common;
                for (int a : adj_[x])
                    if (a != y && has_edge(a, y)) common.push_back(a);
                if (common.size() < 3) continue;
                std::sort(common.begin(), common.end());
                for (size_t i = 0; i < common.size(); ++i)
                    for (size_t j = i + 1; j < common.size(); ++j) {
                        if (has_edge(common[i], common[j])) continue;
                        for (size_t k = j + 1; k < common.size(); ++k) {
                            if (has_edge(common[i], common[k]) ||
                                has_edge(common[j], common[k]))
                                continue;
                            return std::array<int, 5>{common[i], common[j],
                                                      common[k], x, y};
                        }
                    }
            }
        return std::nullopt;
    }

    static int64_t key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
    }

private:
    std::vector<std::vector<int>> adj_;
    std::unordered_set<int64_t> edge_set_;
    std::vector<std::pair<int, int>> edges_;
};

} // namespace peria
