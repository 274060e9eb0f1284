#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "peria/errors.hpp"
#include "peria/graph.hpp"
#include "peria/presentation.hpp"
#include "peria/rewrite.hpp"
#include "peria/word.hpp"

namespace peria {

// Ball of radius R around the identity in the Cayley graph of the group,
// generators = all non-trivial vertex-group elements.  The ball is the
// induced subgraph on the elements of length <= R.
//
// Exactness policy.  When the breadth-first build exhausts the whole group
// the ball *is* the Cayley graph and every query is exact.  Otherwise a
// pair query (x,y) is answered only when
//     d(1,x) + d(1,y) + d_ball(x,y) <= 2R,
// which forces every global geodesic between x and y to stay inside the
// ball (any vertex p on one satisfies 2 d(1,p) <= d(1,x)+d(1,y)+d(x,y)),
// so the in-ball answer equals the global one.  Queries outside that
// guarantee throw TrustViolation instead of returning a guess.
class CayleyBall {
public:
    struct Clique {
        int gamma_vertex = -1;      // which vertex group the edges multiply in
        std::vector<int> verts;     // sorted ball vertex ids
        bool full = false;          // true iff this is an entire coset g<G_u>
    };

    CayleyBall(const PeriagroupSpec* spec, int radius,
               size_t word_cap = Rewriter::kDefaultCap)
        : spec_(spec), rew_(spec, word_cap), radius_(radius) {
        if (radius < 1) throw ValidationError("ball radius must be >= 1");
        build();
    }

    const PeriagroupSpec& spec() const { return *spec_; }
    const Rewriter& rewriter() const { return rew_; }
    int radius() const { return radius_; }
    bool complete() const { return complete_; }
    int max_label() const { return spec_->max_label(); }

    // Conservative isometric-embedding radius: within this distance of the
    // identity even worst-case cycle constructions stay inside the ball.
    // Goes negative at small radii; completeness overrides it, and pair
    // queries use the sharper per-pair guarantee above instead.
    int trust_radius() const {
        return complete_ ? radius_ : radius_ - 2 * max_label();
    }

    int vertex_count() const { return static_cast<int>(nf_.size()); }
    const Word& word_of(int id) const { return nf_[id]; }
    int dist0(int id) const { return dist_[id]; }

    std::optional<int> find(const Word& w) const {
        auto it = id_.find(word_key(rew_.normalize(w)));
        if (it == id_.end()) return std::nullopt;
        return it->second;
    }

    int require(const Word& w) const {
        auto v = find(w);
        if (!v) throw TrustViolation("element outside ball: " + format_word(*spec_, w));
        return *v;
    }

    const SimpleGraph& graph() const { return graph_; }

    // generator traversed from x to y (y = x * letter)
    Letter edge_letter(int x, int y) const {
        auto it = edge_label_.find(dir_key(x, y));
        if (it == edge_label_.end()) throw InvariantViolation("not an edge");
        return it->second;
    }

    // --- metric queries -------------------------------------------------

    const std::vector<int>& dist_from(int x) const {
        auto it = bfs_cache_.find(x);
        if (it == bfs_cache_.end())
            it = bfs_cache_.emplace(x, graph_.bfs(x)).first;
        return it->second;
    }

    // true when in-ball answers about the pair are guaranteed global
    bool pair_exact(int x, int y) const {
        if (complete_) return true;
        int d = dist_from(x)[y];
        return d >= 0 && dist_[x] + dist_[y] + d <= 2 * radius_;
    }

    int distance(int x, int y) const {
        check_pair(x, y);
        return dist_from(x)[y];
    }

    // every vertex lying on some geodesic between x and y
    std::vector<int> interval(int x, int y) const {
        check_pair(x, y);
        const auto& dx = dist_from(x);
        const auto& dy = dist_from(y);
        int d = dx[y];
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (dx[v] >= 0 && dy[v] >= 0 && dx[v] + dy[v] == d) out.push_back(v);
        return out;
    }

    // --- the left action ------------------------------------------------

    std::optional<int> try_act(const Word& g, int x) const {
        return find(word_concat(g, nf_[x]));
    }

    int act(const Word& g, int x) const {
        auto v = try_act(g, x);
        if (!v)
            throw TrustViolation("action image leaves ball: " + format_word(*spec_, g) +
                                 " on " + format_word(*spec_, nf_[x]));
        return *v;
    }

    // --- cliques --------------------------------------------------------

    // maximal cliques; each spans one vertex-group coset intersected with
    // the ball (marked full when the whole coset is present)
    std::vector<Clique> cliques() const {
        std::vector<Clique> out;
        for (int gv = 0; gv < spec_->vertex_count(); ++gv) {
            DisjointSets ds(vertex_count());
            for (auto [a, b] : graph_.edges())
                if (edge_letter(a, b).vertex == gv) ds.unite(a, b);
            std::unordered_map<int, std::vector<int>> groups;
            for (int v = 0; v < vertex_count(); ++v) {
                int r = ds.find(v);
                groups[r].push_back(v);
            }
            std::vector<int> roots;
            for (auto& [r, verts] : groups)
                if (verts.size() >= 2) roots.push_back(r);
            std::sort(roots.begin(), roots.end());
            int order = spec_->group(gv).order();
            for (int r : roots) {
                Clique c;
                c.gamma_vertex = gv;
                c.verts = groups[r];
                std::sort(c.verts.begin(), c.verts.end());
                c.full = static_cast<int>(c.verts.size()) == order;
                out.push_back(std::move(c));
            }
        }
        return out;
    }

    // --- export ---------------------------------------------------------

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["radius"] = radius_;
        j["complete"] = complete_;
        j["trust_radius"] = trust_radius();
        j["max_label"] = max_label();
        j["vertex_count"] = vertex_count();
        auto verts = nlohmann::ordered_json::array();
        for (int v = 0; v < vertex_count(); ++v) {
            nlohmann::ordered_json jv;
            jv["id"] = v;
            jv["word"] = format_word(*spec_, nf_[v]);
            jv["dist"] = dist_[v];
            verts.push_back(std::move(jv));
        }
        j["vertices"] = std::move(verts);
        auto edges = nlohmann::ordered_json::array();
        for (auto [a, b] : graph_.edges()) {
            Letter l = edge_letter(a, b);
            nlohmann::ordered_json je;
            je["from"] = a;
            je["to"] = b;
            je["vertex"] = spec_->name(l.vertex);
            je["element"] = l.elem;
            edges.push_back(std::move(je));
        }
        j["edges"] = std::move(edges);
        return j;
    }

    std::string to_dot() const {
        static const char* palette[] = {"black",  "red",    "blue",  "darkgreen",
                                        "orange", "purple", "brown", "cadetblue"};
        std::ostringstream os;
        os << "graph ball {\n  node [shape=circle fontsize=10];\n";
        for (int v = 0; v < vertex_count(); ++v)
            os << "  v" << v << " [label=\"" << format_word(*spec_, nf_[v]) << "\"];\n";
        for (auto [a, b] : graph_.edges()) {
            Letter l = edge_letter(a, b);
            os << "  v" << a << " -- v" << b << " [color=" << palette[l.vertex % 8]
               << "];\n";
        }
        os << "}\n";
        return os.str();
    }

private:
    static int64_t dir_key(int a, int b) {
        return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
    }

    void check_pair(int x, int y) const {
        if (x < 0 || y < 0 || x >= vertex_count() || y >= vertex_count())
            throw ValidationError("vertex id out of range");
        if (!pair_exact(x, y))
            throw TrustViolation("pair query not certifiable at this radius: " +
                                 format_word(*spec_, nf_[x]) + " , " + format_word(*spec_, nf_[y]));
    }

    void build() {
        std::vector<Letter> gens;
        for (int gv = 0; gv < spec_->vertex_count(); ++gv)
            for (int e = 1; e < spec_->group(gv).order(); ++e)
                gens.push_back({gv, e});

        nf_.push_back({});
        dist_.push_back(0);
        id_.emplace(word_key(Word{}), 0);
        complete_ = true;
        for (size_t head = 0; head < nf_.size(); ++head) {
            // nf_ grows in BFS layers, so dist_[head] is final here
            if (dist_[head] >= radius_) {
                // frontier vertex: only look for unseen neighbours to decide
                // completeness, never extend
                for (const Letter& s : gens) {
                    Word w = rew_.mul(nf_[head], Word{s});
                    if (!id_.count(word_key(w))) complete_ = false;
                }
                continue;
            }
            for (const Letter& s : gens) {
                Word w = rew_.mul(nf_[head], Word{s});
                auto [it, fresh] = id_.emplace(word_key(w), static_cast<int>(nf_.size()));
                if (fresh) {
                    nf_.push_back(std::move(w));
                    dist_.push_back(dist_[head] + 1);
                }
            }
        }

        graph_ = SimpleGraph(vertex_count());
        for (int x = 0; x < vertex_count(); ++x) {
            for (const Letter& s : gens) {
                Word w = rew_.mul(nf_[x], Word{s});
                auto it = id_.find(word_key(w));
                if (it == id_.end()) continue;
                int y = it->second;
                if (y == x)
                    throw InvariantViolation("generator fixed a vertex — trivial generator?");
                graph_.add_edge(x, y);
                edge_label_.emplace(dir_key(x, y), s);
                edge_label_.emplace(dir_key(y, x),
                                    Letter{s.vertex, spec_->group(s.vertex).inv(s.elem)});
            }
        }
    }

    const PeriagroupSpec* spec_;
    Rewriter rew_;
    int radius_;
    bool complete_ = false;
    std::vector<Word> nf_;
    std::vector<int> dist_;
    std::unordered_map<std::string, int> id_;
    SimpleGraph graph_;
    std::unordered_map<int64_t, Letter> edge_label_;
    mutable std::unordered_map<int, std::vector<int>> bfs_cache_;
};

} // namespace peria
