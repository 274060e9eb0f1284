#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "peria/cayley.hpp"
#include "peria/errors.hpp"
#include "peria/graph.hpp"
#include "peria/presentation.hpp"

namespace peria {

// Induced cycle of even length, convex within the ball (every in-ball
// geodesic between two of its vertices stays on it).  `certified` means
// every vertex pair passed the pair-exactness guarantee, so the convexity
// holds in the full Cayley graph, not just the ball.
struct ConvexEvenCycle {
    std::vector<int> verts; // cyclic order; canonical rotation/direction
    bool certified = false;

    int length() const { return static_cast<int>(verts.size()); }
};

enum class Relation { Equal, Transverse, Tangent, Separated, Undetermined };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::Transverse: return "transverse";
        case Relation::Tangent: return "tangent";
        case Relation::Separated: return "separated";
        default: return "undetermined";
    }
}

// verdict + whether it relies on possibly-truncated data
struct RelationVerdict {
    Relation rel = Relation::Undetermined;
    bool ball_relative = true;
};

// Exact angle as a reduced multiple of pi: value = (num/den)*pi.
struct Angle {
    int num = 0, den = 1;
    friend bool operator==(const Angle&, const Angle&) = default;

    std::string str() const {
        std::ostringstream os;
        if (num != 1) os << num;
        os << "pi";
        if (den != 1) os << "/" << den;
        return os.str();
    }

    static Angle of_cycle(int gap, int cycle_len) {
        // 2*pi*(1+gap)/len as a multiple of pi
        int num = 2 * (1 + gap), den = cycle_len;
        int g = std::gcd(num, den);
        return Angle{num / g, den / g};
    }
};

struct Hyperplane {
    int id = -1;
    std::vector<int> edge_ids;               // indices into ball.graph().edges()
    std::vector<int> labels;                 // sorted distinct generator vertices
    VertexType type = VertexType::GP;
    int gp_label = -1;                       // the unique label when type GP
    bool certified = false;
    std::vector<int> sector_of;              // ball vertex -> sector index
    int sector_count = 0;
    std::vector<int> vertices;               // endpoints of class edges, sorted
    std::vector<int> carrier;                // sorted vertex ids
    std::vector<int> cycle_ids;              // convex even cycles meeting the class
};

// Hyperplanes of a ball: equivalence classes of edges generated by
// membership in a common 3-cycle and by being opposite in a convex even
// cycle.  A class is certified when (a) the closure only used certified
// cycles and (b) every class edge keeps a margin of max incident label
// below the ball radius — then no global closure step can escape the ball,
// so the class equals an entire hyperplane of the Cayley graph.
class HyperplaneSet {
public:
    explicit HyperplaneSet(const CayleyBall* ball) : ball_(ball) { build(); }

    const CayleyBall& ball() const { return *ball_; }
    const std::vector<ConvexEvenCycle>& cycles() const { return cycles_; }
    const std::vector<Hyperplane>& planes() const { return planes_; }
    int plane_count() const { return static_cast<int>(planes_.size()); }

    int plane_of_edge(int a, int b) const {
        auto it = edge_index_.find(SimpleGraph::key(a, b));
        if (it == edge_index_.end()) throw InvariantViolation("not a ball edge");
        return class_of_edge_[it->second];
    }

    bool separates(int plane, int x, int y) const {
        const auto& p = planes_[plane];
        return p.sector_of[x] != p.sector_of[y];
    }

    int count_separating(int x, int y) const {
        int n = 0;
        for (const auto& p : planes_)
            if (p.sector_of[x] != p.sector_of[y]) ++n;
        return n;
    }

    // --- pairwise relations --------------------------------------------

    RelationVerdict relation(int i, int j) const {
        if (i == j) return {Relation::Equal, false};
        const bool complete = ball_->complete();
        bool shared_cert = false, shared_any = false;
        for (int c : shared_cycles(i, j)) {
            shared_any = true;
            if (cycles_[c].certified) shared_cert = true;
        }
        if (shared_cert) {
            bool det = complete || (planes_[i].certified && planes_[j].certified);
            return {Relation::Transverse, !det};
        }
        auto seps = separators(i, j);
        if (!seps.empty()) {
            bool det = complete;
            for (int k : seps)
                if (!det) det = separation_determined(i, j, k);
            return {Relation::Separated, !det};
        }
        if (shared_any) return {Relation::Undetermined, true}; // phantom-cycle witness only
        if (complete) return {Relation::Tangent, false};
        // sharing a vertex rules out any separating hyperplane globally
        bool touch = intersects(planes_[i].vertices, planes_[j].vertices);
        bool det = touch && planes_[i].certified && planes_[j].certified;
        return {Relation::Tangent, !det};
    }

    // planes sharing cycle c as distinct opposite-edge pairs
    std::vector<int> shared_cycles(int i, int j) const {
        std::vector<int> out;
        for (int c : planes_[i].cycle_ids) {
            const auto& cl = cycle_classes_[c];
            if (std::count(cl.begin(), cl.end(), i) && std::count(cl.begin(), cl.end(), j))
                out.push_back(c);
        }
        return out;
    }

    // Angle between transverse planes, evaluated at certified shared cycles
    // only; identical across all of them or we abort loudly.
    Angle angle(int i, int j) const {
        std::optional<Angle> result;
        for (int c : shared_cycles(i, j)) {
            if (!cycles_[c].certified) continue;
            Angle a = angle_at(i, j, c);
            if (result && !(*result == a))
                throw InvariantViolation("angle differs between shared cycles " +
                                         result->str() + " vs " + a.str());
            result = a;
        }
        if (!result)
            throw TrustViolation("no certified shared cycle for angle computation");
        return *result;
    }

    // --- rotative stabiliser -------------------------------------------

    // Ball elements stabilising every maximal clique met by the class,
    // shortlex-sorted.  Complete for certified planes on complete balls;
    // elsewhere it is the ball-visible part.
    std::vector<Word> rotative_stabiliser(int plane) const {
        const auto& cliques = plane_cliques(plane);
        if (cliques.empty()) return {Word{}};
        const Rewriter& rw = ball_->rewriter();
        // candidates: y * x^-1 over the first clique
        const auto& k0 = cliques.front();
        std::vector<Word> out;
        std::set<std::string> seen;
        for (int x : k0)
            for (int y : k0) {
                Word g = rw.mul(ball_->word_of(y),
                                word_inverse(ball_->spec(), ball_->word_of(x)));
                if (!seen.insert(word_key(g)).second) continue;
                bool ok = true;
                for (const auto& k : cliques) {
                    std::set<int> img;
                    for (int v : k) {
                        auto w = ball_->try_act(g, v);
                        if (!w) { ok = false; break; }
                        img.insert(*w);
                    }
                    if (!ok || img != std::set<int>(k.begin(), k.end())) { ok = false; }
                    if (!ok) break;
                }
                if (ok) out.push_back(std::move(g));
            }
        std::sort(out.begin(), out.end(), shortlex_less);
        return out;
    }

    // image of each sector under g, as a permutation of sector indices;
    // nullopt when some image leaves the ball or the map is inconsistent
    std::optional<std::vector<int>> sector_permutation(int plane, const Word& g) const {
        const auto& p = planes_[plane];
        std::vector<int> perm(p.sector_count, -1);
        for (int v = 0; v < ball_->vertex_count(); ++v) {
            auto w = ball_->try_act(g, v);
            if (!w) continue;
            int s = p.sector_of[v], t = p.sector_of[*w];
            if (perm[s] < 0) perm[s] = t;
            else if (perm[s] != t) return std::nullopt; // sector image split
        }
        for (int s = 0; s < p.sector_count; ++s)
            if (perm[s] < 0) return std::nullopt;
        std::vector<int> hit(p.sector_count, 0);
        for (int t : perm)
            if (++hit[t] > 1) return std::nullopt;
        return perm;
    }

    // maximal cliques met by the class (sorted vertex lists)
    const std::vector<std::vector<int>>& plane_cliques(int plane) const {
        return plane_cliques_[plane];
    }

    // --- export ---------------------------------------------------------

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["cycle_count"] = cycles_.size();
        auto jc = nlohmann::ordered_json::array();
        for (const auto& c : cycles_) {
            nlohmann::ordered_json e;
            e["vertices"] = c.verts;
            e["certified"] = c.certified;
            jc.push_back(std::move(e));
        }
        j["cycles"] = std::move(jc);
        auto jp = nlohmann::ordered_json::array();
        for (const auto& p : planes_) {
            nlohmann::ordered_json e;
            e["id"] = p.id;
            e["type"] = p.type == VertexType::GP ? "GP" : "C";
            if (p.gp_label >= 0) e["label"] = ball_->spec().name(p.gp_label);
            e["certified"] = p.certified;
            e["edge_count"] = p.edge_ids.size();
            e["sector_count"] = p.sector_count;
            e["carrier_size"] = p.carrier.size();
            jp.push_back(std::move(e));
        }
        j["planes"] = std::move(jp);
        return j;
    }

    std::string to_dot() const {
        static const char* palette[] = {"red",    "blue",   "darkgreen", "orange",
                                        "purple", "brown",  "cadetblue", "magenta",
                                        "gray40", "cyan4",  "gold3",     "black"};
        std::ostringstream os;
        os << "graph hyperplanes {\n  node [shape=point];\n";
        const auto& edges = ball_->graph().edges();
        for (size_t e = 0; e < edges.size(); ++e)
            os << "  v" << edges[e].first << " -- v" << edges[e].second
               << " [color=" << palette[class_of_edge_[e] % 12] << "];\n";
        os << "}\n";
        return os.str();
    }

    // angle read off one specific shared cycle; angle() checks agreement
    Angle angle_at(int i, int j, int c) const {
        const auto& cyc = cycles_[c].verts;
        const int L = cycles_[c].length();
        // per-plane edge positions on the cycle
        auto positions = [&](int plane) {
            std::vector<int> pos;
            for (int k = 0; k < L; ++k)
                if (class_of_cycle_edge(c, k) == plane) pos.push_back(k);
            return pos;
        };
        auto pi = positions(i), pj = positions(j);
        int best = L;
        for (int a : pi)
            for (int b : pj) {
                // min distance between an endpoint of edge a and one of edge b
                for (int ea : {a, (a + 1) % L})
                    for (int eb : {b, (b + 1) % L}) {
                        int d = std::abs(ea - eb);
                        best = std::min(best, std::min(d, L - d));
                    }
            }
        (void)cyc;
        return Angle::of_cycle(best, L);
    }

private:
    int class_of_cycle_edge(int c, int k) const {
        const auto& verts = cycles_[c].verts;
        int a = verts[k], b = verts[(k + 1) % verts.size()];
        return class_of_edge_[edge_index_.at(SimpleGraph::key(a, b))];
    }

    static bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
        auto it = a.begin();
        for (int x : b) {
            it = std::lower_bound(it, a.end(), x);
            if (it == a.end()) return false;
            if (*it == x) return true;
        }
        return false;
    }

    std::vector<int> separators(int i, int j) const {
        std::vector<int> out;
        for (int k = 0; k < plane_count(); ++k) {
            if (k == i || k == j) continue;
            const auto& sec = planes_[k].sector_of;
            int si = -1, sj = -1;
            bool ok = true;
            for (int v : planes_[i].vertices) {
                if (si < 0) si = sec[v];
                else if (sec[v] != si) { ok = false; break; }
            }
            if (!ok) continue;
            for (int v : planes_[j].vertices) {
                if (sj < 0) sj = sec[v];
                else if (sec[v] != sj) { ok = false; break; }
            }
            if (ok && si != sj) out.push_back(k);
        }
        return out;
    }

    // genuine separation: all three classes are full hyperplanes and some
    // pair-exact witness pair is split by the separator
    bool separation_determined(int i, int j, int k) const {
        if (!planes_[i].certified || !planes_[j].certified || !planes_[k].certified)
            return false;
        for (int x : planes_[i].vertices)
            for (int y : planes_[j].vertices)
                if (ball_->pair_exact(x, y) && separates(k, x, y)) return true;
        return false;
    }

    void build() {
        const SimpleGraph& g = ball_->graph();
        const auto& edges = g.edges();
        for (size_t e = 0; e < edges.size(); ++e)
            edge_index_.emplace(SimpleGraph::key(edges[e].first, edges[e].second),
                                static_cast<int>(e));

        enumerate_cycles();

        const int E = static_cast<int>(edges.size());
        DisjointSets firm(E);  // triangles + certified cycles only
        DisjointSets full(E);  // plus uncertified ball-convex cycles
        for (const auto& t : g.triangles()) {
            int e1 = edge_index_.at(SimpleGraph::key(t[0], t[1]));
            int e2 = edge_index_.at(SimpleGraph::key(t[0], t[2]));
            int e3 = edge_index_.at(SimpleGraph::key(t[1], t[2]));
            firm.unite(e1, e2); firm.unite(e1, e3);
            full.unite(e1, e2); full.unite(e1, e3);
        }
        for (const auto& c : cycles_) {
            const int L = c.length(), n = L / 2;
            for (int k = 0; k < n; ++k) {
                int e1 = edge_index_.at(
                    SimpleGraph::key(c.verts[k], c.verts[(k + 1) % L]));
                int e2 = edge_index_.at(
                    SimpleGraph::key(c.verts[k + n], c.verts[(k + n + 1) % L]));
                if (c.certified) firm.unite(e1, e2);
                full.unite(e1, e2);
            }
        }

        // dense class ids ordered by smallest edge index
        std::map<int, int> root_to_id;
        class_of_edge_.assign(E, -1);
        for (int e = 0; e < E; ++e) {
            int r = full.find(e);
            auto [it, fresh] = root_to_id.emplace(r, static_cast<int>(root_to_id.size()));
            class_of_edge_[e] = it->second;
        }
        planes_.assign(root_to_id.size(), {});
        for (int e = 0; e < E; ++e)
            planes_[class_of_edge_[e]].edge_ids.push_back(e);

        // does the firm closure already give the same class?
        std::vector<char> firm_coherent(planes_.size(), 1);
        for (auto& p : planes_) {
            int r0 = firm.find(p.edge_ids[0]);
            for (int e : p.edge_ids)
                if (firm.find(e) != r0) { firm_coherent[&p - planes_.data()] = 0; break; }
        }

        const auto& spec = ball_->spec();
        for (size_t pi = 0; pi < planes_.size(); ++pi) {
            Hyperplane& p = planes_[pi];
            p.id = static_cast<int>(pi);

            std::set<int> labels, verts;
            int maxdist = 0;
            for (int e : p.edge_ids) {
                auto [a, b] = edges[e];
                labels.insert(ball_->edge_letter(a, b).vertex);
                verts.insert(a); verts.insert(b);
                maxdist = std::max({maxdist, ball_->dist0(a), ball_->dist0(b)});
            }
            p.labels.assign(labels.begin(), labels.end());
            p.vertices.assign(verts.begin(), verts.end());

            p.type = VertexType::GP;
            for (int l : p.labels)
                if (spec.vertex_type(l) == VertexType::C) p.type = VertexType::C;
            if (p.type == VertexType::GP) {
                if (p.labels.size() != 1)
                    throw InvariantViolation("mixed labels in a square-closed class");
                p.gp_label = p.labels[0];
            }

            int margin = 1;
            for (int l : p.labels)
                for (int nb : spec.neighbours(l))
                    margin = std::max(margin, spec.label(l, nb));
            p.certified = ball_->complete() ||
                          (firm_coherent[pi] && maxdist + margin <= ball_->radius());

            // sectors
            std::unordered_set<int64_t> blocked;
            for (int e : p.edge_ids)
                blocked.insert(SimpleGraph::key(edges[e].first, edges[e].second));
            p.sector_of = g.components_avoiding(blocked);
            p.sector_count = *std::max_element(p.sector_of.begin(), p.sector_of.end()) + 1;
        }

        // cycle membership and carriers
        cycle_classes_.assign(cycles_.size(), {});
        for (size_t c = 0; c < cycles_.size(); ++c) {
            const auto& verts = cycles_[c].verts;
            std::set<int> cls;
            for (size_t k = 0; k < verts.size(); ++k) {
                int e = edge_index_.at(
                    SimpleGraph::key(verts[k], verts[(k + 1) % verts.size()]));
                cls.insert(class_of_edge_[e]);
            }
            cycle_classes_[c].assign(cls.begin(), cls.end());
            for (int p : cycle_classes_[c]) planes_[p].cycle_ids.push_back(static_cast<int>(c));
        }
        for (auto& p : planes_) {
            std::set<int> carrier(p.vertices.begin(), p.vertices.end());
            for (const auto& t : g.triangles()) {
                bool meets = false;
                for (auto [a, b] : {std::pair{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}})
                    if (class_of_edge_[edge_index_.at(SimpleGraph::key(a, b))] == p.id)
                        meets = true;
                if (meets) carrier.insert(t.begin(), t.end());
            }
            for (int c : p.cycle_ids)
                carrier.insert(cycles_[c].verts.begin(), cycles_[c].verts.end());
            p.carrier.assign(carrier.begin(), carrier.end());
        }

        // maximal cliques met by each class
        plane_cliques_.assign(planes_.size(), {});
        for (const auto& cl : ball_->cliques()) {
            std::set<int> touched;
            for (size_t i = 0; i < cl.verts.size(); ++i)
                for (size_t k = i + 1; k < cl.verts.size(); ++k) {
                    auto it = edge_index_.find(SimpleGraph::key(cl.verts[i], cl.verts[k]));
                    if (it != edge_index_.end()) touched.insert(class_of_edge_[it->second]);
                }
            for (int p : touched) plane_cliques_[p].push_back(cl.verts);
        }
        for (auto& pcs : plane_cliques_) std::sort(pcs.begin(), pcs.end());
    }

    void enumerate_cycles() {
        const SimpleGraph& g = ball_->graph();
        const int maxlen = 2 * ball_->max_label();
        if (maxlen < 4) return;
        std::vector<int> path;
        std::vector<char> used(g.n(), 0);
        for (int base = 0; base < g.n(); ++base) {
            path = {base};
            used[base] = 1;
            dfs_cycles(g, base, maxlen, path, used);
            used[base] = 0;
        }
    }

    // grow simple paths with all interior vertices > base; close when the
    // head is adjacent to base at even length; canonical direction via
    // second < last
    void dfs_cycles(const SimpleGraph& g, int base, int maxlen,
                    std::vector<int>& path, std::vector<char>& used) {
        int head = path.back();
        if (path.size() >= 4 && path.size() % 2 == 0 && g.has_edge(head, base) &&
            path[1] < head)
            consider_cycle(path);
        if (static_cast<int>(path.size()) == maxlen) return;
        for (int nxt : g.neighbors(head)) {
            if (nxt <= base || used[nxt]) continue;
            used[nxt] = 1;
            path.push_back(nxt);
            dfs_cycles(g, base, maxlen, path, used);
            path.pop_back();
            used[nxt] = 0;
        }
    }

    void consider_cycle(const std::vector<int>& verts) {
        const int L = static_cast<int>(verts.size());
        // convex within the ball: distances realized along the cycle and
        // intervals contained in it
        std::vector<char> member(ball_->vertex_count(), 0);
        for (int v : verts) member[v] = 1;
        bool certified = true;
        for (int i = 0; i < L; ++i)
            for (int j = i + 1; j < L; ++j) {
                int x = verts[i], y = verts[j];
                int dc = std::min(j - i, L - (j - i));
                const auto& dx = ball_->dist_from(x);
                if (dx[y] != dc) return; // chord or shortcut
                const auto& dy = ball_->dist_from(y);
                for (int v = 0; v < ball_->vertex_count(); ++v)
                    if (dx[v] >= 0 && dy[v] >= 0 && dx[v] + dy[v] == dc && !member[v])
                        return; // geodesic strays off the cycle
                if (!ball_->pair_exact(x, y)) certified = false;
            }
        cycles_.push_back({verts, certified});
    }

    const CayleyBall* ball_;
    std::vector<ConvexEvenCycle> cycles_;
    std::vector<Hyperplane> planes_;
    std::vector<int> class_of_edge_;
    std::unordered_map<int64_t, int> edge_index_;
    std::vector<std::vector<int>> cycle_classes_;     // classes meeting each cycle
    std::vector<std::vector<std::vector<int>>> plane_cliques_;
};

} // namespace peria
