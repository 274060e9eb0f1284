#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "peria/cayley.hpp"
#include "peria/errors.hpp"
#include "peria/graph.hpp"
#include "peria/hyperplanes.hpp"
#include "peria/mediangle.hpp"

namespace peria {

// A finite point set with a family of partitions into sectors.  Two entries
// may induce the same partition (they stay distinguishable by id); sector
// containment across distinguishable entries must follow the nesting law.
struct SpaceWithPartitions {
    int points = 0;
    std::vector<std::vector<std::vector<int>>> partitions; // [p][s] = sorted ids
    std::vector<int> source_plane;                         // wall id or -1
    std::vector<std::vector<int>> sector_index;            // [p][x] = s

    int partition_count() const { return static_cast<int>(partitions.size()); }

    bool separates(int p, int x, int y) const {
        return sector_index[p][x] != sector_index[p][y];
    }

    long separating_count(int x, int y) const {
        long n = 0;
        for (int p = 0; p < partition_count(); ++p)
            if (separates(p, x, y)) ++n;
        return n;
    }

    static bool weak_subset(const std::vector<int>& a, const std::vector<int>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    static bool strict_subset(const std::vector<int>& a, const std::vector<int>& b) {
        return a.size() < b.size() && weak_subset(a, b);
    }

    bool same_partition(int i, int j) const {
        auto a = partitions[i], b = partitions[j];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    bool nested(int i, int j) const {
        for (const auto& a : partitions[i])
            for (const auto& b : partitions[j]) {
                bool ok = true;
                for (const auto& d : partitions[j])
                    if (&d != &b && !weak_subset(d, a)) { ok = false; break; }
                for (const auto& d : partitions[i])
                    if (ok && &d != &a && !weak_subset(d, b)) ok = false;
                if (ok) return true;
            }
        return false;
    }

    bool transverse(int i, int j) const {
        for (const auto& a : partitions[i])
            for (const auto& b : partitions[j])
                if (weak_subset(a, b) || weak_subset(b, a)) return false;
        return true;
    }

    // no sector of any partition is wedged strictly between the two
    bool tangent(int i, int j) const {
        for (const auto& a : partitions[i])
            for (const auto& b : partitions[j])
                for (const auto& mid : partitions)
                    for (const auto& r : mid) {
                        if (strict_subset(a, r) && strict_subset(r, b)) return false;
                        if (strict_subset(b, r) && strict_subset(r, a)) return false;
                    }
        return true;
    }

    // rebuild the index and enforce the space-with-partitions axioms
    void finalize() {
        sector_index.assign(partition_count(), std::vector<int>(points, -1));
        for (int p = 0; p < partition_count(); ++p) {
            if (partitions[p].size() < 2)
                throw InvariantViolation("partition with fewer than two sectors");
            for (int s = 0; s < static_cast<int>(partitions[p].size()); ++s) {
                if (partitions[p][s].empty())
                    throw InvariantViolation("empty sector");
                for (int x : partitions[p][s]) {
                    if (x < 0 || x >= points || sector_index[p][x] != -1)
                        throw InvariantViolation("sectors do not partition the points");
                    sector_index[p][x] = s;
                }
            }
            for (int x = 0; x < points; ++x)
                if (sector_index[p][x] == -1)
                    throw InvariantViolation("sectors do not cover the points");
        }
        for (int i = 0; i < partition_count(); ++i)
            for (int j = 0; j < partition_count(); ++j) {
                if (i == j || same_partition(i, j)) continue;
                bool contained = false;
                for (const auto& a : partitions[i])
                    for (const auto& b : partitions[j])
                        if (weak_subset(a, b)) contained = true;
                if (contained && !nested(i, j))
                    throw InvariantViolation("containment without nesting");
            }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["points"] = points;
        j["partition_count"] = partition_count();
        auto arr = nlohmann::ordered_json::array();
        for (int p = 0; p < partition_count(); ++p) {
            nlohmann::ordered_json e;
            e["id"] = p;
            e["source_plane"] = source_plane[p];
            e["sectors"] = partitions[p];
            arr.push_back(std::move(e));
        }
        j["partitions"] = std::move(arr);
        return j;
    }
};

// one partition per certified wall: its sectors, as sets of ball vertices
inline SpaceWithPartitions partitions_from_hyperplanes(const HyperplaneSet& hs) {
    const CayleyBall& ball = hs.ball();
    SpaceWithPartitions swp;
    swp.points = ball.vertex_count();
    for (const auto& p : hs.planes()) {
        if (!p.certified) continue;
        std::vector<std::vector<int>> sectors(p.sector_count);
        for (int v = 0; v < ball.vertex_count(); ++v)
            sectors[p.sector_of[v]].push_back(v);
        swp.partitions.push_back(std::move(sectors));
        swp.source_plane.push_back(p.id);
    }
    swp.finalize();
    return swp;
}

// The quasi-median graph grown from all principal orientations by
// single-partition flips that keep every pair of chosen sectors meeting.
struct QMGraph {
    SpaceWithPartitions swp;
    std::vector<std::vector<int>> states; // orientation = sector per partition
    SimpleGraph graph;
    std::vector<int> edge_partition; // parallel to graph.edges()
    std::vector<int> principal;      // point -> state id

    int state_count() const { return static_cast<int>(states.size()); }

    int hamming(int i, int j) const {
        int n = 0;
        for (int p = 0; p < swp.partition_count(); ++p)
            if (states[i][p] != states[j][p]) ++n;
        return n;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["partition_count"] = swp.partition_count();
        j["state_count"] = state_count();
        j["edge_count"] = graph.edge_count();
        j["states"] = states;
        j["principal"] = principal;
        auto edges = nlohmann::ordered_json::array();
        for (int e = 0; e < graph.edge_count(); ++e) {
            nlohmann::ordered_json r;
            r["a"] = graph.edges()[e].first;
            r["b"] = graph.edges()[e].second;
            r["partition"] = edge_partition[e];
            edges.push_back(std::move(r));
        }
        j["edges"] = std::move(edges);
        j["space"] = swp.to_json();
        return j;
    }

    std::string to_dot() const {
        static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                        "#66a61e", "#e6ab02", "#a6761d", "#666666",
                                        "#1f78b4", "#b2df8a", "#fb9a99", "#cab2d6"};
        std::ostringstream os;
        os << "graph qm {\n  node [shape=circle, fontsize=10];\n";
        std::vector<char> is_principal(state_count(), 0);
        for (int s : principal) is_principal[s] = 1;
        for (int v = 0; v < state_count(); ++v) {
            os << "  s" << v;
            if (is_principal[v]) os << " [peripheries=2]";
            os << ";\n";
        }
        for (int e = 0; e < graph.edge_count(); ++e)
            os << "  s" << graph.edges()[e].first << " -- s" << graph.edges()[e].second
               << " [color=\"" << palette[edge_partition[e] % 12] << "\"];\n";
        os << "}\n";
        return os.str();
    }
};

inline QMGraph quasi_cubulate(const SpaceWithPartitions& swp, size_t cap = 1000000) {
    const int nP = swp.partition_count();
    // global sector ids and their pairwise meeting matrix
    std::vector<int> offset(nP + 1, 0);
    for (int p = 0; p < nP; ++p)
        offset[p + 1] = offset[p] + static_cast<int>(swp.partitions[p].size());
    const int total = offset[nP];
    std::vector<std::vector<char>> mask(total, std::vector<char>(swp.points, 0));
    for (int p = 0; p < nP; ++p)
        for (size_t s = 0; s < swp.partitions[p].size(); ++s)
            for (int x : swp.partitions[p][s])
                mask[offset[p] + static_cast<int>(s)][x] = 1;
    std::vector<std::vector<char>> meets(total, std::vector<char>(total, 0));
    for (int a = 0; a < total; ++a)
        for (int b = a; b < total; ++b) {
            char m = 0;
            for (int x = 0; x < swp.points; ++x)
                if (mask[a][x] && mask[b][x]) { m = 1; break; }
            meets[a][b] = meets[b][a] = m;
        }

    QMGraph qm;
    qm.swp = swp;
    std::map<std::vector<int>, int> index;
    std::queue<int> todo;
    auto intern = [&](const std::vector<int>& st) {
        auto it = index.find(st);
        if (it != index.end()) return it->second;
        if (qm.states.size() >= cap)
            throw CapExceeded("orientation count exceeds cap");
        int id = static_cast<int>(qm.states.size());
        index.emplace(st, id);
        qm.states.push_back(st);
        todo.push(id);
        return id;
    };

    qm.principal.resize(swp.points);
    for (int x = 0; x < swp.points; ++x) {
        std::vector<int> st(nP);
        for (int p = 0; p < nP; ++p) st[p] = swp.sector_index[p][x];
        for (int p = 0; p < nP; ++p)
            for (int q = p + 1; q < nP; ++q)
                if (!meets[offset[p] + st[p]][offset[q] + st[q]])
                    throw InvariantViolation("principal orientation is inconsistent");
        qm.principal[x] = intern(st);
    }
    if (swp.points == 0) intern(std::vector<int>(nP, 0));

    std::vector<std::pair<int, int>> edge_list;
    std::vector<int> edge_label;
    std::set<std::pair<int, int>> seen;
    while (!todo.empty()) {
        int id = todo.front();
        todo.pop();
        std::vector<int> st = qm.states[id];
        for (int p = 0; p < nP; ++p) {
            int cur = st[p];
            for (int s = 0; s < static_cast<int>(swp.partitions[p].size()); ++s) {
                if (s == cur) continue;
                bool ok = true;
                for (int q = 0; q < nP && ok; ++q)
                    if (q != p && !meets[offset[p] + s][offset[q] + st[q]]) ok = false;
                if (!ok) continue;
                st[p] = s;
                int other = intern(st);
                st[p] = cur;
                auto key = std::minmax(id, other);
                if (seen.insert({key.first, key.second}).second) {
                    edge_list.push_back({key.first, key.second});
                    edge_label.push_back(p);
                }
            }
        }
    }

    qm.graph = SimpleGraph(qm.state_count());
    for (size_t e = 0; e < edge_list.size(); ++e) {
        qm.graph.add_edge(edge_list[e].first, edge_list[e].second);
        qm.edge_partition.push_back(edge_label[e]);
    }

    auto reach = qm.graph.bfs(0);
    for (int v = 0; v < qm.state_count(); ++v)
        if (qm.state_count() > 1 && reach[v] < 0)
            throw InvariantViolation("orientation flood is disconnected");
    return qm;
}

// recover the hyperplanes of the quasi-median graph from its geometry alone:
// edges of a clique together, opposite edges of induced squares together
inline std::pair<std::vector<int>, int> qm_edge_classes(const QMGraph& qm) {
    const SimpleGraph& g = qm.graph;
    std::unordered_map<int64_t, int> eid;
    for (int e = 0; e < g.edge_count(); ++e)
        eid[SimpleGraph::key(g.edges()[e].first, g.edges()[e].second)] = e;
    DisjointSets ds(g.edge_count());
    for (const auto& t : g.triangles()) {
        int e0 = eid[SimpleGraph::key(t[0], t[1])];
        ds.unite(e0, eid[SimpleGraph::key(t[0], t[2])]);
        ds.unite(e0, eid[SimpleGraph::key(t[1], t[2])]);
    }
    for (int a = 0; a < g.n(); ++a)
        for (int c = a + 1; c < g.n(); ++c) {
            if (g.has_edge(a, c)) continue;
            std::vector<int> common;
            for (int b : g.neighbors(a))
                if (g.has_edge(b, c)) common.push_back(b);
            for (size_t i = 0; i < common.size(); ++i)
                for (size_t j = i + 1; j < common.size(); ++j) {
                    int b = common[i], d = common[j];
                    if (g.has_edge(b, d)) continue;
                    ds.unite(eid[SimpleGraph::key(a, b)], eid[SimpleGraph::key(c, d)]);
                    ds.unite(eid[SimpleGraph::key(b, c)], eid[SimpleGraph::key(a, d)]);
                }
        }
    std::vector<int> cls(g.edge_count(), -1);
    int n = 0;
    for (int e = 0; e < g.edge_count(); ++e)
        if (ds.find(e) == e) cls[e] = n++;
    for (int e = 0; e < g.edge_count(); ++e) cls[e] = cls[ds.find(e)];
    return {cls, n};
}

namespace detail {

// the quasi-median graph as a space with partitions over its own vertices
inline SpaceWithPartitions qm_as_space(const QMGraph& qm, const std::vector<int>& cls,
                                       int n_cls) {
    const SimpleGraph& g = qm.graph;
    SpaceWithPartitions out;
    out.points = g.n();
    for (int c = 0; c < n_cls; ++c) {
        std::set<int64_t> blocked;
        for (int e = 0; e < g.edge_count(); ++e)
            if (cls[e] == c)
                blocked.insert(SimpleGraph::key(g.edges()[e].first, g.edges()[e].second));
        std::vector<int> comp(g.n(), -1);
        int nc = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (comp[v] >= 0) continue;
            std::queue<int> bq;
            bq.push(v);
            comp[v] = nc;
            while (!bq.empty()) {
                int w = bq.front();
                bq.pop();
                for (int u : g.neighbors(w)) {
                    if (comp[u] >= 0 || blocked.count(SimpleGraph::key(w, u))) continue;
                    comp[u] = nc;
                    bq.push(u);
                }
            }
            ++nc;
        }
        std::vector<std::vector<int>> sectors(nc);
        for (int v = 0; v < g.n(); ++v) sectors[comp[v]].push_back(v);
        out.partitions.push_back(std::move(sectors));
        out.source_plane.push_back(-1);
    }
    out.finalize();
    return out;
}

} // namespace detail

// quasi-median axioms, the distance formula, and the partition-to-hyperplane
// dictionary with its relation preservation
inline AxiomReport verify_popset(const QMGraph& qm) {
    AxiomReport report = check_quasi_median(qm.graph);

    AxiomResult dist{"distance-formula"};
    for (int i = 0; i < qm.state_count(); ++i) {
        auto d = qm.graph.bfs(i);
        for (int j = i + 1; j < qm.state_count(); ++j) {
            ++dist.checked;
            if (d[j] != qm.hamming(i, j) && dist.witness.empty())
                dist.witness = {i, j};
        }
    }
    report.axioms.push_back(dist);

    auto [cls, n_cls] = qm_edge_classes(qm);
    AxiomResult bij{"hyperplane-bijection"};
    std::vector<int> class_of_partition(qm.swp.partition_count(), -1);
    bij.checked = qm.graph.edge_count();
    for (int e = 0; e < qm.graph.edge_count(); ++e) {
        int p = qm.edge_partition[e];
        int& slot = class_of_partition[p];
        if (slot == -1) slot = cls[e];
        if (slot != cls[e] && bij.witness.empty())
            bij.witness = {qm.graph.edges()[e].first, qm.graph.edges()[e].second};
    }
    if (bij.witness.empty()) {
        std::set<int> used;
        for (int p = 0; p < qm.swp.partition_count(); ++p) {
            if (class_of_partition[p] == -1 || !used.insert(class_of_partition[p]).second)
                bij.witness = {p};
        }
        if (n_cls != qm.swp.partition_count() && bij.witness.empty())
            bij.witness = {n_cls, qm.swp.partition_count()};
    }
    report.axioms.push_back(bij);

    AxiomResult rel{"relation-preservation"};
    if (bij.witness.empty() && qm.swp.partition_count() > 0) {
        auto qspace = detail::qm_as_space(qm, cls, n_cls);
        for (int p = 0; p < qm.swp.partition_count(); ++p)
            for (int q = p + 1; q < qm.swp.partition_count(); ++q) {
                ++rel.checked;
                int cp = class_of_partition[p], cq = class_of_partition[q];
                bool tv = qm.swp.transverse(p, q) == qspace.transverse(cp, cq);
                bool tg = qm.swp.tangent(p, q) == qspace.tangent(cp, cq);
                if (!(tv && tg) && rel.witness.empty()) rel.witness = {p, q};
            }
    }
    report.axioms.push_back(rel);
    return report;
}

// the canonical embedding of the ball into its quasi-median completion:
// isometry, cliques onto cliques, and wall correspondence
inline AxiomReport verify_completion(const HyperplaneSet& hs, const QMGraph& qm) {
    const CayleyBall& ball = hs.ball();
    AxiomResult iso{"isometric-embedding"};
    AxiomResult cliq{"cliques-to-cliques"};
    AxiomResult corr{"clique-correspondence"};
    AxiomResult prel{"plane-correspondence"};

    auto certified_between = [&](int x, int y) {
        for (int k = 0; k < hs.plane_count(); ++k)
            if (hs.separates(k, x, y) && !hs.planes()[k].certified) return false;
        return true;
    };

    std::vector<std::vector<int>> qdist;
    for (int i = 0; i < qm.state_count(); ++i) qdist.push_back(qm.graph.bfs(i));

    for (int x = 0; x < ball.vertex_count(); ++x)
        for (int y = x + 1; y < ball.vertex_count(); ++y) {
            if (!ball.pair_exact(x, y) || !certified_between(x, y)) {
                ++iso.skipped;
                continue;
            }
            ++iso.checked;
            if (qdist[qm.principal[x]][qm.principal[y]] != ball.distance(x, y) &&
                iso.witness.empty())
                iso.witness = {x, y};
        }

    auto cliques = ball.cliques();
    std::vector<int> clique_plane(cliques.size());
    std::vector<char> clique_ok(cliques.size(), 0);
    for (size_t c = 0; c < cliques.size(); ++c) {
        const auto& verts = cliques[c].verts;
        int plane = hs.plane_of_edge(verts[0], verts[1]);
        clique_plane[c] = plane;
        if (!hs.planes()[plane].certified) {
            ++cliq.skipped;
            continue;
        }
        clique_ok[c] = 1;
        ++cliq.checked;
        std::set<int> image;
        for (int v : verts) image.insert(qm.principal[v]);
        bool good = image.size() == verts.size();
        for (int a : image)
            for (int b : image)
                if (a < b && !qm.graph.has_edge(a, b)) good = false;
        for (int w = 0; w < qm.state_count() && good; ++w) {
            if (image.count(w)) continue;
            bool adj_all = true;
            for (int a : image)
                if (!qm.graph.has_edge(w, a)) { adj_all = false; break; }
            if (adj_all) good = false; // image was not maximal
        }
        if (!good && cliq.witness.empty())
            cliq.witness.assign(verts.begin(), verts.end());
    }

    auto [cls, n_cls] = qm_edge_classes(qm);
    std::unordered_map<int64_t, int> eid;
    for (int e = 0; e < qm.graph.edge_count(); ++e)
        eid[SimpleGraph::key(qm.graph.edges()[e].first, qm.graph.edges()[e].second)] = e;
    auto image_class = [&](size_t c) {
        int a = qm.principal[cliques[c].verts[0]];
        int b = qm.principal[cliques[c].verts[1]];
        auto it = eid.find(SimpleGraph::key(a, b));
        return it == eid.end() ? -1 : cls[it->second];
    };
    for (size_t a = 0; a < cliques.size(); ++a)
        for (size_t b = a + 1; b < cliques.size(); ++b) {
            if (!clique_ok[a] || !clique_ok[b]) {
                ++corr.skipped;
                continue;
            }
            ++corr.checked;
            bool same_wall = clique_plane[a] == clique_plane[b];
            int ca = image_class(a), cb = image_class(b);
            bool same_qm = ca >= 0 && ca == cb;
            if (same_wall != same_qm && corr.witness.empty())
                corr.witness = {cliques[a].verts[0], cliques[b].verts[0]};
        }

    if (!ball.complete()) {
        prel.skipped = hs.plane_count() * (hs.plane_count() - 1) / 2;
    } else if (qm.swp.partition_count() > 0) {
        auto qspace = detail::qm_as_space(qm, cls, n_cls);
        std::vector<int> partition_of_plane(hs.plane_count(), -1);
        for (int p = 0; p < qm.swp.partition_count(); ++p)
            partition_of_plane[qm.swp.source_plane[p]] = p;
        std::vector<int> class_of_partition(qm.swp.partition_count(), -1);
        for (int e = 0; e < qm.graph.edge_count(); ++e)
            class_of_partition[qm.edge_partition[e]] = cls[e];
        for (int i = 0; i < hs.plane_count(); ++i)
            for (int j = i + 1; j < hs.plane_count(); ++j) {
                ++prel.checked;
                auto verdict = hs.relation(i, j);
                int ci = class_of_partition[partition_of_plane[i]];
                int cj = class_of_partition[partition_of_plane[j]];
                bool tv = qspace.transverse(ci, cj);
                bool tg = qspace.tangent(ci, cj);
                bool ok = tv == (verdict.rel == Relation::Transverse) &&
                          tg == (verdict.rel != Relation::Separated);
                if (!ok && prel.witness.empty()) prel.witness = {i, j};
            }
    }

    return AxiomReport{{iso, cliq, corr, prel}};
}

} // namespace peria
