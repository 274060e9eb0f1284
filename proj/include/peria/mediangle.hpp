#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "peria/cayley.hpp"
#include "peria/errors.hpp"
#include "peria/graph.hpp"
#include "peria/hyperplanes.hpp"

namespace peria {

enum class AxiomStatus { Pass, Fail, SkippedBoundary };

struct AxiomResult {
    std::string name;
    long checked = 0;
    long skipped = 0;
    std::vector<int> witness; // nonempty iff the axiom failed

    AxiomStatus status() const {
        if (!witness.empty()) return AxiomStatus::Fail;
        if (checked == 0 && skipped > 0) return AxiomStatus::SkippedBoundary;
        return AxiomStatus::Pass;
    }
};

struct AxiomReport {
    std::vector<AxiomResult> axioms;

    bool ok() const {
        for (const auto& a : axioms)
            if (!a.witness.empty()) return false;
        return true;
    }

    long total_skipped() const {
        long n = 0;
        for (const auto& a : axioms) n += a.skipped;
        return n;
    }

    const AxiomResult& axiom(const std::string& name) const {
        for (const auto& a : axioms)
            if (a.name == name) return a;
        throw ValidationError("no axiom named " + name);
    }

    nlohmann::ordered_json to_json() const {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& a : axioms) {
            nlohmann::ordered_json e;
            e["name"] = a.name;
            switch (a.status()) {
                case AxiomStatus::Pass: e["status"] = "pass"; break;
                case AxiomStatus::Fail: e["status"] = "fail"; break;
                default: e["status"] = "skipped-boundary"; break;
            }
            e["checked"] = a.checked;
            e["skipped"] = a.skipped;
            if (!a.witness.empty()) e["witness"] = a.witness;
            arr.push_back(std::move(e));
        }
        nlohmann::ordered_json j;
        j["ok"] = ok();
        j["axioms"] = std::move(arr);
        return j;
    }

    std::string summary() const {
        std::ostringstream os;
        for (const auto& a : axioms) {
            os << a.name << ": ";
            switch (a.status()) {
                case AxiomStatus::Pass: os << "pass"; break;
                case AxiomStatus::Fail: os << "FAIL"; break;
                default: os << "skipped-boundary"; break;
            }
            os << " (" << a.checked << " checked, " << a.skipped << " skipped)";
            if (!a.witness.empty()) {
                os << " witness:";
                for (int v : a.witness) os << ' ' << v;
            }
            os << '\n';
        }
        return os.str();
    }
};

namespace detail {

struct CycleDfs {
    const SimpleGraph& g;
    const std::vector<std::vector<int>>& dist;
    int max_len;
    std::vector<std::vector<int>>& out;
    std::vector<int> path;
    std::vector<char> used;

    void consider() {
        const int L = static_cast<int>(path.size());
        std::vector<char> member(g.n(), 0);
        for (int v : path) member[v] = 1;
        for (int i = 0; i < L; ++i)
            for (int j = i + 1; j < L; ++j) {
                int x = path[i], y = path[j];
                int dc = std::min(j - i, L - (j - i));
                if (dist[x][y] != dc) return;
                for (int v = 0; v < g.n(); ++v)
                    if (dist[x][v] >= 0 && dist[y][v] >= 0 &&
                        dist[x][v] + dist[y][v] == dc && !member[v])
                        return;
            }
        out.push_back(path);
    }

    void grow(int base) {
        int head = path.back();
        if (path.size() >= 4 && path.size() % 2 == 0 && g.has_edge(head, base) &&
            path[1] < head)
            consider();
        if (static_cast<int>(path.size()) == max_len) return;
        for (int nxt : g.neighbors(head)) {
            if (nxt <= base || used[nxt]) continue;
            used[nxt] = 1;
            path.push_back(nxt);
            grow(base);
            path.pop_back();
            used[nxt] = 0;
        }
    }
};

inline std::vector<std::vector<int>> all_pairs(const SimpleGraph& g) {
    std::vector<std::vector<int>> d;
    d.reserve(g.n());
    for (int v = 0; v < g.n(); ++v) d.push_back(g.bfs(v));
    return d;
}

} // namespace detail

// induced cycles of even length whose pairwise distances are realized along
// the cycle and whose intervals stay on it
inline std::vector<std::vector<int>> convex_even_cycles(const SimpleGraph& g,
                                                        int max_len) {
    std::vector<std::vector<int>> out;
    auto dist = detail::all_pairs(g);
    detail::CycleDfs dfs{g, dist, max_len, out, {}, std::vector<char>(g.n(), 0)};
    for (int base = 0; base < g.n(); ++base) {
        dfs.path = {base};
        dfs.used[base] = 1;
        dfs.grow(base);
        dfs.used[base] = 0;
    }
    return out;
}

// Four mediangle axioms over a ball.  Configurations whose distances or
// witness searches could be corrupted by truncation are tallied as skipped
// rather than judged; on a complete ball nothing is skipped and every
// verdict is exact.
inline AxiomReport check_mediangle(const HyperplaneSet& hs) {
    const CayleyBall& ball = hs.ball();
    const SimpleGraph& g = ball.graph();
    const bool complete = ball.complete();
    AxiomResult tri{"triangle-condition"};
    AxiomResult k4{"no-induced-k4minus"};
    AxiomResult cyc{"cycle-condition"};
    AxiomResult evi{"even-cycle-intersections"};

    for (auto [x, y] : g.edges())
        for (int o = 0; o < g.n(); ++o) {
            const auto& d = ball.dist_from(o);
            if (d[x] < 0 || d[x] != d[y]) continue;
            if (!complete && !(ball.pair_exact(o, x) && ball.pair_exact(o, y))) {
                ++tri.skipped;
                continue;
            }
            ++tri.checked;
            bool found = false;
            for (int z : g.neighbors(x))
                if (g.has_edge(z, y) && d[z] == d[x] - 1) { found = true; break; }
            if (!found && tri.witness.empty())
                tri.witness = {o, x, y};
        }

    k4.checked = static_cast<long>(g.edge_count());
    if (auto w = g.find_k4_minus())
        k4.witness.assign(w->begin(), w->end());

    const auto& cycles = hs.cycles();
    for (int z = 0; z < g.n(); ++z) {
        const auto& nb = g.neighbors(z);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t k = i + 1; k < nb.size(); ++k) {
                int x = nb[i], y = nb[k];
                for (int o = 0; o < g.n(); ++o) {
                    const auto& d = ball.dist_from(o);
                    if (d[x] < 0 || d[x] != d[y] || d[z] != d[x] + 1) continue;
                    bool trusted =
                        complete ||
                        (ball.pair_exact(o, x) && ball.pair_exact(o, y) &&
                         ball.pair_exact(o, z) &&
                         ball.dist0(z) + ball.max_label() <= ball.radius());
                    if (!trusted) { ++cyc.skipped; continue; }
                    int found = 0; // 1 = boundary-grade witness, 2 = certified
                    for (const auto& c : cycles) {
                        const int L = c.length();
                        auto it = std::find(c.verts.begin(), c.verts.end(), z);
                        if (it == c.verts.end()) continue;
                        int p = static_cast<int>(it - c.verts.begin());
                        int a = c.verts[(p + 1) % L], b = c.verts[(p + L - 1) % L];
                        if (!((a == x && b == y) || (a == y && b == x))) continue;
                        int w = c.verts[(p + L / 2) % L];
                        if (d[w] == d[x] - (L / 2 - 1))
                            found = std::max(found, c.certified ? 2 : 1);
                    }
                    if (found == 1) ++cyc.skipped;
                    else {
                        ++cyc.checked;
                        if (found == 0 && cyc.witness.empty())
                            cyc.witness = {o, x, y, z};
                    }
                }
            }
    }

    for (size_t a = 0; a < cycles.size(); ++a)
        for (size_t b = a + 1; b < cycles.size(); ++b) {
            if (!(cycles[a].certified && cycles[b].certified)) {
                ++evi.skipped;
                continue;
            }
            ++evi.checked;
            std::set<int64_t> ea;
            const auto& va = cycles[a].verts;
            for (size_t i = 0; i < va.size(); ++i)
                ea.insert(SimpleGraph::key(va[i], va[(i + 1) % va.size()]));
            int shared = 0;
            const auto& vb = cycles[b].verts;
            for (size_t i = 0; i < vb.size(); ++i)
                if (ea.count(SimpleGraph::key(vb[i], vb[(i + 1) % vb.size()])))
                    ++shared;
            if (shared > 1 && evi.witness.empty()) {
                evi.witness = va;
                evi.witness.insert(evi.witness.end(), vb.begin(), vb.end());
            }
        }

    return AxiomReport{{tri, k4, cyc, evi}};
}

inline AxiomReport check_mediangle(const CayleyBall& ball) {
    HyperplaneSet hs(&ball);
    return check_mediangle(hs);
}

// same axioms on a bare finite graph (hand-built examples); exact, no trust
inline AxiomReport check_mediangle(const SimpleGraph& g, int max_cycle_len = 12) {
    auto dist = detail::all_pairs(g);
    auto cycles = convex_even_cycles(g, max_cycle_len);
    AxiomResult tri{"triangle-condition"};
    AxiomResult k4{"no-induced-k4minus"};
    AxiomResult cyc{"cycle-condition"};
    AxiomResult evi{"even-cycle-intersections"};

    for (auto [x, y] : g.edges())
        for (int o = 0; o < g.n(); ++o) {
            if (dist[o][x] < 0 || dist[o][x] != dist[o][y]) continue;
            ++tri.checked;
            bool found = false;
            for (int z : g.neighbors(x))
                if (g.has_edge(z, y) && dist[o][z] == dist[o][x] - 1) { found = true; break; }
            if (!found && tri.witness.empty()) tri.witness = {o, x, y};
        }

    k4.checked = static_cast<long>(g.edge_count());
    if (auto w = g.find_k4_minus()) k4.witness.assign(w->begin(), w->end());

    for (int z = 0; z < g.n(); ++z) {
        const auto& nb = g.neighbors(z);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t k = i + 1; k < nb.size(); ++k) {
                int x = nb[i], y = nb[k];
                for (int o = 0; o < g.n(); ++o) {
                    if (dist[o][x] < 0 || dist[o][x] != dist[o][y] ||
                        dist[o][z] != dist[o][x] + 1)
                        continue;
                    ++cyc.checked;
                    bool found = false;
                    for (const auto& verts : cycles) {
                        const int L = static_cast<int>(verts.size());
                        auto it = std::find(verts.begin(), verts.end(), z);
                        if (it == verts.end()) continue;
                        int p = static_cast<int>(it - verts.begin());
                        int a = verts[(p + 1) % L], b = verts[(p + L - 1) % L];
                        if (!((a == x && b == y) || (a == y && b == x))) continue;
                        int w = verts[(p + L / 2) % L];
                        if (dist[o][w] == dist[o][x] - (L / 2 - 1)) { found = true; break; }
                    }
                    if (!found && cyc.witness.empty()) cyc.witness = {o, x, y, z};
                }
            }
    }

    for (size_t a = 0; a < cycles.size(); ++a)
        for (size_t b = a + 1; b < cycles.size(); ++b) {
            ++evi.checked;
            std::set<int64_t> ea;
            for (size_t i = 0; i < cycles[a].size(); ++i)
                ea.insert(SimpleGraph::key(cycles[a][i],
                                           cycles[a][(i + 1) % cycles[a].size()]));
            int shared = 0;
            for (size_t i = 0; i < cycles[b].size(); ++i)
                if (ea.count(SimpleGraph::key(cycles[b][i],
                                              cycles[b][(i + 1) % cycles[b].size()])))
                    ++shared;
            if (shared > 1 && evi.witness.empty()) {
                evi.witness = cycles[a];
                evi.witness.insert(evi.witness.end(), cycles[b].begin(), cycles[b].end());
            }
        }

    return AxiomReport{{tri, k4, cyc, evi}};
}

// triangle + quadrangle conditions and the two forbidden induced subgraphs
inline AxiomReport check_quasi_median(const SimpleGraph& g) {
    auto dist = detail::all_pairs(g);
    AxiomResult tri{"triangle-condition"};
    AxiomResult quad{"quadrangle-condition"};
    AxiomResult k4{"no-induced-k4minus"};
    AxiomResult k32{"no-induced-k32"};

    for (auto [x, y] : g.edges())
        for (int a = 0; a < g.n(); ++a) {
            if (dist[a][x] < 0 || dist[a][x] != dist[a][y]) continue;
            ++tri.checked;
            bool found = false;
            for (int z : g.neighbors(x))
                if (g.has_edge(z, y) && dist[a][z] == dist[a][x] - 1) { found = true; break; }
            if (!found && tri.witness.empty()) tri.witness = {a, x, y};
        }

    for (int z = 0; z < g.n(); ++z) {
        const auto& nb = g.neighbors(z);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t k = i + 1; k < nb.size(); ++k) {
                int x = nb[i], y = nb[k];
                for (int a = 0; a < g.n(); ++a) {
                    if (dist[a][x] < 0 || dist[a][x] != dist[a][y] ||
                        dist[a][z] != dist[a][x] + 1 || dist[a][z] < 2)
                        continue;
                    ++quad.checked;
                    bool found = false;
                    for (int w : g.neighbors(x))
                        if (g.has_edge(w, y) && dist[a][w] == dist[a][z] - 2) {
                            found = true;
                            break;
                        }
                    if (!found && quad.witness.empty()) quad.witness = {a, x, y, z};
                }
            }
    }

    k4.checked = static_cast<long>(g.edge_count());
    if (auto w = g.find_k4_minus()) k4.witness.assign(w->begin(), w->end());
    k32.checked = static_cast<long>(g.edge_count());
    if (auto w = g.find_k32()) k32.witness.assign(w->begin(), w->end());

    return AxiomReport{{tri, quad, k4, k32}};
}

// --- gates, hulls, projections -----------------------------------------

// the vertex of Y through which every geodesic from x enters Y, if any
inline std::optional<int> gate(const CayleyBall& ball, int x,
                               const std::vector<int>& Y) {
    for (int y : Y) {
        bool ok = true;
        for (int z : Y)
            if (ball.distance(x, z) != ball.distance(x, y) + ball.distance(y, z)) {
                ok = false;
                break;
            }
        if (ok) return y;
    }
    return std::nullopt;
}

// gate existence for every vertex whose distances to Y are reliable; gate
// candidates are likewise restricted to vertices of Y with reliable
// distances, so nothing here depends on truncated geodesics
inline bool is_gated(const CayleyBall& ball, const std::vector<int>& Y) {
    if (Y.empty()) throw ValidationError("gatedness of the empty set is undefined");
    auto trusted = [&](int v) {
        for (int z : Y)
            if (!ball.pair_exact(v, z)) return false;
        return true;
    };
    std::vector<int> candidates;
    for (int y : Y)
        if (trusted(y)) candidates.push_back(y);
    for (int x = 0; x < ball.vertex_count(); ++x) {
        if (!trusted(x)) continue;
        bool found = false;
        for (int y : candidates) {
            bool ok = true;
            for (int z : Y)
                if (ball.dist_from(x)[z] != ball.dist_from(x)[y] + ball.dist_from(y)[z]) {
                    ok = false;
                    break;
                }
            if (ok) { found = true; break; }
        }
        if (!found) return false;
    }
    return true;
}

// least locally-gated superset: complete triangles over inner edges and
// convex even cycles over two consecutive inner edges, then verify
inline std::vector<int> gated_hull(const HyperplaneSet& hs, const std::vector<int>& seed) {
    const CayleyBall& ball = hs.ball();
    const SimpleGraph& g = ball.graph();
    std::vector<char> in(g.n(), 0);
    for (int v : seed) in[v] = 1;
    auto tris = g.triangles();
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : tris) {
            int have = in[t[0]] + in[t[1]] + in[t[2]];
            if (have == 2) {
                in[t[0]] = in[t[1]] = in[t[2]] = 1;
                changed = true;
            }
        }
        for (const auto& c : hs.cycles()) {
            const int L = c.length();
            bool triple = false;
            for (int k = 0; k < L && !triple; ++k)
                if (in[c.verts[k]] && in[c.verts[(k + 1) % L]] && in[c.verts[(k + 2) % L]])
                    triple = true;
            if (!triple) continue;
            for (int v : c.verts)
                if (!in[v]) { in[v] = 1; changed = true; }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) out.push_back(v);
    if (!ball.complete())
        for (int v : out)
            if (ball.dist0(v) >= ball.radius())
                throw TrustViolation("gated hull reaches the ball boundary");
    if (!out.empty() && !is_gated(ball, out))
        throw InvariantViolation("locally gated closure is not gated");
    return out;
}

inline std::vector<int> gated_hull(const CayleyBall& ball, const std::vector<int>& seed) {
    HyperplaneSet hs(&ball);
    return gated_hull(hs, seed);
}

// the two projection laws for a gated subgraph
inline AxiomReport projection_checks(const HyperplaneSet& hs, const std::vector<int>& Y) {
    const CayleyBall& ball = hs.ball();
    AxiomResult sep{"projection-separates-from-whole"};
    AxiomResult cross{"projection-crossing-hyperplanes"};

    std::vector<char> inY(ball.vertex_count(), 0);
    for (int v : Y) inY[v] = 1;
    // which planes have an edge inside Y
    std::vector<char> crosses(hs.plane_count(), 0);
    const auto& edges = ball.graph().edges();
    for (int p = 0; p < hs.plane_count(); ++p)
        for (int e : hs.planes()[p].edge_ids)
            if (inY[edges[e].first] && inY[edges[e].second]) crosses[p] = 1;

    auto trusted_to_Y = [&](int x) {
        for (int z : Y)
            if (!ball.pair_exact(x, z)) return false;
        return true;
    };

    std::vector<int> proj(ball.vertex_count(), -1);
    for (int x = 0; x < ball.vertex_count(); ++x) {
        if (!trusted_to_Y(x)) continue;
        auto p = gate(ball, x, Y);
        if (!p) {
            sep.witness = {x};
            continue;
        }
        proj[x] = *p;
        ++sep.checked;
        for (int k = 0; k < hs.plane_count(); ++k) {
            if (!hs.separates(k, x, *p)) continue;
            for (int z : Y)
                if (hs.separates(k, *p, z) && sep.witness.empty())
                    sep.witness = {x, *p, z};
        }
    }

    for (int x = 0; x < ball.vertex_count(); ++x) {
        if (proj[x] < 0) continue;
        for (int y = x + 1; y < ball.vertex_count(); ++y) {
            if (proj[y] < 0 || !ball.pair_exact(x, y)) continue;
            ++cross.checked;
            for (int k = 0; k < hs.plane_count(); ++k) {
                bool lhs = hs.separates(k, proj[x], proj[y]);
                bool rhs = hs.separates(k, x, y) && crosses[k];
                if (lhs != rhs && cross.witness.empty()) cross.witness = {x, y};
            }
        }
    }

    return AxiomReport{{sep, cross}};
}

// ball vertices whose normal forms only use letters from the given set of
// generating vertices; gated by construction, and we insist on it
inline std::vector<int> parabolic_subgraph(const CayleyBall& ball,
                                           const std::vector<int>& xi) {
    std::set<int> allowed(xi.begin(), xi.end());
    std::vector<int> out;
    for (int v = 0; v < ball.vertex_count(); ++v) {
        bool ok = true;
        for (const Letter& l : ball.word_of(v))
            if (!allowed.count(l.vertex)) { ok = false; break; }
        if (ok) out.push_back(v);
    }
    if (!is_gated(ball, out))
        throw InvariantViolation("parabolic subgraph is not gated");
    return out;
}

} // namespace peria
