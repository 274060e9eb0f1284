#pragma once

// Graph-product model of an obstruction-free action.  Hyperplane orbits under a
// supplied element set become the vertices of a finite simplicial graph Phi;
// each orbit carries the permutation group its stabilisers induce on the
// sectors of the representative, padded by the orbit count of that action.
// Elements of the acting group are then encoded as crossing words: one letter
// per hyperplane crossed along a geodesic, rewritten to a canonical
// graph-product normal form.  When the action is clean this encoding is
// injective and multiplicative, exhibiting the group inside the graph product.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "peria/action.hpp"
#include "peria/cayley.hpp"
#include "peria/errors.hpp"
#include "peria/graph.hpp"
#include "peria/hyperplanes.hpp"
#include "peria/presentation.hpp"
#include "peria/rewrite.hpp"
#include "peria/word.hpp"

namespace peria {

// One syllable of a crossing word: a nontrivial element of the vertex group
// attached to orbit `vertex`.  `elem` indexes into the orbit's permutation
// list, not the padded product group.
struct TargetLetter {
    int vertex = -1;
    int elem = 0;

    bool operator==(const TargetLetter& o) const {
        return vertex == o.vertex && elem == o.elem;
    }
    bool operator<(const TargetLetter& o) const {
        if (vertex != o.vertex) return vertex < o.vertex;
        return elem < o.elem;
    }
};

struct TargetVertex {
    int rep = -1;                         // orbit representative (plane id)
    std::vector<int> orbit;               // certified planes in the orbit
    std::vector<std::vector<int>> perms;  // sector permutation group of rep; identity first
    int sector_orbits = 0;                // orbits of that group on the sectors
    int group_order = 0;                  // perms.size() * sector_orbits
    VertexType type = VertexType::GP;
    bool ball_relative = false;           // some translate or stabiliser escaped the ball
};

struct GraphProductTarget {
    std::vector<TargetVertex> verts;
    std::vector<std::pair<int, int>> phi_edges;  // adjacency between orbits
    std::vector<int> orbit_of;                   // plane id -> vertex index, -1 if uncertified
    std::vector<Word> to_rep;                    // plane id -> t with t . J = J_rep
    std::vector<std::vector<std::vector<int>>> perm_mult;  // per vertex: composition table

    bool adjacent(int i, int j) const {
        if (i > j) std::swap(i, j);
        for (const auto& e : phi_edges)
            if (e.first == i && e.second == j) return true;
        return false;
    }

    // The target is itself a periagroup: every edge labelled 2, vertex group
    // the direct product of the sector-permutation group with a cyclic padding
    // factor of order sector_orbits.
    PeriagroupSpec as_presentation() const {
        PeriagroupSpec out;
        for (size_t i = 0; i < verts.size(); ++i) {
            const TargetVertex& tv = verts[i];
            const int np = static_cast<int>(tv.perms.size());
            const int nk = tv.sector_orbits;
            const int n = np * nk;
            std::vector<int> flat(static_cast<size_t>(n) * n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int pa = a / nk, ka = a % nk;
                    const int pb = b / nk, kb = b % nk;
                    flat[static_cast<size_t>(a) * n + b] =
                        perm_mult[i][pa][pb] * nk + (ka + kb) % nk;
                }
            out.add_vertex("J" + std::to_string(i), FiniteGroupTable(n, std::move(flat)));
        }
        for (const auto& e : phi_edges) out.add_edge(e.first, e.second, 2);
        return out;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        nlohmann::ordered_json vs = nlohmann::ordered_json::array();
        for (const TargetVertex& tv : verts) {
            nlohmann::ordered_json v = nlohmann::ordered_json::object();
            v["representative_plane"] = tv.rep;
            v["orbit_size"] = tv.orbit.size();
            v["sector_symmetries"] = tv.perms.size();
            v["sector_orbits"] = tv.sector_orbits;
            v["group_order"] = tv.group_order;
            v["type"] = tv.type == VertexType::C ? "C" : "GP";
            v["ball_relative"] = tv.ball_relative;
            vs.push_back(std::move(v));
        }
        j["vertices"] = std::move(vs);
        nlohmann::ordered_json es = nlohmann::ordered_json::array();
        for (const auto& e : phi_edges) es.push_back({e.first, e.second});
        j["edges"] = std::move(es);
        return j;
    }
};

namespace detail {

inline std::vector<int> perm_compose(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (size_t s = 0; s < q.size(); ++s) r[s] = p[static_cast<size_t>(q[s])];
    return r;
}

}  // namespace detail

// Partition the certified hyperplanes into orbits under the given elements and
// assemble the graph-product data.  The element list is closed under inverses
// internally, so orbit identifications are symmetric; any translate that
// escapes the certified region only flags the orbit as ball-relative.  A
// stabiliser whose sector permutation fixes a sector while moving another
// witnesses a non-free action and is rejected outright.
inline GraphProductTarget build_target(const HyperplaneSet& hs, const std::vector<Word>& elements) {
    const CayleyBall& ball = hs.ball();
    const PeriagroupSpec& spec = ball.spec();
    Rewriter rw(&spec);

    std::vector<Word> elems;
    {
        std::set<std::string> seen;
        for (const Word& g : elements) {
            for (Word w : {rw.normalize(g), rw.inv(g)}) {
                if (rw.is_identity(w)) continue;
                if (seen.insert(word_key(w)).second) elems.push_back(std::move(w));
            }
        }
    }

    const int np = static_cast<int>(hs.planes().size());
    GraphProductTarget t;
    t.orbit_of.assign(np, -1);
    t.to_rep.assign(np, Word{});

    for (int p0 = 0; p0 < np; ++p0) {
        if (!hs.planes()[p0].certified || t.orbit_of[p0] >= 0) continue;
        const int vi = static_cast<int>(t.verts.size());
        TargetVertex tv;
        tv.rep = p0;
        tv.type = hs.planes()[p0].type;
        t.orbit_of[p0] = vi;
        std::vector<int> queue{p0};
        for (size_t head = 0; head < queue.size(); ++head) {
            const int p = queue[head];
            tv.orbit.push_back(p);
            for (const Word& g : elems) {
                PlaneTranslate tr = translate_plane(hs, g, p);
                if (!tr.plane || !hs.planes()[*tr.plane].certified) {
                    tv.ball_relative = true;
                    continue;
                }
                const int q = *tr.plane;
                if (t.orbit_of[q] < 0) {
                    t.orbit_of[q] = vi;
                    // t_q . (g . J_p) = J_rep, so t_q = t_p g^-1
                    t.to_rep[q] = rw.mul(t.to_rep[p], rw.inv(g));
                    queue.push_back(q);
                } else if (t.orbit_of[q] != vi) {
                    throw InvariantViolation("certified orbit identification is not symmetric");
                }
            }
        }
        std::sort(tv.orbit.begin(), tv.orbit.end());

        // sector permutation group at the representative
        const Hyperplane& hp = hs.planes()[p0];
        std::vector<int> ident(static_cast<size_t>(hp.sector_count));
        for (int s = 0; s < hp.sector_count; ++s) ident[static_cast<size_t>(s)] = s;
        std::set<std::vector<int>> pset{ident};
        for (const Word& g : elems) {
            PlaneTranslate tr = translate_plane(hs, g, p0);
            if (!tr.plane) continue;
            if (*tr.plane != p0) continue;
            std::optional<std::vector<int>> sp = hs.sector_permutation(p0, g);
            if (!sp) {
                tv.ball_relative = true;
                continue;
            }
            bool moves = false, fixes = false;
            for (size_t s = 0; s < sp->size(); ++s)
                ((*sp)[s] == static_cast<int>(s) ? fixes : moves) = true;
            if (moves && fixes)
                throw InvariantViolation("sector action on an orbit representative is not free");
            pset.insert(*sp);
        }
        for (bool grew = true; grew;) {  // close under composition
            grew = false;
            std::vector<std::vector<int>> cur(pset.begin(), pset.end());
            for (const auto& a : cur)
                for (const auto& b : cur) {
                    std::vector<int> c = detail::perm_compose(a, b);
                    if (pset.insert(std::move(c)).second) grew = true;
                }
        }
        tv.perms.assign(pset.begin(), pset.end());
        std::stable_sort(tv.perms.begin(), tv.perms.end(),
                         [&](const std::vector<int>& a, const std::vector<int>& b) {
                             if ((a == ident) != (b == ident)) return a == ident;
                             return a < b;
                         });

        DisjointSets sect(hp.sector_count);
        for (const auto& pm : tv.perms)
            for (int s = 0; s < hp.sector_count; ++s) sect.unite(s, pm[static_cast<size_t>(s)]);
        std::set<int> roots;
        for (int s = 0; s < hp.sector_count; ++s) roots.insert(sect.find(s));
        tv.sector_orbits = static_cast<int>(roots.size());
        tv.group_order = static_cast<int>(tv.perms.size()) * tv.sector_orbits;
        t.verts.push_back(std::move(tv));
    }

    // composition tables, by index into each vertex's permutation list
    t.perm_mult.resize(t.verts.size());
    for (size_t i = 0; i < t.verts.size(); ++i) {
        const auto& ps = t.verts[i].perms;
        const int n = static_cast<int>(ps.size());
        t.perm_mult[i].assign(n, std::vector<int>(n, -1));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<int> c = detail::perm_compose(ps[static_cast<size_t>(a)],
                                                          ps[static_cast<size_t>(b)]);
                auto it = std::find(ps.begin(), ps.end(), c);
                if (it == ps.end())
                    throw InvariantViolation("sector permutations do not close under composition");
                t.perm_mult[i][a][b] = static_cast<int>(it - ps.begin());
            }
    }

    // orbits are adjacent when they contain a transverse pair of planes
    for (size_t i = 0; i < t.verts.size(); ++i)
        for (size_t j = i + 1; j < t.verts.size(); ++j) {
            bool edge = false;
            for (int p : t.verts[i].orbit) {
                for (int q : t.verts[j].orbit) {
                    RelationVerdict rv = hs.relation(p, q);
                    if (rv.rel != Relation::Transverse) continue;
                    if (rv.ball_relative) {
                        t.verts[i].ball_relative = t.verts[j].ball_relative = true;
                    } else {
                        edge = true;
                        break;
                    }
                }
                if (edge) break;
            }
            if (edge) t.phi_edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    for (const TargetVertex& tv : t.verts)
        for (size_t a = 0; a < tv.orbit.size(); ++a)
            for (size_t b = a + 1; b < tv.orbit.size(); ++b) {
                RelationVerdict rv = hs.relation(tv.orbit[a], tv.orbit[b]);
                if (rv.rel == Relation::Transverse && !rv.ball_relative)
                    throw InvariantViolation("an orbit contains a transverse pair of planes");
            }
    return t;
}

struct CrossingWord {
    std::vector<TargetLetter> raw;        // one letter per crossed hyperplane
    std::vector<TargetLetter> canonical;  // graph-product normal form

    std::string to_string() const {
        if (canonical.empty()) return "e";
        std::string out;
        for (size_t i = 0; i < canonical.size(); ++i) {
            if (i) out += '.';
            out += "J" + std::to_string(canonical[i].vertex) + ":" +
                   std::to_string(canonical[i].elem);
        }
        return out;
    }
};

// Shuffle commuting syllables into ascending vertex order and merge adjacent
// syllables sharing a vertex; the result is the shortlex graph-product normal
// form of the letter sequence.
inline std::vector<TargetLetter> gp_normal_form(std::vector<TargetLetter> w,
                                                const GraphProductTarget& t) {
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < w.size();) {
            if (w[i].vertex == w[i + 1].vertex) {
                const int k = t.perm_mult[static_cast<size_t>(w[i].vertex)][w[i].elem][w[i + 1].elem];
                w.erase(w.begin() + static_cast<long>(i) + 1);
                if (k == 0) {
                    w.erase(w.begin() + static_cast<long>(i));
                } else {
                    w[i].elem = k;
                }
                changed = true;
                i = i ? i - 1 : 0;
            } else {
                ++i;
            }
        }
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].vertex > w[i + 1].vertex && t.adjacent(w[i].vertex, w[i + 1].vertex)) {
                std::swap(w[i], w[i + 1]);
                changed = true;
            }
        }
    }
    return w;
}

namespace detail {

// Deterministic geodesic from the identity: descend through the
// smallest-id predecessor at each step.
inline std::vector<int> geodesic_from_identity(const CayleyBall& ball, int v) {
    std::vector<int> rev{v};
    int cur = v;
    while (cur != 0) {
        int best = -1;
        for (int w : ball.graph().neighbors(cur))
            if (ball.dist0(w) == ball.dist0(cur) - 1 && (best < 0 || w < best)) best = w;
        if (best < 0) throw InvariantViolation("no predecessor toward the identity");
        rev.push_back(best);
        cur = best;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

inline CrossingWord crossing_word_along(const HyperplaneSet& hs, const GraphProductTarget& t,
                                        const std::vector<int>& path) {
    const CayleyBall& ball = hs.ball();
    CrossingWord cw;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const int x = path[i], y = path[i + 1];
        const int p = hs.plane_of_edge(x, y);
        const int vi = t.orbit_of[p];
        if (vi < 0) throw TrustViolation("geodesic crosses an uncertified hyperplane");
        std::optional<int> tx = ball.try_act(t.to_rep[p], x);
        std::optional<int> ty = ball.try_act(t.to_rep[p], y);
        if (!tx || !ty) throw TrustViolation("orbit translator escapes the ball");
        const Hyperplane& rep = hs.planes()[t.verts[static_cast<size_t>(vi)].rep];
        const int sf = rep.sector_of.at(*tx);
        const int st = rep.sector_of.at(*ty);
        if (sf == st) throw InvariantViolation("crossing does not change sector");
        int found = -1;
        const auto& perms = t.verts[static_cast<size_t>(vi)].perms;
        for (size_t k = 0; k < perms.size(); ++k) {
            if (perms[k][static_cast<size_t>(sf)] == st) {
                // the action on sectors is free, so the match is unique
                if (found >= 0) throw InvariantViolation("ambiguous sector transition");
                found = static_cast<int>(k);
            }
        }
        if (found < 0) throw TrustViolation("sector transition outside the computed symmetries");
        cw.raw.push_back(TargetLetter{vi, found});
    }
    cw.canonical = gp_normal_form(cw.raw, t);
    return cw;
}

}  // namespace detail

// Read off the crossing word of g along a deterministic geodesic from the
// identity.  Raw length equals d(1, g); the canonical form is independent of
// the geodesic chosen.
inline CrossingWord crossing_word(const HyperplaneSet& hs, const GraphProductTarget& t,
                                  const Word& g) {
    const int v = hs.ball().require(g);
    return detail::crossing_word_along(hs, t, detail::geodesic_from_identity(hs.ball(), v));
}

// Check that crossing words separate the sample elements and turn products
// into products.  Samples the encoding cannot resolve inside the ball are
// skipped, never passed.
inline AxiomReport verify_embedding(const HyperplaneSet& hs, const GraphProductTarget& t,
                                    const std::vector<Word>& samples) {
    const CayleyBall& ball = hs.ball();
    Rewriter rw(&ball.spec());
    AxiomReport rep;
    AxiomResult inj{"distinct-samples-separate"};
    AxiomResult mult{"products-multiply"};

    std::vector<Word> ws;
    {
        std::set<std::string> seen;
        for (const Word& g : samples) {
            Word w = rw.normalize(g);
            if (seen.insert(word_key(w)).second) ws.push_back(std::move(w));
        }
    }

    std::vector<std::optional<CrossingWord>> enc(ws.size());
    for (size_t i = 0; i < ws.size(); ++i) {
        try {
            enc[i] = crossing_word(hs, t, ws[i]);
        } catch (const TrustViolation&) {
        }
    }

    for (size_t i = 0; i < ws.size(); ++i)
        for (size_t j = i + 1; j < ws.size(); ++j) {
            if (!enc[i] || !enc[j]) {
                ++inj.skipped;
                continue;
            }
            if (enc[i]->canonical == enc[j]->canonical) {
                if (inj.witness.empty()) inj.witness = {static_cast<int>(i), static_cast<int>(j)};
            } else {
                ++inj.checked;
            }
        }

    for (size_t i = 0; i < ws.size(); ++i)
        for (size_t j = 0; j < ws.size(); ++j) {
            if (!enc[i] || !enc[j]) {
                ++mult.skipped;
                continue;
            }
            std::optional<CrossingWord> prod;
            try {
                prod = crossing_word(hs, t, rw.mul(ws[i], ws[j]));
            } catch (const TrustViolation&) {
                ++mult.skipped;
                continue;
            }
            std::vector<TargetLetter> lhs = enc[i]->canonical;
            lhs.insert(lhs.end(), enc[j]->canonical.begin(), enc[j]->canonical.end());
            if (gp_normal_form(std::move(lhs), t) == prod->canonical) {
                ++mult.checked;
            } else if (mult.witness.empty()) {
                mult.witness = {static_cast<int>(i), static_cast<int>(j)};
            }
        }

    rep.axioms.push_back(std::move(inj));
    rep.axioms.push_back(std::move(mult));
    return rep;
}

}  // namespace peria
