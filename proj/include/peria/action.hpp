#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "peria/cayley.hpp"
#include "peria/errors.hpp"
#include "peria/hyperplanes.hpp"
#include "peria/mediangle.hpp"
#include "peria/presentation.hpp"
#include "peria/word.hpp"

namespace peria {

// Obstruction analysis for the left action on the ball: which elements move
// a hyperplane onto a transverse or tangent one (or permute the sectors of a
// stabilised plane with a fixed point), how the group splits into a rotation
// subgroup against its Coxeter part, and the relative obstruction of the
// Coxeter part acting on its own parabolic subgraph.

// one offending (element, clause) pair, with the structures it touches
struct ObstructionEntry {
    Word g;
    std::string clause;
    int a = -1, b = -1;
};

struct ObstructionSet {
    std::vector<ObstructionEntry> violations;   // certified offenders
    std::vector<ObstructionEntry> undetermined; // blocked by ball truncation

    // distinct offending elements, shortlex order
    std::vector<Word> members() const {
        std::vector<Word> out;
        std::set<std::string> seen;
        for (const auto& e : violations)
            if (seen.insert(word_key(e.g)).second) out.push_back(e.g);
        std::sort(out.begin(), out.end(), shortlex_less);
        return out;
    }

    bool clean() const { return violations.empty(); }
    bool decisive() const { return undetermined.empty(); }

    nlohmann::ordered_json to_json(const PeriagroupSpec& spec) const {
        nlohmann::ordered_json j;
        j["violation_count"] = violations.size();
        j["undetermined_count"] = undetermined.size();
        auto render = [&](const std::vector<ObstructionEntry>& list) {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& e : list) {
                nlohmann::ordered_json je;
                je["g"] = format_word(spec, e.g);
                je["clause"] = e.clause;
                je["a"] = e.a;
                je["b"] = e.b;
                arr.push_back(je);
            }
            return arr;
        };
        j["violations"] = render(violations);
        j["undetermined"] = render(undetermined);
        auto mem = nlohmann::ordered_json::array();
        for (const auto& m : members()) mem.push_back(format_word(spec, m));
        j["members"] = mem;
        return j;
    }
};

// Ball-visible image of a hyperplane class under left translation.  `plane`
// is set when every translated edge that stayed in the ball landed in one
// single class; `full` additionally means no edge was lost.
struct PlaneTranslate {
    std::optional<int> plane;
    bool full = false;
};

inline PlaneTranslate translate_plane(const HyperplaneSet& hs, const Word& g, int j) {
    const CayleyBall& ball = hs.ball();
    const auto& edges = ball.graph().edges();
    std::set<int> targets;
    bool full = true;
    for (int eid : hs.planes()[j].edge_ids) {
        auto [a, b] = edges[eid];
        auto ga = ball.try_act(g, a);
        auto gb = ball.try_act(g, b);
        if (!ga || !gb) { full = false; continue; }
        targets.insert(hs.plane_of_edge(*ga, *gb));
    }
    PlaneTranslate t;
    t.full = full && !targets.empty();
    if (targets.size() == 1) t.plane = *targets.begin();
    return t;
}

// Obstruction set of the given elements on the certified hyperplanes:
//   - an element may not move a plane onto a transverse or tangent one,
//   - a transverse pair may not turn tangent (nor a tangent pair
//     transverse) after translating one side,
//   - a stabilised plane's sector permutation may not mix moved and fixed
//     sectors.
// Verdicts resting on truncated data go to `undetermined`, never into
// `violations` and never silently dropped.
inline ObstructionSet compute_obs(const HyperplaneSet& hs,
                                  const std::vector<Word>& elements) {
    ObstructionSet out;
    std::vector<int> cert;
    for (int p = 0; p < hs.plane_count(); ++p)
        if (hs.planes()[p].certified) cert.push_back(p);

    auto det = [](const RelationVerdict& v) { return !v.ball_relative; };

    for (const Word& g : elements) {
        std::map<int, PlaneTranslate> tr;
        for (int j : cert) tr[j] = translate_plane(hs, g, j);

        // image plane, only when the identification is certified
        auto resolved = [&](int j) -> std::optional<int> {
            const auto& t = tr[j];
            if (t.plane && hs.planes()[*t.plane].certified) return t.plane;
            return std::nullopt;
        };

        for (int j : cert) {
            auto img = resolved(j);
            if (!img) {
                out.undetermined.push_back({g, "translate-escapes-certified-region", j, -1});
                continue;
            }
            if (*img == j) {
                auto perm = hs.sector_permutation(j, g);
                if (!perm) {
                    out.undetermined.push_back({g, "sector-action-unresolved", j, j});
                    continue;
                }
                bool moves = false, fixes = false;
                for (size_t s = 0; s < perm->size(); ++s)
                    ((*perm)[s] == static_cast<int>(s) ? fixes : moves) = true;
                if (moves && fixes)
                    out.violations.push_back({g, "stabiliser-fixes-a-sector", j, j});
                continue;
            }
            RelationVerdict v = hs.relation(j, *img);
            if (v.rel == Relation::Transverse || v.rel == Relation::Tangent) {
                if (det(v))
                    out.violations.push_back({g,
                                              v.rel == Relation::Transverse
                                                  ? "translate-transverse"
                                                  : "translate-tangent",
                                              j, *img});
                else
                    out.undetermined.push_back({g, "translate-relation-unresolved", j, *img});
            } else if (!det(v)) {
                out.undetermined.push_back({g, "translate-relation-unresolved", j, *img});
            }
        }

        for (int i : cert)
            for (int j : cert) {
                if (i == j) continue;
                RelationVerdict base = hs.relation(i, j);
                if (base.rel != Relation::Transverse && base.rel != Relation::Tangent)
                    continue;
                auto img = resolved(j);
                if (!img) {
                    out.undetermined.push_back({g, "pair-translate-unresolved", i, j});
                    continue;
                }
                RelationVerdict v2 = hs.relation(i, *img);
                if (base.rel == Relation::Transverse && v2.rel == Relation::Tangent) {
                    if (det(base) && det(v2))
                        out.violations.push_back({g, "transverse-pair-becomes-tangent", i, j});
                    else
                        out.undetermined.push_back({g, "transverse-pair-becomes-tangent", i, j});
                } else if (base.rel == Relation::Tangent && v2.rel == Relation::Transverse) {
                    if (det(base) && det(v2))
                        out.violations.push_back({g, "tangent-pair-becomes-transverse", i, j});
                    else
                        out.undetermined.push_back({g, "tangent-pair-becomes-transverse", i, j});
                } else if (!det(base) || !det(v2)) {
                    out.undetermined.push_back({g, "pair-relation-unresolved", i, j});
                }
            }
    }
    return out;
}

// letters of a subpresentation word, re-indexed into the ambient graph
inline Word lift_letters(const std::vector<int>& psi, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) out.push_back({psi[l.vertex], l.elem});
    return out;
}

// How the group splits over the ball: the Coxeter part (vertices carrying a
// label > 2) spans a gated parabolic `delta`; the planes tangent to it are
// all product-type, and their rotative stabilisers generate the rotation
// subgroup.  `checks` records the split invariants on the visible region.
struct ConspicialityDecomposition {
    std::vector<int> psi;             // defining-graph vertices of Coxeter type
    std::vector<int> delta;           // ball ids of the Coxeter-part parabolic
    std::vector<int> peripheral;      // planes with exactly one foot in delta
    std::vector<Word> rot_generators; // nontrivial rotative stabilisers of those
    std::vector<Word> rot_elements;   // ball-relevant part of <rot_generators>
    bool rot_closed = true;           // closure did not hit its element cap
    AxiomReport checks;

    nlohmann::ordered_json to_json(const PeriagroupSpec& spec) const {
        nlohmann::ordered_json j;
        auto names = nlohmann::ordered_json::array();
        for (int v : psi) names.push_back(spec.name(v));
        j["coxeter_vertices"] = names;
        j["delta_size"] = delta.size();
        j["peripheral_planes"] = peripheral;
        auto gens = nlohmann::ordered_json::array();
        for (const auto& g : rot_generators) gens.push_back(format_word(spec, g));
        j["rot_generators"] = gens;
        j["rot_element_count"] = rot_elements.size();
        j["rot_closed"] = rot_closed;
        j["checks"] = checks.to_json();
        return j;
    }
};

inline ConspicialityDecomposition decompose(const HyperplaneSet& hs,
                                            size_t rot_cap = 20000) {
    const CayleyBall& ball = hs.ball();
    const PeriagroupSpec& spec = ball.spec();
    const Rewriter& rw = ball.rewriter();
    ConspicialityDecomposition d;
    d.psi = spec.type_c_vertices();
    d.delta = parabolic_subgraph(ball, d.psi);
    std::set<int> in_delta(d.delta.begin(), d.delta.end());

    const auto& edges = ball.graph().edges();
    for (int p = 0; p < hs.plane_count(); ++p)
        for (int eid : hs.planes()[p].edge_ids) {
            auto [a, b] = edges[eid];
            if (in_delta.count(a) != in_delta.count(b)) {
                d.peripheral.push_back(p);
                break;
            }
        }

    AxiomResult typ{"peripheral-planes-are-product-type"};
    for (int p : d.peripheral) {
        ++typ.checked;
        if (hs.planes()[p].type != VertexType::GP && typ.witness.empty())
            typ.witness = {p};
    }

    std::set<std::string> gen_seen;
    for (int p : d.peripheral)
        for (const Word& g : hs.rotative_stabiliser(p)) {
            if (g.empty()) continue;
            if (gen_seen.insert(word_key(g)).second) d.rot_generators.push_back(g);
        }
    std::sort(d.rot_generators.begin(), d.rot_generators.end(), shortlex_less);

    // subgroup closure, kept to normal forms short enough to ever matter for
    // mapping one ball vertex onto another
    const size_t len_cap = 2 * static_cast<size_t>(ball.radius());
    std::set<std::string> elem_seen;
    d.rot_elements.push_back(Word{});
    elem_seen.insert(word_key(Word{}));
    for (size_t head = 0; head < d.rot_elements.size(); ++head) {
        if (d.rot_elements.size() > rot_cap) { d.rot_closed = false; break; }
        Word cur = d.rot_elements[head];
        for (const Word& g : d.rot_generators) {
            Word nw = rw.mul(cur, g);
            if (nw.size() > len_cap) continue;
            if (elem_seen.insert(word_key(nw)).second) d.rot_elements.push_back(nw);
        }
    }
    std::sort(d.rot_elements.begin(), d.rot_elements.end(), shortlex_less);

    AxiomResult meet{"rotations-meet-coxeter-part-trivially"};
    {
        std::set<int> psiset(d.psi.begin(), d.psi.end());
        for (const Word& r : d.rot_elements) {
            ++meet.checked;
            if (r.empty()) continue;
            bool inside = true;
            for (const Letter& l : r)
                if (!psiset.count(l.vertex)) { inside = false; break; }
            if (inside && meet.witness.empty())
                meet.witness = {ball.find(r).value_or(-1)};
        }
    }

    AxiomResult car{"peripheral-carrier-meets-coxeter-part-in-coset"};
    for (int p : d.peripheral) {
        const auto& pl = hs.planes()[p];
        std::vector<int> S;
        std::set_intersection(pl.carrier.begin(), pl.carrier.end(),
                              d.delta.begin(), d.delta.end(), std::back_inserter(S));
        if (S.empty() || pl.gp_label < 0) { ++car.skipped; continue; }
        std::vector<int> xi_u;
        for (int c : d.psi)
            if (spec.adjacent(c, pl.gp_label)) xi_u.push_back(c);
        std::vector<int> base = parabolic_subgraph(ball, xi_u);
        int x0 = *std::min_element(S.begin(), S.end(), [&](int a, int b) {
            return ball.dist0(a) < ball.dist0(b);
        });
        std::vector<int> expected;
        bool visible = true;
        for (int t : base) {
            auto y = ball.find(rw.mul(ball.word_of(x0), ball.word_of(t)));
            if (!y) { visible = false; break; }
            expected.push_back(*y);
        }
        if (!visible) { ++car.skipped; continue; }
        std::sort(expected.begin(), expected.end());
        ++car.checked;
        if (expected != S && car.witness.empty()) car.witness = {p};
    }

    AxiomResult fund{"rot-translates-into-coxeter-part"};
    for (int x = 0; x < ball.vertex_count(); ++x) {
        bool found = false;
        for (const Word& r : d.rot_elements) {
            auto y = ball.try_act(r, x);
            if (y && in_delta.count(*y)) { found = true; break; }
        }
        if (found) ++fund.checked;
        else if (ball.complete() && d.rot_closed) { fund.witness = {x}; break; }
        else ++fund.skipped;
    }

    d.checks = AxiomReport{{typ, meet, car, fund}};
    return d;
}

// a subgraph of the Coxeter-part ball, together with how it arose
struct CoxeterSubgraph {
    std::string kind;                    // "wall" or "coset"
    int plane = -1;                      // wall: plane id
    std::vector<int> xi;                 // coset: generating vertex subset
    std::vector<int> verts;              // sorted ball ids
    std::set<std::pair<int, int>> edges; // normalized vertex pairs
};

// Relative obstruction of the Coxeter part acting on its own ball, over the
// family of walls and parabolic cosets:
//   - a moved family member must be separated from its original by a wall,
//   - a transverse pair may not turn tangent, nor a tangent pair transverse.
// Only finite Coxeter parts are enumerable; otherwise `supported` is false.
struct CoxeterObstruction {
    bool supported = false;
    std::string note;
    PeriagroupSpec cox;  // induced subpresentation on the Coxeter vertices
    int radius = 0;      // radius at which its ball closed up
    int order = 0;
    std::vector<CoxeterSubgraph> family;
    std::vector<ObstructionEntry> violations; // indices refer to `family`
    std::vector<Word> members;                // distinct offenders, shortlex

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["supported"] = supported;
        j["note"] = note;
        j["radius"] = radius;
        j["order"] = order;
        j["family_size"] = family.size();
        j["violation_count"] = violations.size();
        auto mem = nlohmann::ordered_json::array();
        for (const auto& m : members) mem.push_back(format_word(cox, m));
        j["members"] = mem;
        return j;
    }
};

namespace detail {

inline bool subgraph_equal(const CoxeterSubgraph& y, const CoxeterSubgraph& z) {
    return y.verts == z.verts && y.edges == z.edges;
}

// a convex even cycle carries a crossing of Y and Z when two *distinct*
// opposite-edge pairs land in Y and in Z respectively
inline bool subgraphs_transverse(const std::vector<ConvexEvenCycle>& cycles,
                                 const CoxeterSubgraph& y, const CoxeterSubgraph& z) {
    if (subgraph_equal(y, z)) return false;
    auto norm = [](int a, int b) { return std::pair<int, int>(std::min(a, b), std::max(a, b)); };
    for (const auto& c : cycles) {
        int L = c.length(), half = L / 2;
        std::vector<bool> iny(half), inz(half);
        for (int k = 0; k < half; ++k) {
            auto e1 = norm(c.verts[k], c.verts[(k + 1) % L]);
            auto e2 = norm(c.verts[k + half], c.verts[(k + half + 1) % L]);
            iny[k] = y.edges.count(e1) && y.edges.count(e2);
            inz[k] = z.edges.count(e1) && z.edges.count(e2);
        }
        for (int k1 = 0; k1 < half; ++k1)
            for (int k2 = 0; k2 < half; ++k2)
                if (k1 != k2 && iny[k1] && inz[k2]) return true;
    }
    return false;
}

inline bool subgraphs_separated(const HyperplaneSet& hs, const CoxeterSubgraph& y,
                                const CoxeterSubgraph& z) {
    for (int p = 0; p < hs.plane_count(); ++p) {
        const auto& sec = hs.planes()[p].sector_of;
        int sy = sec[y.verts.front()], sz = sec[z.verts.front()];
        bool uniform = true;
        for (int v : y.verts)
            if (sec[v] != sy) { uniform = false; break; }
        if (uniform)
            for (int v : z.verts)
                if (sec[v] != sz) { uniform = false; break; }
        if (uniform && sy != sz) return true;
    }
    return false;
}

inline bool subgraphs_tangent(const HyperplaneSet& hs,
                              const std::vector<ConvexEvenCycle>& cycles,
                              const CoxeterSubgraph& y, const CoxeterSubgraph& z) {
    return !subgraph_equal(y, z) && !subgraphs_transverse(cycles, y, z) &&
           !subgraphs_separated(hs, y, z);
}

} // namespace detail

inline CoxeterObstruction compute_coxobs(const PeriagroupSpec& spec, int radius_cap = 8) {
    CoxeterObstruction out;
    std::vector<int> psi = spec.type_c_vertices();
    out.cox = spec.restrict(psi);
    if (psi.empty()) {
        out.supported = true;
        out.note = "coxeter part is trivial";
        out.order = 1;
        return out;
    }
    std::optional<CayleyBall> ballopt;
    for (int r = 1; r <= radius_cap; ++r) {
        ballopt.emplace(&out.cox, r);
        if (ballopt->complete()) { out.radius = r; break; }
    }
    if (!ballopt || !ballopt->complete()) {
        out.note = "coxeter part did not close up within radius " + std::to_string(radius_cap);
        return out;
    }
    const CayleyBall& ball = *ballopt;
    const Rewriter& rw = ball.rewriter();
    const int n = ball.vertex_count();
    out.order = n;
    HyperplaneSet dh(&ball);

    const auto& edges = ball.graph().edges();
    auto norm = [](int a, int b) { return std::pair<int, int>(std::min(a, b), std::max(a, b)); };
    std::set<std::vector<int>> vert_seen;
    for (int p = 0; p < dh.plane_count(); ++p) {
        CoxeterSubgraph w;
        w.kind = "wall";
        w.plane = p;
        w.verts = dh.planes()[p].vertices;
        for (int eid : dh.planes()[p].edge_ids) {
            auto [a, b] = edges[eid];
            w.edges.insert(norm(a, b));
        }
        vert_seen.insert(w.verts);
        out.family.push_back(std::move(w));
    }
    const int k = out.cox.vertex_count();
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> xi;
        for (int v = 0; v < k; ++v)
            if (mask & (1 << v)) xi.push_back(v);
        std::vector<int> base = parabolic_subgraph(ball, xi);
        std::vector<bool> visited(n, false);
        for (int x = 0; x < n; ++x) {
            if (visited[x]) continue;
            CoxeterSubgraph c;
            c.kind = "coset";
            c.xi = xi;
            for (int t : base)
                c.verts.push_back(ball.require(rw.mul(ball.word_of(x), ball.word_of(t))));
            std::sort(c.verts.begin(), c.verts.end());
            for (int v : c.verts) visited[v] = true;
            for (size_t i = 0; i < c.verts.size(); ++i)
                for (size_t j = i + 1; j < c.verts.size(); ++j)
                    if (ball.graph().has_edge(c.verts[i], c.verts[j]))
                        c.edges.insert(norm(c.verts[i], c.verts[j]));
            if (vert_seen.insert(c.verts).second) out.family.push_back(std::move(c));
        }
    }

    const int F = static_cast<int>(out.family.size());
    std::vector<std::vector<char>> trans(F, std::vector<char>(F, 0)), tang(F, std::vector<char>(F, 0));
    for (int i = 0; i < F; ++i)
        for (int j = 0; j < F; ++j) {
            if (i == j) continue;
            trans[i][j] = detail::subgraphs_transverse(dh.cycles(), out.family[i], out.family[j]);
            tang[i][j] = detail::subgraphs_tangent(dh, dh.cycles(), out.family[i], out.family[j]);
        }

    auto translate = [&](const Word& g, const CoxeterSubgraph& y) {
        CoxeterSubgraph img;
        img.kind = y.kind;
        std::vector<int> map(n, -1);
        for (int v : y.verts) {
            int w = ball.require(rw.mul(g, ball.word_of(v)));
            map[v] = w;
            img.verts.push_back(w);
        }
        std::sort(img.verts.begin(), img.verts.end());
        for (const auto& [a, b] : y.edges) img.edges.insert(norm(map[a], map[b]));
        return img;
    };

    for (int gid = 1; gid < n; ++gid) {
        const Word& g = ball.word_of(gid);
        std::vector<CoxeterSubgraph> gfam;
        gfam.reserve(F);
        for (int i = 0; i < F; ++i) gfam.push_back(translate(g, out.family[i]));
        for (int i = 0; i < F; ++i) {
            if (detail::subgraph_equal(gfam[i], out.family[i])) continue;
            if (!detail::subgraphs_separated(dh, gfam[i], out.family[i]))
                out.violations.push_back({g, "translate-not-separated", i, -1});
        }
        for (int i = 0; i < F; ++i)
            for (int j = 0; j < F; ++j) {
                if (i == j) continue;
                if (trans[i][j] &&
                    detail::subgraphs_tangent(dh, dh.cycles(), gfam[i], out.family[j]))
                    out.violations.push_back({g, "transverse-pair-becomes-tangent", i, j});
                else if (tang[i][j] &&
                         detail::subgraphs_transverse(dh.cycles(), gfam[i], out.family[j]))
                    out.violations.push_back({g, "tangent-pair-becomes-transverse", i, j});
            }
    }

    std::set<std::string> mem_seen;
    for (const auto& e : out.violations)
        if (mem_seen.insert(word_key(e.g)).second) out.members.push_back(e.g);
    std::sort(out.members.begin(), out.members.end(), shortlex_less);
    out.supported = true;
    return out;
}

// Every certified obstruction element must factor as a rotation times a
// Coxeter-part offender.  Skips (never passes) elements whose factor search
// is blocked by truncation.
inline AxiomReport check_obstruction_inclusion(const HyperplaneSet& hs,
                                               const ConspicialityDecomposition& dec,
                                               const ObstructionSet& obs,
                                               const CoxeterObstruction& cox) {
    const CayleyBall& ball = hs.ball();
    const Rewriter& rw = ball.rewriter();
    AxiomResult fac{"obstruction-factors-through-rotations"};
    if (!cox.supported) {
        fac.skipped = static_cast<long>(obs.members().size());
        return AxiomReport{{fac}};
    }
    std::set<std::string> coxmain;
    for (const Word& c : cox.members)
        coxmain.insert(word_key(rw.normalize(lift_letters(dec.psi, c))));
    for (const Word& g : obs.members()) {
        bool found = false;
        for (const Word& r : dec.rot_elements) {
            if (coxmain.count(word_key(rw.mul(rw.inv(r), g)))) { found = true; break; }
        }
        if (found) ++fac.checked;
        else if (!dec.rot_closed || !ball.complete()) ++fac.skipped;
        else { fac.witness = {ball.find(g).value_or(-1)}; break; }
    }
    return AxiomReport{{fac}};
}

// largest subgroup of the Coxeter part meeting its obstruction set only in
// the identity (ties broken by first discovery in a deterministic scan)
struct ConspicialSubgroup {
    std::vector<Word> elements; // Coxeter-part words, identity first
    int order = 0;
    int group_order = 0;
    long subgroups_scanned = 0;

    nlohmann::ordered_json to_json(const PeriagroupSpec& cox) const {
        nlohmann::ordered_json j;
        j["order"] = order;
        j["group_order"] = group_order;
        j["subgroups_scanned"] = subgroups_scanned;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& w : elements) arr.push_back(format_word(cox, w));
        j["elements"] = arr;
        return j;
    }
};

inline ConspicialSubgroup find_conspicial_subgroup(const CoxeterObstruction& cox,
                                                   int max_order = 200) {
    if (!cox.supported)
        throw ValidationError("coxeter-part obstruction unavailable");
    ConspicialSubgroup out;
    out.group_order = cox.order;
    if (cox.order == 1) {
        out.elements = {Word{}};
        out.order = 1;
        out.subgroups_scanned = 1;
        return out;
    }
    if (cox.order > max_order)
        throw CapExceeded("coxeter part too large for subgroup enumeration");
    CayleyBall ball(&cox.cox, cox.radius);
    const Rewriter& rw = ball.rewriter();
    const int n = ball.vertex_count();
    std::vector<std::vector<int>> mult(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mult[i][j] = ball.require(rw.mul(ball.word_of(i), ball.word_of(j)));
    std::set<int> bad;
    for (const Word& m : cox.members) bad.insert(ball.require(m));

    auto closure = [&](std::vector<int> seed) {
        std::set<int> s(seed.begin(), seed.end());
        s.insert(0);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(s.begin(), s.end());
            for (int a : cur)
                for (int b : cur)
                    if (s.insert(mult[a][b]).second) grew = true;
        }
        return std::vector<int>(s.begin(), s.end());
    };

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue{closure({})};
    seen.insert(queue[0]);
    std::vector<int> best = queue[0];
    for (size_t head = 0; head < queue.size(); ++head) {
        std::vector<int> S = queue[head];
        std::set<int> sset(S.begin(), S.end());
        bool ok = true;
        for (int x : S)
            if (x != 0 && bad.count(x)) { ok = false; break; }
        if (ok && S.size() > best.size()) best = S;
        for (int x = 1; x < n; ++x) {
            if (sset.count(x)) continue;
            std::vector<int> T = S;
            T.push_back(x);
            T = closure(T);
            if (seen.insert(T).second) queue.push_back(T);
        }
    }
    out.subgroups_scanned = static_cast<long>(seen.size());
    out.order = static_cast<int>(best.size());
    for (int id : best) out.elements.push_back(ball.word_of(id));
    return out;
}

// ball-visible elements of the rotation subgroup extended by a Coxeter-part
// subgroup (given in ambient letters); the rotation part is normal, so
// two-sided products reduce to these
inline std::vector<Word> pi_minus_elements(const CayleyBall& ball,
                                           const ConspicialityDecomposition& dec,
                                           const std::vector<Word>& h_main) {
    const Rewriter& rw = ball.rewriter();
    std::set<std::string> seen;
    std::vector<Word> out;
    auto push = [&](const Word& w) {
        if (ball.find(w) && seen.insert(word_key(w)).second) out.push_back(w);
    };
    for (const Word& r : dec.rot_elements)
        for (const Word& h : h_main) push(rw.mul(r, h));
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

} // namespace peria
