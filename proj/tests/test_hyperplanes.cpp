#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fixtures.hpp"
#include "peria/cayley.hpp"
#include "peria/hyperplanes.hpp"

using namespace peria;

namespace {

// axial-coordinate model of the hexagonal lattice: vertices (q, r, b) with
// b in {0,1}; each b=0 vertex joins its own b=1 and the b=1 of (q-1, r) and
// (q, r-1).  Independent of the group machinery on purpose.
struct Honeycomb {
    SimpleGraph g;
    std::vector<int> dist;
    std::map<std::tuple<int, int, int>, int> id;

    explicit Honeycomb(int radius) {
        int span = radius + 2;
        auto add = [&](int q, int r, int b) {
            auto [it, fresh] = id.emplace(std::make_tuple(q, r, b), g.n());
            if (fresh) g.add_vertex();
            return it->second;
        };
        for (int q = -span; q <= span; ++q)
            for (int r = -span; r <= span; ++r) {
                int a = add(q, r, 0), b = add(q, r, 1);
                g.add_edge(a, b);
                g.add_edge(b, add(q + 1, r, 0));
                g.add_edge(b, add(q, r + 1, 0));
            }
        dist = g.bfs(id.at({0, 0, 0}));
    }

    std::vector<int> ring_sizes(int radius) const {
        std::vector<int> out(radius + 1, 0);
        for (int v = 0; v < g.n(); ++v)
            if (dist[v] >= 0 && dist[v] <= radius) ++out[dist[v]];
        return out;
    }

    int edges_within(int radius) const {
        int n = 0;
        for (auto [a, b] : g.edges())
            if (dist[a] >= 0 && dist[a] <= radius && dist[b] >= 0 && dist[b] <= radius)
                ++n;
        return n;
    }

    // hexagonal faces with every corner within the radius
    int hexagons_within(int radius) const {
        int count = 0;
        for (const auto& [key, v0] : id) {
            auto [q, r, b] = key;
            if (b != 0) continue;
            // face with (q,r,0) as its "lower" corner
            std::vector<std::tuple<int, int, int>> corners = {
                {q, r, 0},     {q, r, 1},     {q, r + 1, 0},
                {q - 1, r + 1, 1}, {q - 1, r + 1, 0}, {q - 1, r, 1}};
            bool ok = true;
            for (auto& c : corners) {
                auto it = id.find(c);
                if (it == id.end() || dist[it->second] < 0 || dist[it->second] > radius) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++count;
        }
        return count;
    }
};

int plane_with_edge_count(const HyperplaneSet& hs, size_t edges) {
    for (const auto& p : hs.planes())
        if (p.edge_ids.size() == edges) return p.id;
    return -1;
}

int plane_of_word(const HyperplaneSet& hs, const CayleyBall& ball, const char* xs,
                  const char* ys) {
    int x = ball.require(parse_word(ball.spec(), xs));
    int y = ball.require(parse_word(ball.spec(), ys));
    return hs.plane_of_edge(x, y);
}

} // namespace

TEST_CASE("hexagon ball splits into three certified walls") {
    auto spec = fx::f1();
    CayleyBall ball(&spec, 3);
    HyperplaneSet hs(&ball);

    REQUIRE(hs.cycles().size() == 1);
    CHECK(hs.cycles()[0].length() == 6);
    CHECK(hs.cycles()[0].certified);

    REQUIRE(hs.plane_count() == 3);
    for (const auto& p : hs.planes()) {
        CHECK(p.edge_ids.size() == 2);
        CHECK(p.type == VertexType::C);
        CHECK(p.certified);
        CHECK(p.sector_count == 2);
        CHECK(p.carrier.size() == 6); // the hexagon is every wall's carrier
        CHECK(p.labels.size() == 2);  // opposite edges carry the two letters
    }

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto v = hs.relation(i, j);
            if (i == j) {
                CHECK(v.rel == Relation::Equal);
            } else {
                CHECK(v.rel == Relation::Transverse);
                CHECK_FALSE(v.ball_relative);
                CHECK(hs.angle(i, j) == Angle{1, 3});
                CHECK(hs.angle(i, j).str() == "pi/3");
            }
        }

    // distance equals the number of separating walls
    for (int x = 0; x < ball.vertex_count(); ++x)
        for (int y = 0; y < ball.vertex_count(); ++y)
            CHECK(ball.distance(x, y) == hs.count_separating(x, y));
}

TEST_CASE("rotative stabiliser of a hexagon wall is the edge flip") {
    auto spec = fx::f1();
    CayleyBall ball(&spec, 3);
    HyperplaneSet hs(&ball);

    for (const auto& p : hs.planes()) {
        auto rs = hs.rotative_stabiliser(p.id);
        REQUIRE(rs.size() == 2);
        CHECK(rs[0].empty()); // identity first in shortlex order
        CHECK_FALSE(rs[1].empty());
        CHECK(ball.rewriter().is_identity(ball.rewriter().mul(rs[1], rs[1])));
        // free and transitive on the two sectors
        auto perm = hs.sector_permutation(p.id, rs[1]);
        REQUIRE(perm.has_value());
        CHECK((*perm)[0] == 1);
        CHECK((*perm)[1] == 0);
    }
}

TEST_CASE("prism walls: triangles and the matching") {
    auto spec = fx::f2();
    CayleyBall ball(&spec, 2);
    HyperplaneSet hs(&ball);

    REQUIRE(hs.cycles().size() == 3);
    for (const auto& c : hs.cycles()) {
        CHECK(c.length() == 4);
        CHECK(c.certified);
    }

    REQUIRE(hs.plane_count() == 2);
    int tri = plane_with_edge_count(hs, 6), match = plane_with_edge_count(hs, 3);
    REQUIRE(tri >= 0);
    REQUIRE(match >= 0);

    const auto& pt = hs.planes()[tri];
    CHECK(pt.type == VertexType::GP);
    CHECK(ball.spec().name(pt.gp_label) == "v");
    CHECK(pt.sector_count == 3);
    CHECK(pt.certified);
    CHECK(pt.carrier.size() == 6);

    const auto& pm = hs.planes()[match];
    CHECK(pm.type == VertexType::GP);
    CHECK(ball.spec().name(pm.gp_label) == "u");
    CHECK(pm.sector_count == 2);
    CHECK(pm.certified);
    CHECK(pm.carrier.size() == 6);

    // transverse at a right angle; the two labels are adjacent in the graph
    auto v = hs.relation(tri, match);
    CHECK(v.rel == Relation::Transverse);
    CHECK_FALSE(v.ball_relative);
    CHECK(hs.angle(tri, match) == Angle{1, 2});
    CHECK(hs.angle(tri, match).str() == "pi/2");
    CHECK(ball.spec().adjacent(pt.gp_label, pm.gp_label));

    // rotative stabilisers have the vertex-group orders and rotate sectors
    // freely and transitively
    auto rs_tri = hs.rotative_stabiliser(tri);
    REQUIRE(rs_tri.size() == 3);
    std::set<int> images;
    for (const auto& g : rs_tri) {
        auto perm = hs.sector_permutation(tri, g);
        REQUIRE(perm.has_value());
        images.insert((*perm)[0]);
    }
    CHECK(images.size() == 3); // transitive, hence free on three sectors

    auto rs_match = hs.rotative_stabiliser(match);
    REQUIRE(rs_match.size() == 2);

    // sectors of a complete ball are convex
    for (const auto& p : hs.planes())
        for (int x = 0; x < ball.vertex_count(); ++x)
            for (int y = 0; y < ball.vertex_count(); ++y) {
                if (p.sector_of[x] != p.sector_of[y]) continue;
                for (int m : ball.interval(x, y))
                    CHECK(p.sector_of[m] == p.sector_of[x]);
            }

    for (int x = 0; x < ball.vertex_count(); ++x)
        for (int y = 0; y < ball.vertex_count(); ++y)
            CHECK(ball.distance(x, y) == hs.count_separating(x, y));
}

TEST_CASE("free product walls are triangles with three sectors") {
    auto spec = fx::f3();
    CayleyBall ball(&spec, 3);
    HyperplaneSet hs(&ball);

    CHECK(hs.cycles().empty());
    REQUIRE(hs.plane_count() == 14); // one wall per triangle
    int certified = 0;
    for (const auto& p : hs.planes()) {
        CHECK(p.edge_ids.size() == 3);
        CHECK(p.sector_count == 3);
        CHECK(p.type == VertexType::GP);
        if (p.certified) ++certified;
    }
    CHECK(certified == 6); // both base triangles and their four near cosets

    int pu = plane_of_word(hs, ball, "e", "u:1");
    int pv = plane_of_word(hs, ball, "e", "v:1");
    REQUIRE(pu != pv);

    // the two base walls meet at the identity: genuinely tangent
    auto t = hs.relation(pu, pv);
    CHECK(t.rel == Relation::Tangent);
    CHECK_FALSE(t.ball_relative);

    // translated wall: separated, and all three walls involved are complete
    int pvu = plane_of_word(hs, ball, "v:1", "v:1.u:1");
    auto s = hs.relation(pu, pvu);
    CHECK(s.rel == Relation::Separated);
    CHECK_FALSE(s.ball_relative);

    // a wall reaching the boundary only separates relative to the ball
    int pfar = plane_of_word(hs, ball, "u:1.v:1", "u:1.v:1.u:1");
    CHECK_FALSE(hs.planes()[pfar].certified);
    auto sf = hs.relation(pu, pfar);
    CHECK(sf.rel == Relation::Separated);
    CHECK(sf.ball_relative);

    // tangent labels here are non-adjacent (no edge in the defining graph)
    CHECK_FALSE(ball.spec().adjacent(hs.planes()[pu].gp_label, hs.planes()[pv].gp_label));

    auto rs = hs.rotative_stabiliser(pu);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].empty());

    // no certified crossing anywhere: angles are undefined
    CHECK_THROWS_AS(hs.angle(pu, pv), TrustViolation);
}

TEST_CASE("smaller free product ball still classifies every edge") {
    auto spec = fx::f3();
    CayleyBall ball(&spec, 2);
    HyperplaneSet hs(&ball);
    REQUIRE(hs.plane_count() == 6);
    int certified = 0;
    for (const auto& p : hs.planes())
        if (p.certified) ++certified;
    CHECK(certified == 2);

    // partition check: every edge in exactly one class
    size_t total = 0;
    for (const auto& p : hs.planes()) total += p.edge_ids.size();
    CHECK(total == ball.graph().edge_count());
}

TEST_CASE("honeycomb ball agrees with the axial-coordinate model") {
    const int R = 5;
    auto spec = fx::f5();
    CayleyBall ball(&spec, R);
    Honeycomb comb(R);

    auto rings = comb.ring_sizes(R);
    REQUIRE(rings == std::vector<int>{1, 3, 6, 9, 12, 15});
    CHECK(ball.vertex_count() == 46);

    std::map<int, int> ball_rings;
    for (int v = 0; v < ball.vertex_count(); ++v) ++ball_rings[ball.dist0(v)];
    for (int d = 0; d <= R; ++d) CHECK(ball_rings[d] == rings[d]);

    CHECK(static_cast<int>(ball.graph().edge_count()) == comb.edges_within(R));

    HyperplaneSet hs(&ball);
    CHECK(static_cast<int>(hs.cycles().size()) == comb.hexagons_within(R));
    CHECK(hs.cycles().size() > 0);

    // hexagons based near the centre are certified, and only those
    int n_cert = 0;
    for (const auto& c : hs.cycles()) {
        int base = ball.vertex_count();
        for (int v : c.verts) base = std::min(base, ball.dist0(v));
        CHECK(c.certified == (base <= R - 3));
        if (c.certified) ++n_cert;
    }
    CHECK(n_cert > 0);
}

TEST_CASE("honeycomb walls stay open-ended but angles are exact") {
    auto spec = fx::f5();
    CayleyBall ball(&spec, 5);
    HyperplaneSet hs(&ball);

    for (const auto& p : hs.planes()) {
        CHECK_FALSE(p.certified); // every wall is an infinite zigzag
        CHECK(p.type == VertexType::C);
    }

    // the three walls through the central hexagon pairwise cross at pi/3;
    // the crossing itself is backed by a certified hexagon even though the
    // walls are not complete
    int a = plane_of_word(hs, ball, "e", "u:1");
    int b = plane_of_word(hs, ball, "e", "v:1");
    REQUIRE(a != b);
    auto v = hs.relation(a, b);
    CHECK(v.rel == Relation::Transverse);
    CHECK(v.ball_relative);
    CHECK(hs.angle(a, b) == Angle{1, 3});

    // every crossing with a certified witness measures pi/3
    for (int i = 0; i < hs.plane_count(); ++i)
        for (int j = i + 1; j < hs.plane_count(); ++j) {
            bool cert = false;
            for (int c : hs.shared_cycles(i, j))
                if (hs.cycles()[c].certified) cert = true;
            if (!cert) continue;
            CHECK(hs.angle(i, j) == Angle{1, 3});
            CHECK(hs.relation(i, j).rel == Relation::Transverse);
        }
}

TEST_CASE("wall exports") {
    auto spec = fx::f2();
    CayleyBall ball(&spec, 2);
    HyperplaneSet hs(&ball);
    auto j = hs.to_json();
    CHECK(j["cycle_count"] == 3);
    CHECK(j["planes"].size() == 2);
    CHECK(j["planes"][0].contains("sector_count"));
    auto dot = hs.to_dot();
    CHECK(dot.find("graph hyperplanes") != std::string::npos);
    CHECK(dot.find("color=") != std::string::npos);
}
