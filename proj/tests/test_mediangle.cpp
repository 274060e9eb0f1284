#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "peria/cayley.hpp"
#include "peria/hyperplanes.hpp"
#include "peria/mediangle.hpp"
#include "fixtures.hpp"

using namespace peria;

namespace {

int vid(const CayleyBall& b, const char* w) {
    return b.require(parse_word(b.spec(), w));
}

std::vector<int> vids(const CayleyBall& b, std::initializer_list<const char*> ws) {
    std::vector<int> out;
    for (const char* w : ws) out.push_back(vid(b, w));
    return out;
}

// some wall puts all of A strictly on one side and all of B on the other
bool wall_separated(const HyperplaneSet& hs, const std::vector<int>& A,
                    const std::vector<int>& B) {
    for (const auto& p : hs.planes()) {
        int sa = p.sector_of[A[0]], sb = p.sector_of[B[0]];
        if (sa == sb) continue;
        bool ok = true;
        for (int v : A)
            if (p.sector_of[v] != sa) { ok = false; break; }
        for (int v : B)
            if (ok && p.sector_of[v] != sb) ok = false;
        if (ok) return true;
    }
    return false;
}

std::set<int> planes_crossing(const HyperplaneSet& hs, const std::vector<int>& verts) {
    std::set<int> mem(verts.begin(), verts.end());
    std::set<int> out;
    const auto& edges = hs.ball().graph().edges();
    for (const auto& p : hs.planes())
        for (int e : p.edge_ids)
            if (mem.count(edges[e].first) && mem.count(edges[e].second))
                out.insert(p.id);
    return out;
}

SimpleGraph cycle_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

} // namespace

TEST_CASE("complete balls satisfy every mediangle axiom exactly") {
    auto s1 = fx::f1();
    CayleyBall b1(&s1, 3);
    auto r1 = check_mediangle(b1);
    CHECK(r1.ok());
    CHECK(r1.total_skipped() == 0);
    // the only witness configurations sit opposite each corner of the hexagon
    CHECK(r1.axiom("cycle-condition").checked == 6);
    CHECK(r1.axiom("triangle-condition").checked == 0);

    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    auto r2 = check_mediangle(b2);
    CHECK(r2.ok());
    CHECK(r2.total_skipped() == 0);
    CHECK(r2.axiom("triangle-condition").checked > 0);
    CHECK(r2.axiom("even-cycle-intersections").checked == 3);
    CHECK(r2.to_json()["ok"] == true);
}

TEST_CASE("truncated balls skip boundary configurations instead of failing") {
    auto s3 = fx::f3();
    CayleyBall b3(&s3, 3);
    auto r3 = check_mediangle(b3);
    CHECK(r3.ok());
    CHECK(r3.axiom("triangle-condition").checked > 0);
    CHECK(r3.total_skipped() > 0);

    auto s5 = fx::f5();
    CayleyBall b5(&s5, 5);
    auto r5 = check_mediangle(b5);
    CHECK(r5.ok());
    CHECK(r5.total_skipped() > 0);
    for (const auto& a : r5.axioms) CHECK(a.witness.empty());

    auto s4 = fx::f4();
    CayleyBall b4(&s4, 2);
    CHECK(check_mediangle(b4).ok());
}

TEST_CASE("hand-built forbidden patterns are caught with witnesses") {
    SimpleGraph k4m(4);
    k4m.add_edge(0, 1);
    k4m.add_edge(0, 2);
    k4m.add_edge(0, 3);
    k4m.add_edge(1, 2);
    k4m.add_edge(1, 3);
    auto r = check_mediangle(k4m);
    CHECK_FALSE(r.ok());
    CHECK(r.axiom("no-induced-k4minus").status() == AxiomStatus::Fail);
    CHECK(r.axiom("no-induced-k4minus").witness.size() == 4);

    SimpleGraph k32(5);
    for (int a : {0, 1, 2})
        for (int b : {3, 4}) k32.add_edge(a, b);
    auto q = check_quasi_median(k32);
    CHECK_FALSE(q.ok());
    CHECK(q.axiom("no-induced-k32").witness.size() == 5);
}

TEST_CASE("hexagon is mediangle but not quasi-median") {
    auto c6 = cycle_graph(6);
    CHECK(check_mediangle(c6).ok());

    auto q = check_quasi_median(c6);
    CHECK_FALSE(q.ok());
    CHECK(q.axiom("triangle-condition").witness.empty());
    const auto& w = q.axiom("quadrangle-condition").witness;
    REQUIRE(w.size() == 4);
    // the witness really is a quadrangle configuration with no closing vertex
    auto d = c6.bfs(w[0]);
    CHECK(d[w[1]] == d[w[2]]);
    CHECK(d[w[3]] == d[w[1]] + 1);
    CHECK(c6.has_edge(w[3], w[1]));
    CHECK(c6.has_edge(w[3], w[2]));
}

TEST_CASE("prism and clique are quasi-median") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    CHECK(check_quasi_median(b2.graph()).ok());

    SimpleGraph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    CHECK(check_quasi_median(k3).ok());
}

TEST_CASE("gates locate entry points of gated pieces") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    auto tri = vids(b2, {"e", "v:1", "v:2"});

    CHECK(gate(b2, vid(b2, "u:1.v:1"), tri) == vid(b2, "v:1"));
    CHECK(gate(b2, vid(b2, "v:2"), tri) == vid(b2, "v:2"));
    // a lone square is not gated: this corner has no gate in it
    auto square = vids(b2, {"e", "u:1", "u:1.v:1", "v:1"});
    CHECK_FALSE(gate(b2, vid(b2, "u:1.v:2"), square).has_value());

    auto s1 = fx::f1();
    CayleyBall b1(&s1, 3);
    auto edge = vids(b1, {"e", "u:1"});
    CHECK(gate(b1, vid(b1, "u:1.v:1"), edge) == vid(b1, "u:1"));
    CHECK(gate(b1, vid(b1, "u:1.v:1.u:1"), edge) == vid(b1, "u:1"));
    CHECK(gate(b1, vid(b1, "v:1"), edge) == vid(b1, "e"));
}

TEST_CASE("gatedness verdicts on small pieces") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    CHECK(is_gated(b2, vids(b2, {"e", "v:1", "v:2"})));
    CHECK(is_gated(b2, vids(b2, {"u:1", "u:1.v:1", "u:1.v:2"})));
    CHECK_FALSE(is_gated(b2, vids(b2, {"e", "u:1", "u:1.v:1", "v:1"})));

    auto s1 = fx::f1();
    CayleyBall b1(&s1, 3);
    CHECK(is_gated(b1, vids(b1, {"e", "u:1"})));
    CHECK_FALSE(is_gated(b1, vids(b1, {"e", "u:1.v:1.u:1"})));
}

TEST_CASE("gated hulls close triangles and convex cycles") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    HyperplaneSet h2(&b2);

    // one square swallows the whole prism
    auto square = vids(b2, {"e", "u:1", "u:1.v:1", "v:1"});
    auto hull = gated_hull(h2, square);
    CHECK(hull.size() == 6);
    // and the hull is crossed by exactly the walls that crossed the square
    CHECK(planes_crossing(h2, square) == planes_crossing(h2, hull));

    auto tri = vids(b2, {"e", "v:1", "v:2"});
    CHECK(gated_hull(h2, tri) == tri);
    CHECK(gated_hull(h2, hull) == hull); // idempotent

    std::vector<int> lone = {0};
    CHECK(gated_hull(h2, lone) == lone);

    auto s1 = fx::f1();
    CayleyBall b1(&s1, 3);
    HyperplaneSet h1(&b1);
    auto path = vids(b1, {"v:1", "e", "u:1"});
    CHECK(gated_hull(h1, path).size() == 6);
    auto edge = vids(b1, {"e", "u:1"});
    auto small = gated_hull(h1, edge);
    CHECK(small.size() == 2);
    // monotone: growing the seed never shrinks the hull
    auto big = gated_hull(h1, path);
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
}

TEST_CASE("hull growth near the boundary is refused") {
    auto s3 = fx::f3();
    CayleyBall b3(&s3, 2);
    HyperplaneSet h3(&b3);
    // this edge sits in a triangle whose far corners touch the boundary
    auto seed = vids(b3, {"u:1", "u:1.v:1"});
    CHECK_THROWS_AS(gated_hull(h3, seed), TrustViolation);
}

TEST_CASE("projection laws hold for gated subgraphs") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    HyperplaneSet h2(&b2);
    auto r = projection_checks(h2, vids(b2, {"e", "v:1", "v:2"}));
    CHECK(r.ok());
    CHECK(r.axiom("projection-separates-from-whole").checked == 6);
    CHECK(r.axiom("projection-crossing-hyperplanes").checked == 15);

    auto s1 = fx::f1();
    CayleyBall b1(&s1, 3);
    HyperplaneSet h1(&b1);
    CHECK(projection_checks(h1, vids(b1, {"e", "u:1"})).ok());
}

TEST_CASE("parabolic subgraphs are gated slices of the ball") {
    auto s4 = fx::f4();
    CayleyBall b4(&s4, 3);
    auto delta = parabolic_subgraph(b4, {1, 2});
    REQUIRE(delta.size() == 6);
    // the dihedral slice is an induced 6-cycle
    for (int v : delta) {
        int deg = 0;
        for (int w : delta)
            if (b4.graph().has_edge(v, w)) ++deg;
        CHECK(deg == 2);
    }

    CHECK(parabolic_subgraph(b4, {}) == std::vector<int>{0});
    CHECK(parabolic_subgraph(b4, {0, 1, 2}).size() ==
          static_cast<size_t>(b4.vertex_count()));

    // at radius 2 one corner of the slice is still out of reach
    CayleyBall b4s(&s4, 2);
    CHECK(parabolic_subgraph(b4s, {1, 2}).size() == 5);

    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    CHECK(parabolic_subgraph(b2, {0}) == vids(b2, {"e", "u:1"}));
}

TEST_CASE("disjoint gated pieces are separated by a wall") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    HyperplaneSet h2(&b2);
    CHECK(wall_separated(h2, vids(b2, {"e", "v:1", "v:2"}),
                         vids(b2, {"u:1", "u:1.v:1", "u:1.v:2"})));

    auto s3 = fx::f3();
    CayleyBall b3(&s3, 3);
    HyperplaneSet h3(&b3);
    CHECK(wall_separated(h3, vids(b3, {"e", "u:1", "u:2"}),
                         vids(b3, {"v:1", "v:1.u:1", "v:1.u:2"})));
}

TEST_CASE("certified product walls have gated carriers") {
    auto s2 = fx::f2();
    CayleyBall b2(&s2, 2);
    HyperplaneSet h2(&b2);
    auto s3 = fx::f3();
    CayleyBall b3(&s3, 3);
    HyperplaneSet h3(&b3);
    int seen = 0;
    for (auto* pair : {&h2, &h3}) {
        for (const auto& p : pair->planes()) {
            if (!p.certified || p.type != VertexType::GP) continue;
            CHECK(is_gated(pair->ball(), p.carrier));
            ++seen;
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("distances again match separating wall counts") {
    for (int which : {1, 2}) {
        auto spec = which == 1 ? fx::f1() : fx::f2();
        CayleyBall ball(&spec, which == 1 ? 3 : 2);
        HyperplaneSet hs(&ball);
        for (int x = 0; x < ball.vertex_count(); ++x)
            for (int y = x + 1; y < ball.vertex_count(); ++y)
                CHECK(ball.distance(x, y) == hs.count_separating(x, y));
    }
}
