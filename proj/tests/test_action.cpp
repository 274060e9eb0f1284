#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "peria/action.hpp"
#include "peria/cayley.hpp"
#include "peria/hyperplanes.hpp"
#include "fixtures.hpp"

using namespace peria;

namespace {

int vid(const CayleyBall& b, const char* w) {
    return b.require(parse_word(b.spec(), w));
}

Word wd(const CayleyBall& b, const char* w) {
    return parse_word(b.spec(), w);
}

std::vector<Word> all_words(const CayleyBall& b) {
    std::vector<Word> out;
    for (int v = 0; v < b.vertex_count(); ++v) out.push_back(b.word_of(v));
    return out;
}

std::set<std::string> keys(const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const auto& w : ws) out.insert(word_key(w));
    return out;
}

// Independent count of the offenders in the dihedral group of order 2m
// acting on its own 2m-cycle.  The left action consists of the m even
// rotations and m free reflections; any two distinct walls of the cycle
// cross on the cycle itself, so exactly the elements moving some wall are
// obstructed.  Walls are edge indices mod m; rotation by 2k shifts walls by
// 2k, a free reflection (odd axis c) sends wall w to c-1-w.
int dihedral_wall_movers(int m) {
    int count = 0;
    for (int k = 0; k < m; ++k) {
        int shift = (2 * k) % m;
        if (shift != 0) ++count;
    }
    for (int c = 1; c < 4 * m; c += 2) {
        if (c >= 2 * m) break;
        bool moved = false;
        for (int w = 0; w < m; ++w)
            if (((c - 1 - w) % m + m) % m != w) moved = true;
        if (moved) ++count;
    }
    return count;
}

// two involutions with a length-4 braid relation: dihedral of order 8
peria::PeriagroupSpec d8() {
    peria::PeriagroupSpec s;
    s.add_vertex("v", peria::FiniteGroupTable::cyclic(2), true);
    s.add_vertex("w", peria::FiniteGroupTable::cyclic(2), true);
    s.add_edge(0, 1, 4);
    return s;
}

} // namespace

TEST_CASE("hyperplane translates follow the left action") {
    auto spec = fx::f2();
    CayleyBall ball(&spec, 2);
    HyperplaneSet hs(&ball);
    int tri = -1, match = -1;
    for (int p = 0; p < hs.plane_count(); ++p)
        (hs.planes()[p].sector_count == 3 ? tri : match) = p;
    REQUIRE(tri >= 0);
    REQUIRE(match >= 0);

    auto tv = translate_plane(hs, wd(ball, "v:1"), tri);
    CHECK(tv.full);
    CHECK(tv.plane == tri);
    auto tm = translate_plane(hs, wd(ball, "v:1"), match);
    CHECK(tm.full);
    CHECK(tm.plane == match);

    auto fspec = fx::f3();
    CayleyBall fball(&fspec, 3);
    HyperplaneSet fhs(&fball);
    int at_e = fhs.plane_of_edge(vid(fball, "e"), vid(fball, "u:1"));
    auto moved = translate_plane(fhs, wd(fball, "v:1"), at_e);
    REQUIRE(moved.plane.has_value());
    CHECK(moved.full);
    CHECK(*moved.plane == fhs.plane_of_edge(vid(fball, "v:1"), vid(fball, "v:1.u:1")));
    CHECK(*moved.plane != at_e);

    // pushing the same class beyond the ball loses every edge
    auto lost = translate_plane(fhs, wd(fball, "v:1.u:1.v:1"), at_e);
    CHECK_FALSE(lost.full);
    CHECK_FALSE(lost.plane.has_value());
}

TEST_CASE("dihedral wall-permutation oracle") {
    CHECK(dihedral_wall_movers(3) == 5);
    // order 8: two offending rotations (shift 2) plus all four reflections
    CHECK(dihedral_wall_movers(4) == 6);
}

TEST_CASE("complete balls give decisive obstruction sets") {
    auto spec = fx::f1();
    CayleyBall ball(&spec, 3);
    REQUIRE(ball.complete());
    HyperplaneSet hs(&ball);
    auto obs = compute_obs(hs, all_words(ball));
    CHECK(obs.decisive());
    CHECK_FALSE(obs.clean());
    // every nontrivial element moves a wall of the hexagon onto a crossing one
    CHECK(static_cast<int>(obs.members().size()) == dihedral_wall_movers(3));
    for (const auto& m : obs.members()) CHECK_FALSE(m.empty());

    auto pspec = fx::f2();
    CayleyBall pball(&pspec, 2);
    REQUIRE(pball.complete());
    HyperplaneSet phs(&pball);
    auto pobs = compute_obs(phs, all_words(pball));
    CHECK(pobs.clean());
    CHECK(pobs.decisive());

    auto j = pobs.to_json(pspec);
    CHECK(j["violation_count"] == 0);
}

TEST_CASE("free products contribute no certified obstructions") {
    auto spec = fx::f3();
    CayleyBall ball(&spec, 4);
    HyperplaneSet hs(&ball);
    std::vector<Word> elems;
    for (int v = 0; v < ball.vertex_count(); ++v)
        if (ball.dist0(v) <= 2) elems.push_back(ball.word_of(v));
    auto obs = compute_obs(hs, elems);
    CHECK(obs.clean());
    CHECK(obs.members().empty());
}

TEST_CASE("the type split separates rotations from the coxeter part") {
    auto spec = fx::f4();
    CayleyBall ball(&spec, 4);
    HyperplaneSet hs(&ball);
    auto dec = decompose(hs);

    CHECK(dec.psi == std::vector<int>{1, 2});
    CHECK(dec.delta.size() == 6);
    CHECK(dec.peripheral.size() == 3);
    REQUIRE(dec.rot_generators.size() == 6);
    std::multiset<size_t> lens;
    for (const auto& g : dec.rot_generators) lens.insert(g.size());
    CHECK(lens == std::multiset<size_t>{1, 1, 3, 3, 5, 5});
    CHECK(dec.rot_closed);
    CHECK(dec.rot_elements.size() > dec.rot_generators.size());
    CHECK(dec.checks.ok());
    CHECK(dec.checks.axiom("peripheral-planes-are-product-type").checked == 3);
    CHECK(dec.checks.axiom("peripheral-carrier-meets-coxeter-part-in-coset").checked == 3);
    CHECK(dec.checks.axiom("rot-translates-into-coxeter-part").checked > 0);

    auto j = dec.to_json(spec);
    CHECK(j["peripheral_planes"].size() == 3);
}

TEST_CASE("type splits of the degenerate kinds") {
    // all-product: the coxeter part is the identity and rotations cover
    auto p = fx::f2();
    CayleyBall pball(&p, 2);
    HyperplaneSet phs(&pball);
    auto pdec = decompose(phs);
    CHECK(pdec.psi.empty());
    CHECK(pdec.delta == std::vector<int>{0});
    CHECK(pdec.peripheral.size() == 2);
    CHECK(pdec.rot_elements.size() == 6);
    CHECK(pdec.checks.ok());
    CHECK(pdec.checks.axiom("rot-translates-into-coxeter-part").checked == 6);

    // all-coxeter: no peripheral planes, trivial rotations
    auto c = fx::f5();
    CayleyBall cball(&c, 3);
    HyperplaneSet chs(&cball);
    auto cdec = decompose(chs);
    CHECK(cdec.psi.size() == 3);
    CHECK(cdec.delta.size() == cball.vertex_count());
    CHECK(cdec.peripheral.empty());
    CHECK(cdec.rot_elements.size() == 1);
    CHECK(cdec.checks.ok());
    CHECK(cdec.checks.axiom("rot-translates-into-coxeter-part").checked ==
          cball.vertex_count());
}

TEST_CASE("coxeter-part obstructions catch exactly the wall movers") {
    auto spec = fx::f4();
    auto cox = compute_coxobs(spec);
    REQUIRE(cox.supported);
    CHECK(cox.radius == 3);
    CHECK(cox.order == 6);
    CHECK(static_cast<int>(cox.members.size()) == dihedral_wall_movers(3));
    int walls = 0, cosets = 0;
    for (const auto& f : cox.family) (f.kind == "wall" ? walls : cosets)++;
    CHECK(walls == 3);
    CHECK(cosets == 13);

    // inverse-closed, identity-free
    CayleyBall cball(&cox.cox, cox.radius);
    auto mem = keys(cox.members);
    CHECK_FALSE(mem.count(word_key(Word{})));
    for (const auto& m : cox.members)
        CHECK(mem.count(word_key(cball.rewriter().inv(m))));

    // the braid-4 dihedral keeps its central rotation clean
    auto dspec = d8();
    auto dcox = compute_coxobs(dspec);
    REQUIRE(dcox.supported);
    CHECK(dcox.order == 8);
    CHECK(static_cast<int>(dcox.members.size()) == dihedral_wall_movers(4));
    CayleyBall dball(&dcox.cox, dcox.radius);
    Word center = parse_word(dcox.cox, "v:1.w:1.v:1.w:1");
    CHECK_FALSE(keys(dcox.members).count(word_key(dball.rewriter().normalize(center))));

    auto triv = compute_coxobs(fx::f2());
    CHECK(triv.supported);
    CHECK(triv.order == 1);
    CHECK(triv.members.empty());

    auto inf = compute_coxobs(fx::f5(), 4);
    CHECK_FALSE(inf.supported);
    CHECK_FALSE(inf.note.empty());
}

TEST_CASE("certified obstructions factor through rotations") {
    // pure coxeter case: rotations are trivial, so the obstruction sets agree
    auto spec = fx::f1();
    CayleyBall ball(&spec, 3);
    HyperplaneSet hs(&ball);
    auto dec = decompose(hs);
    CHECK(dec.peripheral.empty());
    CHECK(dec.rot_elements.size() == 1);
    auto obs = compute_obs(hs, all_words(ball));
    auto cox = compute_coxobs(spec);
    REQUIRE(cox.supported);
    std::vector<Word> lifted;
    for (const auto& m : cox.members) lifted.push_back(lift_letters(dec.psi, m));
    CHECK(keys(obs.members()) == keys(lifted));
    auto rep = check_obstruction_inclusion(hs, dec, obs, cox);
    CHECK(rep.ok());
    CHECK(rep.axiom("obstruction-factors-through-rotations").checked == 5);

    // mixed case: factor through the nontrivial rotation subgroup
    auto mspec = fx::f4();
    CayleyBall mball(&mspec, 4);
    HyperplaneSet mhs(&mball);
    auto mdec = decompose(mhs);
    auto mobs = compute_obs(mhs, all_words(mball));
    auto mcox = compute_coxobs(mspec);
    auto mrep = check_obstruction_inclusion(mhs, mdec, mobs, mcox);
    CHECK(mrep.ok());
    const auto& fac = mrep.axiom("obstruction-factors-through-rotations");
    CHECK(fac.checked + fac.skipped == static_cast<long>(mobs.members().size()));
}

TEST_CASE("maximal clean subgroups are extracted") {
    auto cox = compute_coxobs(fx::f4());
    auto H = find_conspicial_subgroup(cox);
    CHECK(H.order == 1);
    CHECK(H.group_order == 6);
    CHECK(H.subgroups_scanned == 6);
    REQUIRE(H.elements.size() == 1);
    CHECK(H.elements[0].empty());

    auto dcox = compute_coxobs(d8());
    auto dH = find_conspicial_subgroup(dcox);
    CHECK(dH.group_order == 8);
    CHECK(dH.subgroups_scanned == 10);
    REQUIRE(dH.order == 2);
    CayleyBall dball(&dcox.cox, dcox.radius);
    Word center = dball.rewriter().normalize(parse_word(dcox.cox, "v:1.w:1.v:1.w:1"));
    CHECK(keys(dH.elements).count(word_key(center)));

    auto triv = find_conspicial_subgroup(compute_coxobs(fx::f2()));
    CHECK(triv.order == 1);
    CHECK(triv.group_order == 1);
}

TEST_CASE("the obstruction-free part stays clean") {
    // braid-4 dihedral: the center survives and acts without obstruction
    auto spec = d8();
    CayleyBall ball(&spec, 4);
    REQUIRE(ball.complete());
    HyperplaneSet hs(&ball);
    auto dec = decompose(hs);
    auto cox = compute_coxobs(spec);
    auto H = find_conspicial_subgroup(cox);
    std::vector<Word> h_main;
    for (const auto& h : H.elements) h_main.push_back(lift_letters(dec.psi, h));
    auto pm = pi_minus_elements(ball, dec, h_main);
    CHECK(pm.size() == 2);
    auto obs = compute_obs(hs, pm);
    CHECK(obs.clean());
    CHECK(obs.decisive());

    // amalgam: the whole rotation subgroup stays visible and clean
    auto mspec = fx::f4();
    CayleyBall mball(&mspec, 4);
    HyperplaneSet mhs(&mball);
    auto mdec = decompose(mhs);
    auto mH = find_conspicial_subgroup(compute_coxobs(mspec));
    std::vector<Word> mh;
    for (const auto& h : mH.elements) mh.push_back(lift_letters(mdec.psi, h));
    auto mpm = pi_minus_elements(mball, mdec, mh);
    CHECK(mpm.size() > 1);
    auto mobs = compute_obs(mhs, mpm);
    CHECK(mobs.clean());
}
