#pragma once

#include <deque>
#include <numeric>
#include <vector>

#include "peria/errors.hpp"
#include "peria/presentation.hpp"
#include "peria/word.hpp"

namespace peria {

// Independent brute-force oracle for the group defined by a presentation:
// a coset enumeration over the full relator set (vertex group tables plus
// the braid-style edge relations).  On success it yields the regular action
// of every generator, giving an equality oracle and reference Cayley graph
// that share no code with the word-rewriting engine.
struct GroupEnumeration {
    bool complete = false;
    int order = 0;                      // cosets found (group order when complete)
    std::vector<Letter> gens;           // generator alphabet, fixed order
    std::vector<int> gen_inverse;       // index of each generator's inverse
    std::vector<std::vector<int>> act;  // complete only: act[c][g] = c * gen g
    std::vector<Word> element_words;    // complete only: BFS-first word per coset

    int gen_index(const Letter& l) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == l) return static_cast<int>(i);
        throw InvariantViolation("letter is not a generator");
    }

    // Coset reached from the identity by w.  Requires completeness.
    int trace(const Word& w) const {
        int c = 0;
        for (const Letter& l : w) c = act[c][gen_index(l)];
        return c;
    }

    bool equal(const Word& a, const Word& b) const { return trace(a) == trace(b); }
};

namespace detail {

class CosetTable {
public:
    CosetTable(int ngens, size_t cap) : ngens_(ngens), cap_(cap) { alloc(); }

    bool overflowed = false;

    int find(int c) {
        while (parent_[c] != c) {
            parent_[c] = parent_[parent_[c]];
            c = parent_[c];
        }
        return c;
    }

    int get(int c, int g) const { return tab_[static_cast<size_t>(c) * ngens_ + g]; }
    void set(int c, int g, int v) { tab_[static_cast<size_t>(c) * ngens_ + g] = v; }

    // Fresh coset reached from c by g; returns -1 on overflow.
    int define(int c, int g, const std::vector<int>& inv) {
        if (count_ >= cap_) { overflowed = true; return -1; }
        int n = static_cast<int>(count_++);
        parent_.push_back(n);
        while (static_cast<size_t>(n + 1) * ngens_ > tab_.size()) grow();
        set(c, g, n);
        set(n, inv[g], c);
        return n;
    }

    size_t defined_count() const { return count_; }

    bool live(int c) { return find(c) == c; }

    // Merge the equivalence classes of a and b, rerouting table entries.
    void coincide(int a, int b, const std::vector<int>& inv) {
        std::deque<int> q;
        merge(a, b, q);
        while (!q.empty()) {
            int dead = q.front();
            q.pop_front();
            for (int g = 0; g < ngens_; ++g) {
                int d = get(dead, g);
                if (d < 0) continue;
                set(dead, g, -1);
                if (get(d, inv[g]) == dead) set(d, inv[g], -1);
                int mu = find(dead), nu = find(d);
                int ex = get(mu, g);
                if (ex >= 0) {
                    merge(nu, find(ex), q);
                } else {
                    int ex2 = get(nu, inv[g]);
                    if (ex2 >= 0) merge(mu, find(ex2), q);
                    else { set(mu, g, nu); set(nu, inv[g], mu); }
                }
            }
        }
    }

private:
    void merge(int a, int b, std::deque<int>& q) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        q.push_back(b);
    }

    void alloc() {
        parent_.resize(1, 0);
        tab_.assign(ngens_, -1);
        count_ = 1;
    }

    void grow() {
        tab_.resize(tab_.size() + static_cast<size_t>(ngens_) * 64, -1);
    }

    std::vector<int> parent_;
    std::vector<int> tab_;
    int ngens_;
    size_t cap_;
    size_t count_ = 0;
};

} // namespace detail

inline GroupEnumeration enumerate_group(const PeriagroupSpec& spec, size_t cap = 100000) {
    GroupEnumeration out;
    // generator alphabet: nontrivial elements in (vertex, elem) order
    for (int v = 0; v < spec.vertex_count(); ++v)
        for (int e = 1; e < spec.group(v).order(); ++e)
            out.gens.push_back(Letter{v, e});
    const int ngens = static_cast<int>(out.gens.size());
    out.gen_inverse.resize(ngens);
    auto gidx = [&](int v, int e) {
        for (int i = 0; i < ngens; ++i)
            if (out.gens[i].vertex == v && out.gens[i].elem == e) return i;
        throw InvariantViolation("generator lookup failed");
    };
    for (int i = 0; i < ngens; ++i)
        out.gen_inverse[i] = gidx(out.gens[i].vertex, spec.group(out.gens[i].vertex).inv(out.gens[i].elem));

    // relators over generator indices
    std::vector<std::vector<int>> relators;
    for (int v = 0; v < spec.vertex_count(); ++v) {
        const auto& G = spec.group(v);
        for (int a = 1; a < G.order(); ++a)
            for (int b = 1; b < G.order(); ++b) {
                std::vector<int> r{gidx(v, a), gidx(v, b)};
                int p = G.mul(a, b);
                if (p != 0) r.push_back(gidx(v, G.inv(p)));
                relators.push_back(std::move(r));
            }
    }
    for (const auto& e : spec.edges()) {
        const auto& GA = spec.group(e.a);
        const auto& GB = spec.group(e.b);
        for (int a = 1; a < GA.order(); ++a)
            for (int b = 1; b < GB.order(); ++b) {
                std::vector<int> left, right;
                for (int j = 0; j < e.label; ++j) {
                    left.push_back(j % 2 == 0 ? gidx(e.a, a) : gidx(e.b, b));
                    right.push_back(j % 2 == 0 ? gidx(e.b, b) : gidx(e.a, a));
                }
                std::vector<int> r = left;
                for (auto it = right.rbegin(); it != right.rend(); ++it)
                    r.push_back(out.gen_inverse[*it]);
                relators.push_back(std::move(r));
            }
    }

    detail::CosetTable T(ngens, cap);
    const auto& inv = out.gen_inverse;

    auto scan_and_fill = [&](int alpha, const std::vector<int>& w) {
        int f = alpha, b = alpha;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && T.get(f, w[i]) >= 0) f = T.get(f, w[i++]);
            if (i > j) {
                if (f != b) T.coincide(f, b, inv);
                return;
            }
            while (j >= i && T.get(b, inv[w[j]]) >= 0) b = T.get(b, inv[w[j--]]);
            if (j < i) {
                T.coincide(f, b, inv);
                return;
            }
            if (j == i) {
                T.set(f, w[i], b);
                T.set(b, inv[w[i]], f);
                return;
            }
            if (T.define(f, w[i], inv) < 0) return; // overflow
        }
    };

    for (size_t alpha = 0; alpha < T.defined_count(); ++alpha) {
        if (!T.live(static_cast<int>(alpha))) continue;
        for (const auto& r : relators) {
            scan_and_fill(static_cast<int>(alpha), r);
            if (T.overflowed) break;
            if (!T.live(static_cast<int>(alpha))) break;
        }
        if (T.overflowed) break;
        if (!T.live(static_cast<int>(alpha))) continue;
        for (int g = 0; g < ngens; ++g) {
            int a2 = T.find(static_cast<int>(alpha));
            if (T.get(a2, g) < 0)
                if (T.define(a2, g, inv) < 0) break;
        }
        if (T.overflowed) break;
    }

    // collect live cosets
    std::vector<int> live;
    for (size_t c = 0; c < T.defined_count(); ++c)
        if (T.live(static_cast<int>(c))) live.push_back(static_cast<int>(c));
    out.order = static_cast<int>(live.size());
    if (T.overflowed) {
        out.complete = false;
        return out;
    }
    out.complete = true;

    std::vector<int> renum(T.defined_count(), -1);
    for (size_t i = 0; i < live.size(); ++i) renum[live[i]] = static_cast<int>(i);
    out.act.assign(live.size(), std::vector<int>(ngens, -1));
    for (size_t i = 0; i < live.size(); ++i)
        for (int g = 0; g < ngens; ++g) {
            int t = T.get(live[i], g);
            if (t < 0) throw InvariantViolation("closed coset table has a hole");
            out.act[i][g] = renum[T.find(t)];
        }

    // BFS-first words from the identity coset, generators in alphabet order
    out.element_words.assign(live.size(), Word{});
    std::vector<bool> seen(live.size(), false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        for (int g = 0; g < ngens; ++g) {
            int t = out.act[c][g];
            if (!seen[t]) {
                seen[t] = true;
                out.element_words[t] = out.element_words[c];
                out.element_words[t].push_back(out.gens[g]);
                q.push_back(t);
            }
        }
    }
    return out;
}

} // namespace peria
