#pragma once

#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "peria/errors.hpp"
#include "peria/presentation.hpp"
#include "peria/word.hpp"

namespace peria {

// Elementary moves on words:
//   merge    - combine two adjacent letters of the same vertex group
//              (dropping the pair when the product is the identity),
//   swap     - exchange adjacent letters across a label-2 edge,
//   shuffle  - replace an alternating block <a,b>^k by <b,a>^k across an
//              edge of label k > 2 (both groups have order two there).
// normalize() explores the move closure breadth-first, greedily taking any
// length-reducing merge it encounters, and returns the shortlex-least word
// of the final closure.  The closure exploration is capped.
class Rewriter {
public:
    explicit Rewriter(const PeriagroupSpec* spec, size_t cap = kDefaultCap)
        : spec_(spec), cap_(cap) {}

    static constexpr size_t kDefaultCap = 200000;

    const PeriagroupSpec& spec() const { return *spec_; }
    size_t cap() const { return cap_; }
    void set_cap(size_t cap) { cap_ = cap; }

    // All words reachable from w by exactly one move.  Deduplicated,
    // deterministic order (position, then move kind).
    std::vector<Word> apply_moves(const Word& w) const {
        std::vector<Word> out;
        std::unordered_set<std::string> seen;
        auto push = [&](Word&& x) {
            auto k = word_key(x);
            if (seen.insert(k).second) out.push_back(std::move(x));
        };
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            const Letter &a = w[i], &b = w[i + 1];
            if (a.vertex == b.vertex) {
                int p = spec_->group(a.vertex).mul(a.elem, b.elem);
                Word x(w.begin(), w.begin() + i);
                if (p != 0) x.push_back(Letter{a.vertex, p});
                x.insert(x.end(), w.begin() + i + 2, w.end());
                push(std::move(x));
            } else if (spec_->label(a.vertex, b.vertex) == 2) {
                Word x = w;
                std::swap(x[i], x[i + 1]);
                push(std::move(x));
            }
        }
        for (const auto& e : spec_->edges()) {
            if (e.label <= 2) continue;
            const size_t lam = static_cast<size_t>(e.label);
            if (w.size() < lam) continue;
            for (size_t i = 0; i + lam <= w.size(); ++i) {
                // check for an alternating block starting with either endpoint
                for (int start : {e.a, e.b}) {
                    int other = (start == e.a) ? e.b : e.a;
                    bool ok = true;
                    for (size_t j = 0; j < lam; ++j) {
                        int want = (j % 2 == 0) ? start : other;
                        if (w[i + j].vertex != want) { ok = false; break; }
                    }
                    if (!ok) continue;
                    Word x = w;
                    for (size_t j = 0; j < lam; ++j)
                        x[i + j].vertex = (j % 2 == 0) ? other : start;
                    push(std::move(x));
                }
            }
        }
        return out;
    }

    Word normalize(const Word& input) const {
        Word w = fold(input);
        if (auto it = memo_.find(word_key(w)); it != memo_.end()) return it->second;

        size_t explored = 0;
        std::unordered_map<std::string, Word> closure;
        for (;;) {
            closure.clear();
            closure.emplace(word_key(w), w);
            std::deque<const Word*> queue{&closure.begin()->second};
            const Word* reduced = nullptr;
            Word reduced_store;
            while (!queue.empty() && !reduced) {
                const Word& x = *queue.front();
                queue.pop_front();
                for (Word& y : apply_moves(x)) {
                    if (y.size() < x.size()) {
                        // greedy: restart from the shortlex-least reduction seen at this word
                        Word folded = fold(y);
                        if (!reduced || shortlex_less(folded, reduced_store)) {
                            reduced_store = std::move(folded);
                            reduced = &reduced_store;
                        }
                        continue;
                    }
                    auto k = word_key(y);
                    auto [it, fresh] = closure.emplace(std::move(k), std::move(y));
                    if (fresh) {
                        if (++explored > cap_)
                            throw CapExceeded("word move closure exceeded cap (" +
                                              std::to_string(cap_) + ")");
                        queue.push_back(&it->second);
                    }
                }
            }
            if (!reduced) break;
            w = reduced_store;
            if (auto it = memo_.find(word_key(w)); it != memo_.end()) {
                const Word nf = it->second;
                for (const auto& [k, v] : closure) memo_.emplace(k, nf);
                return nf;
            }
        }

        const Word* best = &w;
        for (const auto& [k, v] : closure)
            if (shortlex_less(v, *best)) best = &v;
        Word nf = *best;
        for (const auto& [k, v] : closure) memo_.emplace(k, nf);
        memo_.emplace(word_key(fold(input)), nf);
        return nf;
    }

    bool equal(const Word& a, const Word& b) const { return normalize(a) == normalize(b); }

    bool is_identity(const Word& a) const { return normalize(a).empty(); }

    Word mul(const Word& a, const Word& b) const { return normalize(word_concat(a, b)); }

    Word inv(const Word& a) const { return normalize(word_inverse(*spec_, a)); }

    // Left-to-right fold of adjacent same-vertex merges; a cheap prepass
    // that keeps closures small.
    Word fold(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (const Letter& l : w) {
            Letter cur = l;
            bool drop = false;
            while (!out.empty() && out.back().vertex == cur.vertex) {
                int p = spec_->group(cur.vertex).mul(out.back().elem, cur.elem);
                out.pop_back();
                if (p == 0) { drop = true; break; }
                cur.elem = p;
            }
            if (!drop) out.push_back(cur);
        }
        return out;
    }

private:
    const PeriagroupSpec* spec_;
    size_t cap_;
    mutable std::unordered_map<std::string, Word> memo_;
};

} // namespace peria
