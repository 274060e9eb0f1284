#pragma once

#include <compare>
#include <string>
#include <vector>

#include "peria/errors.hpp"
#include "peria/presentation.hpp"

namespace peria {

// One syllable of a word: a nontrivial element of one vertex group.
struct Letter {
    int vertex = 0; // index into the spec's vertex list
    int elem = 0;   // element id, 1 .. order-1

    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Shortlex: first by length, then lexicographically by (vertex, elem).
inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Compact byte key for hashing; valid because vertex count and group orders
// are both capped at 255.
inline std::string word_key(const Word& w) {
    std::string k;
    k.reserve(w.size() * 2);
    for (const Letter& l : w) {
        k.push_back(static_cast<char>(l.vertex + 1));
        k.push_back(static_cast<char>(l.elem));
    }
    return k;
}

// Format: dot-separated "name:elem" syllables; the empty word prints as "e".
inline std::string format_word(const PeriagroupSpec& spec, const Word& w) {
    if (w.empty()) return "e";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += spec.name(w[i].vertex);
        s += ':';
        s += std::to_string(w[i].elem);
    }
    return s;
}

inline Word parse_word(const PeriagroupSpec& spec, const std::string& text) {
    if (text == "e" || text.empty()) return {};
    Word w;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t dot = text.find('.', pos);
        std::string syl = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        size_t colon = syl.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= syl.size())
            throw ParseError("malformed syllable '" + syl + "' in word '" + text + "'");
        std::string nm = syl.substr(0, colon);
        auto vi = spec.index_of(nm);
        if (!vi) throw ParseError("unknown vertex '" + nm + "' in word '" + text + "'");
        int e;
        try {
            size_t used = 0;
            e = std::stoi(syl.substr(colon + 1), &used);
            if (used != syl.size() - colon - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("malformed element id in syllable '" + syl + "'");
        }
        if (e < 1 || e >= spec.group(*vi).order())
            throw ParseError("element id out of range in syllable '" + syl + "'");
        w.push_back(Letter{*vi, e});
        if (dot == std::string::npos) break;
        pos = dot + 1;
        if (pos == text.size()) throw ParseError("trailing '.' in word '" + text + "'");
    }
    return w;
}

// Formal inverse: reverse the letters and invert each one.
inline Word word_inverse(const PeriagroupSpec& spec, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(Letter{it->vertex, spec.group(it->vertex).inv(it->elem)});
    return out;
}

inline Word word_concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace peria
