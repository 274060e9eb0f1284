#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "peria/errors.hpp"
#include "peria/group_table.hpp"

namespace peria {

enum class VertexType { GP, C };

struct VertexDecl {
    std::string name;
    FiniteGroupTable group;
    bool cyclic_form = false; // how to re-emit this group in files
};

struct EdgeDecl {
    int a = 0, b = 0; // vertex indices, a < b
    int label = 2;
};

// A labelled defining graph with one finite group per vertex.  Edges carry
// integer labels >= 2; a label > 2 requires both endpoint groups to have
// order exactly two.
class PeriagroupSpec {
public:
    PeriagroupSpec() = default;

    int add_vertex(const std::string& name, FiniteGroupTable g, bool cyclic_form = false) {
        if (name.empty()) throw ValidationError("vertex name must be nonempty");
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw ValidationError("vertex name has illegal character: " + name);
        if (index_of(name)) throw ValidationError("duplicate vertex name: " + name);
        if (g.order() < 2) throw ValidationError("vertex group must be nontrivial: " + name);
        if (g.order() > 255) throw ValidationError("vertex group too large (max order 255)");
        vertices_.push_back(VertexDecl{name, std::move(g), cyclic_form});
        return static_cast<int>(vertices_.size()) - 1;
    }

    void add_edge(const std::string& na, const std::string& nb, int label) {
        auto ia = index_of(na), ib = index_of(nb);
        if (!ia || !ib) throw ValidationError("edge references unknown vertex");
        add_edge(*ia, *ib, label);
    }

    void add_edge(int ia, int ib, int label) {
        if (ia == ib) throw ValidationError("edge endpoints must be distinct");
        if (label < 2) throw ValidationError("edge label must be >= 2");
        int a = std::min(ia, ib), b = std::max(ia, ib);
        for (const auto& e : edges_)
            if (e.a == a && e.b == b) throw ValidationError("duplicate edge");
        if (label > 2 && (group(a).order() != 2 || group(b).order() != 2))
            throw ValidationError("label > 2 requires both endpoint groups of order two");
        edges_.push_back(EdgeDecl{a, b, label});
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<VertexDecl>& vertices() const { return vertices_; }
    const std::vector<EdgeDecl>& edges() const { return edges_; }
    const std::string& name(int v) const { return vertices_[v].name; }
    const FiniteGroupTable& group(int v) const { return vertices_[v].group; }

    std::optional<int> index_of(const std::string& name) const {
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].name == name) return static_cast<int>(i);
        return std::nullopt;
    }

    // 0 if not adjacent, else the edge label.
    int label(int a, int b) const {
        int x = std::min(a, b), y = std::max(a, b);
        for (const auto& e : edges_)
            if (e.a == x && e.b == y) return e.label;
        return 0;
    }

    bool adjacent(int a, int b) const { return label(a, b) != 0; }

    std::vector<int> neighbours(int v) const {
        std::vector<int> out;
        for (const auto& e : edges_) {
            if (e.a == v) out.push_back(e.b);
            if (e.b == v) out.push_back(e.a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Largest edge label, or 2 when there are no edges.  Used for ball
    // trust-margin bookkeeping.
    int max_label() const {
        int m = 2;
        for (const auto& e : edges_) m = std::max(m, e.label);
        return m;
    }

    bool has_edges() const { return !edges_.empty(); }

    VertexType vertex_type(int v) const {
        for (const auto& e : edges_)
            if ((e.a == v || e.b == v) && e.label > 2) return VertexType::C;
        return VertexType::GP;
    }

    // Indices of all vertices carrying some label > 2, in declaration order.
    std::vector<int> type_c_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (vertex_type(v) == VertexType::C) out.push_back(v);
        return out;
    }

    // Restriction to a vertex subset (induced edges), preserving order and
    // group tables.  Used for the Coxeter-part subpresentation.
    PeriagroupSpec restrict(const std::vector<int>& keep) const {
        PeriagroupSpec out;
        std::vector<int> newidx(vertex_count(), -1);
        for (int v : keep) {
            newidx[v] = out.add_vertex(vertices_[v].name, vertices_[v].group, vertices_[v].cyclic_form);
        }
        for (const auto& e : edges_)
            if (newidx[e.a] >= 0 && newidx[e.b] >= 0)
                out.add_edge(newidx[e.a], newidx[e.b], e.label);
        return out;
    }

    std::string serialize() const {
        std::ostringstream os;
        for (const auto& v : vertices_) {
            if (v.cyclic_form) {
                os << "vertex " << v.name << " cyclic " << v.group.order() << "\n";
            } else {
                os << "vertex " << v.name << " table " << v.group.order() << " [";
                int n = v.group.order();
                for (int r = 0; r < n; ++r) {
                    if (r) os << "; ";
                    for (int c = 0; c < n; ++c) {
                        if (c) os << " ";
                        os << v.group.mul(r, c);
                    }
                }
                os << "]\n";
            }
        }
        std::vector<EdgeDecl> es = edges_;
        std::sort(es.begin(), es.end(), [](const EdgeDecl& x, const EdgeDecl& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
        for (const auto& e : es)
            os << "edge " << vertices_[e.a].name << " " << vertices_[e.b].name << " label " << e.label << "\n";
        return os.str();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["vertices"] = nlohmann::ordered_json::array();
        for (const auto& v : vertices_) {
            nlohmann::ordered_json jv;
            jv["name"] = v.name;
            jv["order"] = v.group.order();
            jv["cyclic"] = v.cyclic_form;
            if (!v.cyclic_form) jv["table"] = v.group.raw_table();
            jv["type"] = vertex_type(*index_of(v.name)) == VertexType::GP ? "GP" : "C";
            j["vertices"].push_back(jv);
        }
        j["edges"] = nlohmann::ordered_json::array();
        for (const auto& e : edges_) {
            nlohmann::ordered_json je;
            je["a"] = vertices_[e.a].name;
            je["b"] = vertices_[e.b].name;
            je["label"] = e.label;
            j["edges"].push_back(je);
        }
        return j;
    }

private:
    std::vector<VertexDecl> vertices_;
    std::vector<EdgeDecl> edges_;
};

namespace detail {

inline std::vector<std::string> tokenize_line(const std::string& line) {
    std::string s;
    for (char c : line) {
        if (c == '#') break; // comment to end of line
        if (c == '[' || c == ']' || c == ';') { s += ' '; s += c; s += ' '; }
        else s += c;
    }
    std::vector<std::string> toks;
    std::istringstream is(s);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

inline int parse_int(const std::string& t, const std::string& what, int lineno) {
    try {
        size_t pos = 0;
        int v = std::stoi(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": expected integer for " + what + ", got '" + t + "'");
    }
}

} // namespace detail

// Parses the presentation file format:
//   vertex NAME cyclic N
//   vertex NAME table N [r00 r01 ...; r10 r11 ...; ...]
//   edge A B label L
// '#' starts a comment; blank lines are ignored.
inline PeriagroupSpec parse_presentation(std::istream& in) {
    PeriagroupSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::tokenize_line(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        auto fail = [&](const std::string& m) -> ParseError {
            return ParseError("line " + std::to_string(lineno) + ": " + m);
        };
        try {
            if (kw == "vertex") {
                if (toks.size() < 4) throw fail("vertex line too short");
                const std::string& nm = toks[1];
                if (toks[2] == "cyclic") {
                    if (toks.size() != 4) throw fail("malformed cyclic vertex line");
                    int n = detail::parse_int(toks[3], "group order", lineno);
                    spec.add_vertex(nm, FiniteGroupTable::cyclic(n), true);
                } else if (toks[2] == "table") {
                    int n = detail::parse_int(toks[3], "group order", lineno);
                    size_t i = 4;
                    if (i >= toks.size() || toks[i] != "[") throw fail("expected '[' after table order");
                    ++i;
                    std::vector<int> flat;
                    int rows = 0, rowlen = 0;
                    while (i < toks.size() && toks[i] != "]") {
                        if (toks[i] == ";") {
                            if (rowlen != n) throw fail("table row has wrong length");
                            ++rows; rowlen = 0; ++i; continue;
                        }
                        flat.push_back(detail::parse_int(toks[i], "table entry", lineno));
                        ++rowlen; ++i;
                    }
                    if (i >= toks.size()) throw fail("unterminated table");
                    if (rowlen != n) throw fail("table row has wrong length");
                    ++rows;
                    if (i + 1 != toks.size()) throw fail("trailing tokens after table");
                    if (rows != n) throw fail("table has wrong number of rows");
                    spec.add_vertex(nm, FiniteGroupTable(n, std::move(flat)), false);
                } else {
                    throw fail("unknown vertex kind '" + toks[2] + "'");
                }
            } else if (kw == "edge") {
                if (toks.size() != 5 || toks[3] != "label") throw fail("malformed edge line");
                int l = detail::parse_int(toks[4], "edge label", lineno);
                spec.add_edge(toks[1], toks[2], l);
            } else {
                throw fail("unknown keyword '" + kw + "'");
            }
        } catch (const ValidationError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return spec;
}

inline PeriagroupSpec parse_presentation(const std::string& text) {
    std::istringstream is(text);
    return parse_presentation(is);
}

// Adds the two auxiliary order-two vertices used for double-coset
// separation: one joined (label 2) to every vertex of phi, one joined to
// every vertex of psi, and joined to each other.  Returns the new spec plus
// the indices of the added vertices.
struct AugmentedSpec {
    PeriagroupSpec spec;
    int u_phi = -1;
    int u_psi = -1;
};

inline AugmentedSpec augment_double_coset(const PeriagroupSpec& base,
                                          const std::vector<int>& phi,
                                          const std::vector<int>& psi) {
    for (int v : phi)
        if (v < 0 || v >= base.vertex_count()) throw ValidationError("phi vertex out of range");
    for (int v : psi)
        if (v < 0 || v >= base.vertex_count()) throw ValidationError("psi vertex out of range");
    AugmentedSpec out;
    out.spec = base;
    auto fresh = [&](std::string stem) {
        while (out.spec.index_of(stem)) stem += "_";
        return stem;
    };
    out.u_phi = out.spec.add_vertex(fresh("uPhi"), FiniteGroupTable::cyclic(2), true);
    out.u_psi = out.spec.add_vertex(fresh("uPsi"), FiniteGroupTable::cyclic(2), true);
    for (int v : phi) out.spec.add_edge(v, out.u_phi, 2);
    for (int v : psi) out.spec.add_edge(v, out.u_psi, 2);
    out.spec.add_edge(out.u_phi, out.u_psi, 2);
    return out;
}

} // namespace peria
