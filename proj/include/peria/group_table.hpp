#pragma once

#include <vector>
#include <string>

#include "peria/errors.hpp"

namespace peria {

// Finite group given by its full multiplication table.  Element 0 is the
// identity.  Tables are validated on construction: identity row/column,
// associativity, and existence of inverses (which also forces each row and
// column to be a permutation).
class FiniteGroupTable {
public:
    FiniteGroupTable() = default;

    FiniteGroupTable(int order, std::vector<int> table) : n_(order), mul_(std::move(table)) {
        validate();
        build_inverses();
    }

    static FiniteGroupTable cyclic(int n) {
        if (n < 1) throw ValidationError("cyclic group order must be >= 1");
        std::vector<int> t(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = (a + b) % n;
        return FiniteGroupTable(n, std::move(t));
    }

    int order() const { return n_; }

    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }

    int inv(int a) const { return inv_[a]; }

    // Smallest k >= 1 with a^k = 1.
    int element_order(int a) const {
        int k = 1, x = a;
        while (x != 0) { x = mul(x, a); ++k; }
        return k;
    }

    int exponent() const {
        long long e = 1;
        for (int a = 1; a < n_; ++a) e = lcm_(e, element_order(a));
        return static_cast<int>(e);
    }

    bool operator==(const FiniteGroupTable& o) const { return n_ == o.n_ && mul_ == o.mul_; }

    const std::vector<int>& raw_table() const { return mul_; }

private:
    static long long lcm_(long long a, long long b) {
        long long g = a, h = b;
        while (h) { long long t = g % h; g = h; h = t; }
        return a / g * b;
    }

    void validate() const {
        if (n_ < 1) throw ValidationError("group order must be >= 1");
        if (mul_.size() != static_cast<size_t>(n_) * n_)
            throw ValidationError("multiplication table has wrong size");
        for (int v : mul_)
            if (v < 0 || v >= n_) throw ValidationError("table entry out of range");
        for (int a = 0; a < n_; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a)
                throw ValidationError("element 0 is not an identity");
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ValidationError("multiplication table is not associative");
    }

    void build_inverses() {
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == 0 && mul(b, a) == 0) { inv_[a] = b; break; }
            if (inv_[a] < 0) throw ValidationError("element without inverse");
        }
    }

    int n_ = 1;
    std::vector<int> mul_{0};
    std::vector<int> inv_{0};
};

} // namespace peria
