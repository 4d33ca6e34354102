#pragma once

#include "schreier/finset.hpp"
#include "schreier/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace schreier {

// Finitely supported rational sequences; zero entries are never stored.
struct sparse_vec {
    std::map<int, rat> entries;

    void set(int coord, const rat& v) {
        if (coord < 1) throw std::domain_error("sparse_vec coordinates must be positive");
        if (v == 0)
            entries.erase(coord);
        else
            entries[coord] = v;
    }
    rat at(int coord) const {
        auto it = entries.find(coord);
        return it == entries.end() ? rat(0) : it->second;
    }
    bool is_zero() const { return entries.empty(); }

    sparse_vec& operator+=(const sparse_vec& o) {
        for (const auto& [c, v] : o.entries) set(c, at(c) + v);
        return *this;
    }
    sparse_vec& operator-=(const sparse_vec& o) {
        for (const auto& [c, v] : o.entries) set(c, at(c) - v);
        return *this;
    }
    sparse_vec& operator*=(const rat& s) {
        if (s == 0) {
            entries.clear();
            return *this;
        }
        for (auto& [c, v] : entries) v *= s;
        return *this;
    }
    friend sparse_vec operator+(sparse_vec a, const sparse_vec& b) { return a += b; }
    friend sparse_vec operator-(sparse_vec a, const sparse_vec& b) { return a -= b; }
    friend sparse_vec operator*(sparse_vec a, const rat& s) { return a *= s; }
    bool operator==(const sparse_vec& o) const { return entries == o.entries; }

    static sparse_vec unit(int coord) {
        sparse_vec v;
        v.set(coord, rat(1));
        return v;
    }
};

// dot product (the pairing f(x) for a functional f given by coordinates)
inline rat pairing(const sparse_vec& f, const sparse_vec& x) {
    rat s(0);
    for (const auto& [c, v] : f.entries) s += v * x.at(c);
    return s;
}

enum class norm_kind { l1, sup, summing };

inline norm_kind parse_norm_kind(const std::string& s) {
    if (s == "l1") return norm_kind::l1;
    if (s == "sup") return norm_kind::sup;
    if (s == "summing") return norm_kind::summing;
    throw std::domain_error("unknown norm kind: '" + s + "'");
}

inline rat norm_l1(const sparse_vec& v) {
    rat s(0);
    for (const auto& [c, x] : v.entries) s += rat_abs(x);
    return s;
}

inline rat norm_sup(const sparse_vec& v) {
    rat s(0);
    for (const auto& [c, x] : v.entries)
        if (rat_abs(x) > s) s = rat_abs(x);
    return s;
}

// sup over k of |sum of the first k coordinates|; partial sums only change at
// support points, so scanning those suffices.
inline rat norm_summing(const sparse_vec& v) {
    rat best(0), partial(0);
    for (const auto& [c, x] : v.entries) {
        partial += x;
        if (rat_abs(partial) > best) best = rat_abs(partial);
    }
    return best;
}

inline rat norm(const sparse_vec& v, norm_kind kind) {
    switch (kind) {
        case norm_kind::l1: return norm_l1(v);
        case norm_kind::sup: return norm_sup(v);
        case norm_kind::summing: return norm_summing(v);
    }
    throw std::domain_error("unknown norm kind");
}

// --- spread coding ------------------------------------------------------------

// Assigns to every A within {1..bound} a spread code(A) with three properties:
// code(A) dominates A coordinatewise, A is an initial segment of B exactly
// when code(A) is one of code(B), and codes of incomparable sets have
// disjoint tails beyond their common part.  Built by walking all subsets in
// colex order with a running counter g: code(A) = code(A') u {g(A)}, where
// g(A) = max(counter so far, max A) + 1 is globally injective.  The whole
// table is a function of the bound alone, so runs are reproducible.
class spread_codec {
public:
    explicit spread_codec(int bound) : bound_(bound) {
        if (bound < 0 || bound > 22) throw std::domain_error("spread_codec bound out of range");
        g_.assign(std::size_t(1) << bound, 0);
        int counter = 0;
        for (unsigned long mask = 1; mask < (1ul << bound); ++mask) {
            int top = 0;
            for (int i = 0; i < bound; ++i)
                if (mask & (1ul << i)) top = i + 1;
            counter = std::max(counter, top) + 1;
            g_[mask] = counter;
        }
    }

    int bound() const { return bound_; }

    // code(A) = code(A without its maximum) u {g(A)}, materialized by walking
    // the prefix chain of A
    fin_set encode(const fin_set& A) const {
        fin_set coded;
        unsigned long mask = 0;
        for (int x : A.elems) {
            if (x > bound_) throw std::domain_error("spread_codec: element beyond bound in " + A.str());
            mask |= 1ul << (x - 1);
            coded.elems.push_back(g_[mask]);
        }
        coded.validate();
        return coded;
    }

private:
    int bound_;
    std::vector<int> g_;  // per prefix mask, the fresh top element of its code
};

// Biorthogonal pair of the coded tree: z_A sums unit vectors over code(A),
// zstar_A is the unit functional at max(code(A)).  Their pairing is exactly
// the indicator of "A is an initial segment of B".
struct biorth_pair {
    sparse_vec z, zstar;
};

inline biorth_pair biorth_tree(const spread_codec& codec, const fin_set& A) {
    biorth_pair p;
    fin_set coded = codec.encode(A);
    for (int c : coded.elems) p.z.set(c, rat(1));
    if (!A.empty()) p.zstar.set(coded.max(), rat(1));
    return p;
}

}  // namespace schreier
