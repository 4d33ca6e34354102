#pragma once

#include "schreier/family.hpp"
#include "schreier/rational.hpp"

#include <map>
#include <vector>

namespace schreier {

// Repeated-average coefficients.  zeta(a, A) is the weight that the repeated
// average of complexity a places on max(A), for any maximal extension of A;
// it does not depend on the chosen extension, which justifies computing it
// from A alone:
//   zeta(0, {n})   = 1
//   zeta(g+1, A)   = zeta(g, last greedy block of A) / min(A)
//   zeta(a, A)     = zeta(lambda(a, min A), A)          (a limit)
//   zeta(a, {})    = 0
// Levels with an infinite head h and finite part k contract through the
// product law zeta(h+k, A) = zeta(k, block minima) * zeta(h, last block),
// mirroring the depth contraction used for membership.
rat zeta(const ordinal& a, const fin_set& A);

inline rat zeta(const ordinal& a, const fin_set& A) {
    if (A.empty()) return rat(0);
    if (!is_member(a, A)) throw std::domain_error("zeta: set is not a member");
    if (a.is_zero()) return rat(1);
    static detail::ord_set_cache<rat> cache;
    if (auto hit = cache.find(a, A)) return *hit;
    ordinal lvl = detail::collapse_limit(a, A.min());
    rat result;
    if (lvl.is_finite()) {
        ordinal g = detail::drop_one_unit(lvl);
        auto blocks = greedy_blocks(g, A);
        result = zeta(g, blocks.back()) / A.min();
    } else {
        auto [head, k] = detail::peel_finite(lvl);
        auto blocks = greedy_blocks(head, A);
        fin_set minima;
        for (const auto& b : blocks) minima.elems.push_back(b.min());
        result = zeta(ordinal::from_int(k), minima) * zeta(head, blocks.back());
    }
    cache.insert(a, A, result);
    return result;
}

// The probability vector of a maximal set: coordinate a of B carries
// zeta(a-level prefix ending at a).  Entries of a maximal set sum to 1.
inline std::map<int, rat> z_vector(const ordinal& a, const fin_set& B) {
    if (!is_maximal(a, B)) throw std::domain_error("z_vector: set is not maximal");
    std::map<int, rat> v;
    for (int k = 1; k <= B.size(); ++k) v[B.elems[k - 1]] = zeta(a, B.prefix(k));
    return v;
}

// Total mass that the repeated average assigns to A and its prefixes; equals
// 1 exactly when A is maximal.
inline rat prefix_mass(const ordinal& a, const fin_set& A) {
    rat m(0);
    for (int k = 1; k <= A.size(); ++k) m += zeta(a, A.prefix(k));
    return m;
}

// --- optimal S_1 decomposition ----------------------------------------------

// The unique split A = A_1 u ... u A_d with A_1 < ... < A_d, the A_j maximal
// in S_1 for j < d (i.e. #A_j = min A_j) and A_d a nonempty S_1 set, plus the
// defect l1(A) = min(A_d) - #A_d measuring how far the last block is from
// maximal.  l1({}) = 0.
struct s1_decomp {
    std::vector<fin_set> blocks;
    long l1 = 0;
};

inline s1_decomp s1_decomposition(const fin_set& A) {
    s1_decomp r;
    fin_set cur;
    for (int x : A.elems) {
        if (!cur.empty() && cur.size() == cur.min()) {
            r.blocks.push_back(cur);
            cur = fin_set{};
        }
        cur.elems.push_back(x);
    }
    if (!cur.empty()) r.blocks.push_back(cur);
    if (!r.blocks.empty()) r.l1 = r.blocks.back().min() - r.blocks.back().size();
    return r;
}

inline long l1_defect(const fin_set& A) { return s1_decomposition(A).l1; }

// --- smallness audit ---------------------------------------------------------

// Largest mass that a repeated average of complexity a on a maximal set of
// the ground restriction can place on a single S_g set.  This is an audit on
// one ground, not a proof of the limiting statement.
struct smallness_report {
    ordinal alpha, gamma;
    fin_set ground;
    rat epsilon;
    rat max_mass;
    fin_set witness_B, witness_A;
    bool holds_on_ground = false;
};

inline smallness_report smallness_check(const ordinal& a, const ordinal& g, const fin_set& ground,
                                        const rat& eps) {
    if (cmp(g, a) >= 0) throw std::domain_error("smallness_check: requires gamma < alpha");
    smallness_report rep{a, g, ground, eps, rat(0), {}, {}, false};
    for (const auto& B : restriction_maximal_members(a, ground)) {
        if (B.empty()) continue;
        std::map<int, rat> zb;
        for (int k = 1; k <= B.size(); ++k) zb[B.elems[k - 1]] = zeta(a, B.prefix(k));
        for (const auto& A : members_on(g, B)) {
            rat mass(0);
            for (int x : A.elems) {
                auto it = zb.find(x);
                if (it != zb.end()) mass += it->second;
            }
            if (mass > rep.max_mass) {
                rep.max_mass = mass;
                rep.witness_B = B;
                rep.witness_A = A;
            }
        }
    }
    rep.holds_on_ground = rep.max_mass < eps;
    return rep;
}

}  // namespace schreier
