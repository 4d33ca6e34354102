#pragma once

#include "schreier/averages.hpp"
#include "schreier/family.hpp"

#include <vector>

namespace schreier {

// Block calculus of maximal sets at product levels b*g, b = w^(w^x).
// A maximal set at level b*(g+1) splits into maximal level-b*g blocks whose
// minima form a level-b set; recursing produces a tree whose leaves are
// level-b sets.  Sets that are only maximal within a finite ground truncate
// the last block; the recursions below accept them and the derived identities
// still hold for such sets.

struct analysis_tree {
    fin_set node;
    std::vector<analysis_tree> children;

    bool leaf() const { return children.empty(); }
};

namespace detail {
inline void require_product_level(const ordinal& b, const ordinal& g) {
    if (!is_omega_tower(b)) throw std::domain_error("analysis: base is not of the form w^(w^x)");
    if (g.is_zero() || cmp(g, b) > 0) throw std::domain_error("analysis: index must satisfy 1 <= g <= base");
}
}  // namespace detail

// The recursive block tree of B at level b*g:
//   g = 1:    the single node {B}
//   g = g'+1: B together with the trees of its level-b*g' blocks
//   g limit:  reduce to eta(g, min B)
inline analysis_tree beta_analysis(const ordinal& b, const ordinal& g, const fin_set& B) {
    detail::require_product_level(b, g);
    if (B.empty() || !is_member(mul(b, g), B))
        throw std::domain_error("beta_analysis: set is not a nonempty member at level b*g");
    if (g.is_limit()) return beta_analysis(b, eta_approx(b, g, B.min()), B);
    if (g.is_finite() && g.finite_value() == 1) return analysis_tree{B, {}};
    ordinal gp = detail::drop_one_unit(g);
    analysis_tree t{B, {}};
    for (const auto& block : greedy_blocks(mul(b, gp), B))
        t.children.push_back(beta_analysis(b, gp, block));
    return t;
}

inline void collect_leaves(const analysis_tree& t, std::vector<fin_set>& out) {
    if (t.leaf()) {
        out.push_back(t.node);
        return;
    }
    for (const auto& c : t.children) collect_leaves(c, out);
}

// Components of a nonempty member A at level b*g: the pieces of A induced by
// the block structure.
//   g = 1:    s = 1, the single part A
//   g = g'+1: with A = A_1 u ... u A_d the greedy level-b*g' decomposition,
//             part 1 is A_1 u ... u A_(d-1) (empty when d = 1) and the
//             remaining parts are the components of A_d at level b*g'
//   g limit:  reduce to eta(g, min A)
struct component_decomp {
    int s = 0;
    std::vector<fin_set> parts;  // parts.size() == s; only parts[0] may be empty
};

inline component_decomp components(const ordinal& b, const ordinal& g, const fin_set& A) {
    detail::require_product_level(b, g);
    if (A.empty() || !is_member(mul(b, g), A))
        throw std::domain_error("components: set is not a nonempty member at level b*g");
    if (g.is_limit()) return components(b, eta_approx(b, g, A.min()), A);
    if (g.is_finite() && g.finite_value() == 1) return component_decomp{1, {A}};
    ordinal gp = detail::drop_one_unit(g);
    auto blocks = greedy_blocks(mul(b, gp), A);
    fin_set head;
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) head = set_union(head, blocks[i]);
    component_decomp inner = components(b, gp, blocks.back());
    component_decomp r;
    r.s = inner.s + 1;
    r.parts.push_back(head);
    r.parts.insert(r.parts.end(), inner.parts.begin(), inner.parts.end());
    return r;
}

// Prefixes of B all of whose components are nonempty, in prefix order.
inline std::vector<fin_set> e_family(const ordinal& b, const ordinal& g, const fin_set& B) {
    std::vector<fin_set> out;
    for (int k = 1; k <= B.size(); ++k) {
        fin_set A = B.prefix(k);
        auto cd = components(b, g, A);
        bool all_nonempty = true;
        for (const auto& p : cd.parts)
            if (p.empty()) all_nonempty = false;
        if (all_nonempty) out.push_back(A);
    }
    return out;
}

// The maximal chain B = D_1 > D_2 > ... > D_s through the analysis tree that
// accompanies the components of A: D_(i+1) is the last child of D_i meeting
// A.  Component i is an initial segment of D_i, strictly so for i < s.
inline std::vector<fin_set> maximal_chain(const ordinal& b, const ordinal& g, const fin_set& B,
                                          const fin_set& A) {
    detail::require_product_level(b, g);
    if (!is_prefix(A, B) || A.empty()) throw std::domain_error("maximal_chain: A must be a nonempty prefix of B");
    {
        auto cd = components(b, g, A);
        for (const auto& p : cd.parts)
            if (p.empty()) throw std::domain_error("maximal_chain: A has an empty component");
    }
    if (g.is_limit()) return maximal_chain(b, eta_approx(b, g, B.min()), B, A);
    if (g.is_finite() && g.finite_value() == 1) return {B};
    ordinal gp = detail::drop_one_unit(g);
    auto blocks = greedy_blocks(mul(b, gp), B);
    std::size_t d = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if (!set_intersection(blocks[j], A).empty()) d = j;
    std::vector<fin_set> chain{B};
    auto tail = maximal_chain(b, gp, blocks[d], set_intersection(blocks[d], A));
    chain.insert(chain.end(), tail.begin(), tail.end());
    return chain;
}

// --- special families of convex combinations ---------------------------------

// For each A in the e-family of B, coefficients r(A, 1..s(A)) with sum 1,
// constant across sets sharing a chain node.
struct convex_family {
    ordinal beta, gamma;
    fin_set B;
    std::vector<std::pair<fin_set, std::vector<rat>>> entries;  // prefix order

    const std::vector<rat>* find(const fin_set& A) const {
        for (const auto& [set, r] : entries)
            if (set == A) return &r;
        return nullptr;
    }
};

// Definition check: (i) each coefficient row sums to 1; (ii) equal chain
// nodes force equal coefficients.
inline bool check_special(const convex_family& fam) {
    for (const auto& [A, r] : fam.entries) {
        rat sum(0);
        for (const auto& v : r) sum += v;
        if (sum != 1) return false;
    }
    for (const auto& [A1, r1] : fam.entries)
        for (const auto& [A2, r2] : fam.entries) {
            auto c1 = maximal_chain(fam.beta, fam.gamma, fam.B, A1);
            auto c2 = maximal_chain(fam.beta, fam.gamma, fam.B, A2);
            for (std::size_t k = 0; k < std::min(c1.size(), c2.size()); ++k)
                if (c1[k] == c2[k] && r1[k] != r2[k]) return false;
        }
    return true;
}

// The convex family r(A, k) = zeta(a0, k-th prefix of the longest maximal
// S_(a0) initial segment of the component minima of A); coefficients beyond
// that segment are 0.  The component minima form a maximal fine-family set,
// and their a0-prefix must itself be maximal for the weights to sum to 1 —
// anything else is reported as infeasible.
inline convex_family special_convex_family(const ordinal& b, const ordinal& g, const fin_set& B,
                                           const ordinal& a0) {
    convex_family fam{b, g, B, {}};
    for (const auto& A : e_family(b, g, B)) {
        auto cd = components(b, g, A);
        fin_set minima;
        for (const auto& p : cd.parts) minima.elems.push_back(p.min());
        minima.validate();
        int best = -1;
        for (int k = minima.size(); k >= 0; --k)
            if (is_member(a0, minima.prefix(k))) {
                best = k;
                break;
            }
        fin_set tilde = minima.prefix(best);
        if (tilde.empty() || !is_maximal(a0, tilde))
            throw std::domain_error("special_convex_family: level " + a0.str() +
                                    " is infeasible on the component minima of " + A.str());
        std::vector<rat> r(cd.s, rat(0));
        for (int k = 1; k <= tilde.size(); ++k) r[k - 1] = zeta(a0, tilde.prefix(k));
        fam.entries.emplace_back(A, std::move(r));
    }
    return fam;
}

// Demotion to a child block: given a special family for B at level g+1 with
// r(.,1) < 1, the renormalized coefficients
//   r^(j)(C, k) = r((B_1 u ... u B_j) u C, k+1) / (1 - r(.,1))
// form a special family for B_(j+1) at level g (1 <= j <= d-1).
inline convex_family demote(const ordinal& b, const ordinal& g_succ, const fin_set& B,
                            const convex_family& fam, int j) {
    detail::require_product_level(b, g_succ);
    if (g_succ.is_limit() || g_succ.is_zero() || (g_succ.is_finite() && g_succ.finite_value() == 1))
        throw std::domain_error("demote: level must be a successor above 1");
    ordinal g = detail::drop_one_unit(g_succ);
    auto blocks = greedy_blocks(mul(b, g), B);
    if (j < 1 || j + 1 > static_cast<int>(blocks.size())) throw std::domain_error("demote: child index out of range");
    if (fam.entries.empty()) throw std::domain_error("demote: empty family");
    const rat r1 = fam.entries.front().second.front();
    for (const auto& [A, r] : fam.entries)
        if (r.front() != r1) throw std::domain_error("demote: r(.,1) is not constant");
    if (r1 >= 1) throw std::domain_error("demote: requires r(.,1) < 1");

    fin_set head;
    for (int i = 0; i < j; ++i) head = set_union(head, blocks[i]);
    convex_family out{b, g, blocks[j], {}};
    for (const auto& C : e_family(b, g, blocks[j])) {
        const auto* r = fam.find(set_union(head, C));
        if (!r) throw std::domain_error("demote: missing entry for " + set_union(head, C).str());
        std::vector<rat> rj;
        for (std::size_t k = 1; k < r->size(); ++k) rj.push_back((*r)[k] / (1 - r1));
        out.entries.emplace_back(C, std::move(rj));
    }
    return out;
}

}  // namespace schreier
