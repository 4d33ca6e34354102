#pragma once

#include "schreier/finset.hpp"
#include "schreier/ordinal.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace schreier {

// The Schreier hierarchy S_a:
//   S_0     = {{n}} u {{}}
//   S_(g+1) = { E_1 u ... u E_n : n <= min(E_1), E_1 < ... < E_n, E_j in S_g }
//   S_a     = { A : A in S_(lambda(a, min A)) } u {{}}   (a limit)
// with the canonical approximating sequence from ordinal.hpp.

namespace detail {

struct ord_set_less {
    bool operator()(const std::pair<ordinal, std::vector<int>>& x,
                    const std::pair<ordinal, std::vector<int>>& y) const {
        int c = cmp(x.first, y.first);
        if (c != 0) return c < 0;
        return x.second < y.second;
    }
};

template <typename V>
class ord_set_cache {
public:
    std::optional<V> find(const ordinal& a, const fin_set& s) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find({a, s.elems});
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void insert(const ordinal& a, const fin_set& s, V v) {
        std::lock_guard<std::mutex> lock(mu_);
        map_.emplace(std::make_pair(a, s.elems), std::move(v));
    }

private:
    mutable std::mutex mu_;
    std::map<std::pair<ordinal, std::vector<int>>, V, ord_set_less> map_;
};

}  // namespace detail

bool is_member(const ordinal& a, const fin_set& A);
bool is_maximal(const ordinal& a, const fin_set& A);

namespace detail {

// Collapses the limit reductions a -> lambda(a, min) in place until the level
// is a successor (or zero); one loop instead of one stack frame per step.
inline ordinal collapse_limit(ordinal a, int min_elem) {
    while (a.is_limit()) a = lambda_approx(a, min_elem);
    return a;
}

// Writes a = head + k with k the finite part; head is zero or has all of its
// exponents >= 1.
inline std::pair<ordinal, big_int> peel_finite(const ordinal& a) {
    if (a.is_zero() || a.terms().back().exp > ordinal::zero()) return {a, 0};
    ordinal::term_list head(a.terms().begin(), a.terms().end() - 1);
    return {ordinal::from_terms(std::move(head)), a.terms().back().coeff};
}

}  // namespace detail

// Greedy block decomposition of A at level g: scan left to right and close a
// block as soon as it is maximal in S_g.  For A in S_(g+1) this is the unique
// decomposition whose blocks are all maximal except possibly the last, and it
// uses the fewest blocks among all decompositions into S_g blocks.
inline std::vector<fin_set> greedy_blocks(const ordinal& g, const fin_set& A) {
    std::vector<fin_set> blocks;
    fin_set cur;
    for (int x : A.elems) {
        if (!cur.empty() && is_maximal(g, cur)) {
            blocks.push_back(cur);
            cur = fin_set{};
        }
        cur.elems.push_back(x);
    }
    if (!cur.empty()) blocks.push_back(cur);
    return blocks;
}

// Membership with the whole finite part of the level peeled in one step via
// S_(h+k) = S_k[S_h]: blocks at the infinite head h, their minima tested at
// the finite level k.  Purely finite levels unwind one unit at a time.  This
// keeps the recursion depth proportional to the number of infinite stages of
// the canonical descent instead of its unit count.
inline bool is_member(const ordinal& a, const fin_set& A) {
    if (A.empty()) return true;
    if (a.is_zero()) return A.size() <= 1;
    static detail::ord_set_cache<bool> cache;
    if (auto hit = cache.find(a, A)) return *hit;
    ordinal lvl = detail::collapse_limit(a, A.min());
    bool result;
    if (lvl.is_finite()) {
        if (lvl.finite_value() == 1) {
            result = A.size() <= A.min();
        } else {
            auto blocks = greedy_blocks(detail::drop_one_unit(lvl), A);
            result = static_cast<int>(blocks.size()) <= A.min();
        }
    } else {
        auto [head, k] = detail::peel_finite(lvl);
        auto blocks = greedy_blocks(head, A);
        fin_set minima;
        for (const auto& b : blocks) minima.elems.push_back(b.min());
        result = is_member(head, blocks.back()) && is_member(ordinal::from_int(k), minima);
    }
    cache.insert(a, A, result);
    return result;
}

// Maximality in the full family S_a (no extension by any integer beyond
// max(A) stays inside): every greedy block is maximal one level down and the
// block minima are maximal at the peeled finite level.
inline bool is_maximal(const ordinal& a, const fin_set& A) {
    if (!is_member(a, A)) throw std::domain_error("is_maximal: set is not a member");
    if (A.empty()) return false;
    if (a.is_zero()) return true;
    ordinal lvl = detail::collapse_limit(a, A.min());
    if (lvl.is_finite()) {
        if (lvl.finite_value() == 1) return A.size() == A.min();
        auto blocks = greedy_blocks(detail::drop_one_unit(lvl), A);
        return static_cast<int>(blocks.size()) == A.min() &&
               is_maximal(detail::drop_one_unit(lvl), blocks.back());
    }
    auto [head, k] = detail::peel_finite(lvl);
    auto blocks = greedy_blocks(head, A);
    fin_set minima;
    for (const auto& b : blocks) minima.elems.push_back(b.min());
    return is_maximal(head, blocks.back()) && is_maximal(ordinal::from_int(k), minima);
}

// All members of S_a drawn from ground, in colex order ({} first).
inline std::vector<fin_set> members_on(const ordinal& a, const fin_set& ground) {
    std::vector<fin_set> out;
    for (auto& s : all_subsets(ground))
        if (is_member(a, s)) out.push_back(std::move(s));
    return out;
}

// Members with no one-element extension inside the ground.  Extendability of
// a member does not depend on which integer beyond max(A) is appended, so
// testing the smallest available ground element suffices.
inline bool is_restriction_maximal(const ordinal& a, const fin_set& A, const fin_set& ground) {
    for (int x : ground.elems)
        if (x > A.max0() && is_member(a, A.with(x))) return false;
    return true;
}

inline std::vector<fin_set> restriction_maximal_members(const ordinal& a, const fin_set& ground) {
    std::vector<fin_set> out;
    for (auto& s : members_on(a, ground))
        if (is_restriction_maximal(a, s, ground)) out.push_back(std::move(s));
    return out;
}

// --- fine hierarchy F_(b,g), b = w^(w^x), g <= b ----------------------------
//   F_(b,0)     = {{}}
//   F_(b,g+1)   = F_(b,1) |_< F_(b,g)         (prepend one smaller element)
//   F_(b,g)     = { A : A in F_(b,eta(g,min A)) } u {{}}   (g limit)
// Membership peels the minimum at successor steps; for finite g this makes
// F_(b,k) the sets of size at most k.

inline void require_fine_base(const ordinal& b, const ordinal& g) {
    if (!is_omega_tower(b)) throw std::domain_error("fine family: base is not of the form w^(w^x)");
    if (cmp(g, b) > 0) throw std::domain_error("fine family: index exceeds the base");
}

inline bool fine_is_member(const ordinal& b, const ordinal& g_in, const fin_set& A_in) {
    require_fine_base(b, g_in);
    ordinal g = g_in;
    fin_set A = A_in;
    while (true) {
        if (A.empty()) return true;
        if (g.is_zero()) return false;
        if (g.is_limit()) {
            g = eta_approx(b, g, A.min());
            continue;
        }
        auto [head, k] = detail::peel_finite(g);
        for (big_int i = 0; i < k && !A.empty(); ++i) A = A.drop_min();
        g = head;
    }
}

inline bool fine_is_maximal(const ordinal& b, const ordinal& g_in, const fin_set& A_in) {
    if (!fine_is_member(b, g_in, A_in)) throw std::domain_error("fine_is_maximal: set is not a member");
    ordinal g = g_in;
    fin_set A = A_in;
    while (true) {
        if (g.is_zero()) return A.empty();
        if (A.empty()) return false;
        if (g.is_limit()) {
            g = eta_approx(b, g, A.min());
            continue;
        }
        auto [head, k] = detail::peel_finite(g);
        if (big_int(A.size()) < k) return false;
        for (big_int i = 0; i < k; ++i) A = A.drop_min();
        g = head;
    }
}

// --- explicit finite families ----------------------------------------------

// A finite, explicitly listed family of subsets of a ground set, closed under
// initial segments and containing {}.  Members are kept in colex order.
struct family_snapshot {
    fin_set ground;
    std::vector<fin_set> members;

    void validate() const {
        bool has_empty = false;
        for (const auto& m : members) {
            if (!is_subset(m, ground)) throw std::domain_error("snapshot member not within ground");
            if (m.empty()) has_empty = true;
            if (!m.empty() && !contains(m.drop_max()))
                throw std::domain_error("snapshot not closed under restrictions");
        }
        if (!has_empty) throw std::domain_error("snapshot must contain the empty set");
    }
    bool contains(const fin_set& s) const {
        for (const auto& m : members)
            if (m == s) return true;
        return false;
    }
    void normalize() {
        std::sort(members.begin(), members.end(), colex_less);
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }
};

inline family_snapshot snapshot_of(const ordinal& a, const fin_set& ground) {
    family_snapshot f{ground, members_on(a, ground)};
    f.validate();
    return f;
}

// Derivative of a snapshot standing in for a restriction of a spreading
// family: a member A survives iff some member C with #C = #A + 1 dominates it
// coordinatewise on the first #A coordinates (then A u {k} is a spread of C
// for every large k, so A is not maximal in the spreading closure).  On
// restrictions of the Schreier families this removes exactly the sets that
// are maximal in the full family; it is a finite proxy, not the transfinite
// derivative.
inline family_snapshot derivative(const family_snapshot& F) {
    F.validate();
    family_snapshot out{F.ground, {}};
    for (const auto& A : F.members) {
        bool witnessed = false;
        for (const auto& C : F.members) {
            if (C.size() != A.size() + 1) continue;
            bool dominated = true;
            for (int i = 0; i < A.size() && dominated; ++i)
                dominated = C.elems[i] <= A.elems[i];
            if (dominated) {
                witnessed = true;
                break;
            }
        }
        if (witnessed) out.members.push_back(A);
    }
    out.normalize();
    if (!out.members.empty()) out.validate();  // closure under restrictions survives
    return out;
}

// Number of derivative steps until the snapshot empties.
inline int derivative_steps_to_empty(family_snapshot F, int limit = 64) {
    int steps = 0;
    while (!F.members.empty()) {
        if (++steps > limit) throw std::domain_error("derivative did not empty within limit");
        F = derivative(F);
    }
    return steps;
}

// Spread of the family onto N: members are read as index sets into N.
inline family_snapshot spread_onto(const family_snapshot& F, const fin_set& N) {
    family_snapshot out{N, {}};
    for (const auto& A : F.members) {
        fin_set image;
        for (int j : A.elems) {
            if (j > N.size()) throw std::domain_error("spread_onto: N too short for member " + A.str());
            image.elems.push_back(N.elems[j - 1]);
        }
        image.validate();
        out.members.push_back(std::move(image));
    }
    out.normalize();
    out.validate();
    return out;
}

// --- decompositions ---------------------------------------------------------

// (g1, g2) is a split of g = g1 + g2 along a CNF term boundary, i.e. one of
// the pairs produced by split().
inline bool is_valid_split(const ordinal& g1, const ordinal& g2) {
    if (g1.is_zero() || g2.is_zero()) return true;
    return cmp(g1.terms().back().exp, g2.terms().front().exp) >= 0;
}

// Whether A = B_1 u ... u B_n with increasing blocks B_i in S_(g1) and
// {min B_i} in S_(g2), by exhaustive search over consecutive cuts.  Equals
// is_member(g1 + g2, A) when (g1, g2) is a valid split.
inline bool decomposition_check(const ordinal& g1, const ordinal& g2, const fin_set& A) {
    if (!is_valid_split(g1, g2)) throw std::domain_error("decomposition_check: invalid split");
    if (A.empty()) return true;
    const int k = A.size();
    for (unsigned long cuts = 0; cuts < (1ul << (k - 1)); ++cuts) {
        std::vector<fin_set> blocks;
        fin_set cur;
        for (int i = 0; i < k; ++i) {
            cur.elems.push_back(A.elems[i]);
            if (i == k - 1 || (cuts & (1ul << i))) {
                blocks.push_back(cur);
                cur = fin_set{};
            }
        }
        bool ok = true;
        fin_set minima;
        for (const auto& b : blocks) {
            if (!is_member(g1, b)) {
                ok = false;
                break;
            }
            minima.elems.push_back(b.min());
        }
        if (ok && is_member(g2, minima)) return true;
    }
    return false;
}

// Least n among the ground elements with S_a restricted to [n, oo) contained
// in S_b on this ground; an empirical search, no claim beyond the ground.
inline std::optional<int> least_shift(const ordinal& a, const ordinal& b, const fin_set& ground) {
    for (int n : ground.elems) {
        fin_set tail;
        for (int x : ground.elems)
            if (x >= n) tail.elems.push_back(x);
        bool ok = true;
        for (const auto& A : members_on(a, tail))
            if (!is_member(b, A)) {
                ok = false;
                break;
            }
        if (ok) return n;
    }
    return std::nullopt;
}

}  // namespace schreier
