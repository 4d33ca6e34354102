#include "schreier/averages.hpp"
#include "schreier/spaces.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace schreier;

namespace {

ordinal O(const std::string& s) { return parse_ordinal(s); }
fin_set S(const std::string& s) { return fin_set::parse(s); }

// Oracle for the repeated-average vector of B, built top-down from the
// uniform-averaging recursion without going through the coefficient cache.
// The successor step searches all decompositions and insists on a unique one
// whose blocks are all maximal except possibly the last.
std::map<int, rat> z_vector_oracle(const ordinal& a, const fin_set& B) {
    std::map<int, rat> v;
    if (B.empty()) return v;
    if (a.is_zero()) {
        REQUIRE(B.size() == 1);
        v[B.min()] = 1;
        return v;
    }
    if (a.is_limit()) return z_vector_oracle(lambda_approx(a, B.min()), B);
    ordinal g = detail::drop_one_unit(a);
    const int k = B.size();
    std::vector<std::vector<fin_set>> found;
    for (unsigned long cuts = 0; cuts < (1ul << (k - 1)); ++cuts) {
        std::vector<fin_set> blocks;
        fin_set cur;
        for (int i = 0; i < k; ++i) {
            cur.elems.push_back(B.elems[i]);
            if (i == k - 1 || (cuts & (1ul << i))) {
                blocks.push_back(cur);
                cur = fin_set{};
            }
        }
        if (static_cast<int>(blocks.size()) > B.min()) continue;
        bool ok = true;
        for (std::size_t j = 0; j < blocks.size() && ok; ++j) {
            if (!is_member(g, blocks[j])) ok = false;
            if (ok && j + 1 < blocks.size() && !is_maximal(g, blocks[j])) ok = false;
        }
        if (ok) found.push_back(blocks);
    }
    REQUIRE(found.size() == 1);  // the all-but-last-maximal decomposition is unique
    for (const auto& block : found[0]) {
        auto sub = z_vector_oracle(g, block);
        for (const auto& [coord, val] : sub) v[coord] = val / B.min();
    }
    return v;
}

const std::vector<std::string> kAlphaList = {"1", "2", "3", "w", "w + 1", "w*2", "w^(2)"};

}  // namespace

TEST_CASE("coefficient examples") {
    CHECK(zeta(O("1"), S("{3,5}")) == make_rat(1, 3));
    CHECK(zeta(O("2"), S("{2,3}")) == make_rat(1, 4));
    CHECK(zeta(O("2"), S("{2,3,4}")) == make_rat(1, 8));
    CHECK(zeta(O("w"), S("{}")) == 0);
    CHECK_THROWS_AS(zeta(O("1"), S("{1,2}")), std::domain_error);
}

TEST_CASE("coefficient bound by the reciprocal of the minimum") {
    fin_set ground = S("{2..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (const auto& A : members_on(a, ground)) {
            if (A.empty()) continue;
            REQUIRE(zeta(a, A) <= rat(1) / A.min());
        }
    }
}

TEST_CASE("probability vectors of maximal sets") {
    auto v1 = z_vector(O("1"), S("{2,3}"));
    REQUIRE(v1 == std::map<int, rat>{{2, make_rat(1, 2)}, {3, make_rat(1, 2)}});

    auto v2 = z_vector(O("2"), S("{2,3,4,5,6,7}"));
    REQUIRE(v2 == std::map<int, rat>{{2, make_rat(1, 4)},
                                     {3, make_rat(1, 4)},
                                     {4, make_rat(1, 8)},
                                     {5, make_rat(1, 8)},
                                     {6, make_rat(1, 8)},
                                     {7, make_rat(1, 8)}});

    auto v0 = z_vector(O("0"), S("{9}"));
    REQUIRE(v0 == std::map<int, rat>{{9, rat(1)}});

    CHECK_THROWS_AS(z_vector(O("1"), S("{3,4}")), std::domain_error);
}

TEST_CASE("vectors match the top-down oracle and sum to one") {
    fin_set ground = S("{2..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (const auto& B : members_on(a, ground)) {
            if (B.empty() || !is_maximal(a, B)) continue;
            auto expected = z_vector_oracle(a, B);
            REQUIRE(z_vector(a, B) == expected);
            rat sum(0);
            for (const auto& [c, val] : expected) sum += val;
            REQUIRE(sum == 1);
        }
    }
}

TEST_CASE("coefficients are extension independent") {
    fin_set ground = S("{2..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        auto members = members_on(a, ground);
        for (const auto& A : members) {
            if (A.empty()) continue;
            // compare the prefix coefficients of every extension present on
            // the ground against zeta of the prefix itself
            for (const auto& B : members) {
                if (!is_prefix(A, B)) continue;
                // the oracle needs the unique decomposition, which exists for
                // every member, maximal or not
                auto full = z_vector_oracle(a, B);
                for (int k = 1; k <= A.size(); ++k)
                    REQUIRE(full.at(A.elems[k - 1]) == zeta(a, A.prefix(k)));
            }
        }
    }
}

TEST_CASE("product law across term splits") {
    struct case_t {
        std::string g1, g2;
    };
    for (const auto& [g1s, g2s] : {case_t{"w", "1"}, case_t{"w", "w"}, case_t{"1", "1"},
                                   case_t{"2", "1"}, case_t{"1", "2"}, case_t{"w", "2"}}) {
        ordinal g1 = O(g1s), g2 = O(g2s), g = add(g1, g2);
        for (const auto& D : members_on(g, S("{2..10}"))) {
            if (D.empty()) continue;
            auto blocks = greedy_blocks(g1, D);
            fin_set minima;
            for (const auto& b : blocks) minima.elems.push_back(b.min());
            REQUIRE(zeta(g, D) == zeta(g2, minima) * zeta(g1, blocks.back()));
        }
    }
}

TEST_CASE("optimal level-one decomposition") {
    auto d = s1_decomposition(S("{2,3,4,5}"));
    REQUIRE(d.blocks == std::vector<fin_set>{S("{2,3}"), S("{4,5}")});
    CHECK(d.l1 == 2);

    auto single = s1_decomposition(S("{2,3}"));
    REQUIRE(single.blocks == std::vector<fin_set>{S("{2,3}")});
    CHECK(single.l1 == 0);

    CHECK(s1_decomposition(S("{}")).l1 == 0);

    // defect zero exactly when the last block is full
    for (const auto& A : all_subsets(S("{2..8}"))) {
        if (A.empty()) continue;
        auto dec = s1_decomposition(A);
        bool last_full = dec.blocks.back().size() == dec.blocks.back().min();
        REQUIRE((dec.l1 == 0) == last_full);
        // blocks partition A and all but the last are full
        fin_set joined;
        for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
            joined = set_union(joined, dec.blocks[i]);
            if (i + 1 < dec.blocks.size())
                REQUIRE(dec.blocks[i].size() == dec.blocks[i].min());
        }
        REQUIRE(joined == A);
    }
}

TEST_CASE("padding within the defect keeps the coefficient") {
    fin_set ground = S("{2..9}");
    for (const auto& as : {"1", "2", "w"}) {
        ordinal a = O(as);
        for (const auto& A : members_on(a, ground)) {
            if (A.empty()) continue;
            long l1 = l1_defect(A);
            // (iii): appending up to l1 elements preserves membership and zeta
            if (l1 > 0) {
                fin_set padded = A;
                for (long i = 1; i <= l1; ++i) {
                    padded = padded.with(padded.max() + 2);
                    REQUIRE(is_member(a, padded));
                    REQUIRE(zeta(a, padded) == zeta(a, A));
                }
            }
            // (iv): the first coefficient beyond the defect drops below the
            // reciprocal of the element that landed there
            fin_set longer = A;
            std::vector<int> ks;
            for (long i = 1; i <= l1 + 2; ++i) {
                longer = longer.with(longer.max0() + 2);
                ks.push_back(longer.max());
            }
            if (is_member(a, longer))
                REQUIRE(zeta(a, longer) <= rat(1) / ks[static_cast<std::size_t>(l1)]);
            // (v): prefixes with defect zero carry mass at most 1/min in total
            rat mass_d(0), mass_dprime(0);
            for (int k = 1; k <= A.size(); ++k) {
                if (l1_defect(A.prefix(k)) == 0) mass_d += zeta(a, A.prefix(k));
                if (l1_defect(A.prefix(k).drop_max()) == 0) mass_dprime += zeta(a, A.prefix(k));
            }
            REQUIRE(mass_d <= rat(1) / A.min());
            REQUIRE(mass_dprime <= rat(1) / A.min());
        }
    }
}

TEST_CASE("matching block shapes give matching coefficients") {
    fin_set ground = S("{2..9}");
    auto subsets = all_subsets(ground);
    for (const auto& A : subsets) {
        if (A.empty()) continue;
        for (const auto& B : subsets) {
            if (B.empty() || B == A) continue;
            auto da = s1_decomposition(A), db = s1_decomposition(B);
            if (da.blocks.size() != db.blocks.size()) continue;
            bool same_shape = true;
            for (std::size_t j = 0; j < da.blocks.size() && same_shape; ++j)
                same_shape = da.blocks[j].min() == db.blocks[j].min() &&
                             da.blocks[j].size() == db.blocks[j].size();
            if (!same_shape) continue;
            for (const auto& as : {"1", "2", "w", "w + 1"}) {
                ordinal a = O(as);
                REQUIRE(is_member(a, A) == is_member(a, B));
                if (is_member(a, A))
                    for (int k = 1; k <= A.size(); ++k)
                        REQUIRE(zeta(a, A.prefix(k)) == zeta(a, B.prefix(k)));
            }
        }
    }
}

TEST_CASE("mass audit over one ground") {
    auto rep = smallness_check(O("1"), O("0"), S("{4..9}"), make_rat(1, 3));
    CHECK(rep.max_mass == make_rat(1, 4));  // uniform weights: one singleton
    CHECK(rep.holds_on_ground);

    auto rep2 = smallness_check(O("2"), O("1"), S("{4..12}"), rat(1));
    CHECK(rep2.holds_on_ground);  // threshold one always passes
    CHECK(rep2.max_mass > 0);

    // monotone nonincreasing as the ground moves right
    auto near = smallness_check(O("2"), O("1"), S("{4..11}"), rat(1));
    auto far = smallness_check(O("2"), O("1"), S("{5..12}"), rat(1));
    CHECK(far.max_mass <= near.max_mass);

    CHECK_THROWS_AS(smallness_check(O("1"), O("1"), S("{2..5}"), rat(1)), std::domain_error);
}

TEST_CASE("difference of shifted coefficient sums stays small") {
    // for vectors x_A in the unit ball of any of the three norms,
    // || sum zeta(a,A) x_A - sum zeta(a,A') x_A || <= 2/min(B)
    fin_set ground = S("{2..10}");
    std::mt19937 rng(411);
    std::uniform_int_distribution<int> coord(1, 24), numer(-9, 9), denom(1, 9), sz(1, 4);
    for (const auto& as : {"1", "2", "w"}) {
        ordinal a = O(as);
        auto maximal = restriction_maximal_members(a, ground);
        for (const auto& B : maximal) {
            if (B.empty()) continue;
            for (int trial = 0; trial < 20; ++trial) {
                for (auto kind : {norm_kind::l1, norm_kind::sup, norm_kind::summing}) {
                    sparse_vec total;
                    for (int k = 0; k <= B.size(); ++k) {
                        sparse_vec x;
                        int support = sz(rng);
                        for (int t = 0; t < support; ++t)
                            x.set(coord(rng), rat(big_int(numer(rng)), big_int(denom(rng))));
                        rat nv = norm(x, kind);
                        if (nv == 0) x = sparse_vec::unit(1);
                        nv = norm(x, kind);
                        x *= rat(1) / nv;  // exact unit vector
                        fin_set D = B.prefix(k);
                        rat w = zeta(a, D) - zeta(a, D.drop_max());
                        x *= w;
                        total += x;
                    }
                    REQUIRE(norm(total, kind) <= rat(2) / B.min());
                }
            }
        }
    }
}
