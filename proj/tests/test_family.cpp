#include "schreier/family.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <future>

using namespace schreier;

namespace {

ordinal O(const std::string& s) { return parse_ordinal(s); }
fin_set S(const std::string& s) { return fin_set::parse(s); }

// Membership oracle independent of the greedy path: the successor case tries
// every decomposition of A into consecutive blocks.
bool member_bf(const ordinal& a, const fin_set& A) {
    if (A.empty()) return true;
    if (a.is_zero()) return A.size() <= 1;
    if (a.is_limit()) return member_bf(lambda_approx(a, A.min()), A);
    ordinal g = detail::drop_one_unit(a);
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
        if (static_cast<int>(blocks.size()) > A.min()) continue;
        bool ok = true;
        for (const auto& b : blocks)
            if (!member_bf(g, b)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

bool maximal_bf(const ordinal& a, const fin_set& A) {
    return member_bf(a, A) && !member_bf(a, A.with(A.max0() + 1));
}

const std::vector<std::string> kAlphaList = {"1", "2", "3", "w", "w + 1", "w*2", "w^(2)"};

}  // namespace

TEST_CASE("base families") {
    CHECK(is_member(O("0"), S("{}")));
    CHECK(is_member(O("0"), S("{7}")));
    CHECK_FALSE(is_member(O("0"), S("{3,7}")));

    CHECK(is_member(O("1"), S("{2,3}")));
    CHECK_FALSE(is_member(O("1"), S("{1,2}")));
    CHECK(is_member(O("2"), S("{2,3,4,5,6,7}")));
    CHECK(is_member(O("w"), S("{3,4,5}")));
}

TEST_CASE("membership agrees with the exhaustive oracle") {
    fin_set ground = S("{1..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (const auto& A : all_subsets(ground)) REQUIRE(is_member(a, A) == member_bf(a, A));
    }
}

TEST_CASE("maximality") {
    CHECK(is_maximal(O("1"), S("{2,3}")));
    CHECK_FALSE(is_maximal(O("1"), S("{2}")));
    CHECK_FALSE(is_maximal(O("2"), S("{2,3,4,5}")));
    CHECK(is_maximal(O("2"), S("{2,3,4,5,6,7}")));
    CHECK_THROWS_AS(is_maximal(O("1"), S("{1,2}")), std::domain_error);

    fin_set ground = S("{2..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (const auto& A : members_on(a, ground)) REQUIRE(is_maximal(a, A) == maximal_bf(a, A));
    }
}

TEST_CASE("extendability does not depend on the appended element") {
    fin_set ground = S("{2..9}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (const auto& A : members_on(a, ground)) {
            if (A.empty()) continue;
            bool first = is_member(a, A.with(A.max() + 1));
            for (int k = A.max() + 2; k <= A.max() + 4; ++k)
                REQUIRE(is_member(a, A.with(k)) == first);
            REQUIRE(first == !is_maximal(a, A));
        }
    }
}

TEST_CASE("enumeration in colex order") {
    auto m0 = members_on(O("0"), S("{1,2,3}"));
    REQUIRE(m0 == std::vector<fin_set>{S("{}"), S("{1}"), S("{2}"), S("{3}")});

    auto m1 = members_on(O("1"), S("{1,2,3}"));
    REQUIRE(m1 == std::vector<fin_set>{S("{}"), S("{1}"), S("{2}"), S("{3}"), S("{2,3}")});

    // count matches a plain powerset filter
    fin_set ground = S("{2..7}");
    std::size_t count = 0;
    for (const auto& A : all_subsets(ground))
        if (member_bf(O("2"), A)) ++count;
    CHECK(members_on(O("2"), ground).size() == count);
}

TEST_CASE("hereditary and spreading on sampled grounds") {
    fin_set ground = S("{2..8}");
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        auto members = members_on(a, ground);
        for (const auto& A : members) {
            // hereditary: arbitrary subsets stay inside
            for (const auto& B : all_subsets(A))
                REQUIRE(is_member(a, B));
            // spreading: coordinatewise bumps stay inside
            for (int i = 0; i < A.size(); ++i) {
                fin_set spread = A;
                spread.elems[i] += 1;
                if (i + 1 < A.size() && spread.elems[i] >= spread.elems[i + 1]) continue;
                REQUIRE(is_member(a, spread));
            }
            // backwards spreading: lower the top element by one
            if (!A.empty() && (A.size() == 1 ? A.max() > 1 : A.elems[A.size() - 2] < A.max() - 1)) {
                fin_set back = A;
                back.elems.back() -= 1;
                REQUIRE(is_member(a, back));
            }
        }
    }
}

TEST_CASE("singleton law") {
    for (const auto& as : kAlphaList) {
        ordinal a = O(as);
        for (int n = 1; n <= 12; ++n) REQUIRE(is_member(a, fin_set{n}));
        // {1} is the only member containing 1 once the level is at least 1
        fin_set ground = S("{1..7}");
        for (const auto& A : members_on(a, ground))
            if (A.contains(1)) REQUIRE(A == fin_set{1});
    }
}

TEST_CASE("canonical hierarchy is monotone along approximants") {
    fin_set ground = S("{1..6}");
    for (const auto& as : {"w", "w^(2)", "w^(w)"}) {
        ordinal a = O(as);
        for (int n = 1; n <= 3; ++n) {
            ordinal lo = lambda_approx(a, n), hi = lambda_approx(a, n + 1);
            for (const auto& A : members_on(lo, ground)) {
                REQUIRE(is_member(hi, A));
                // approximant members sitting at or beyond n belong to the limit family
                if (A.empty() || A.min() >= n) REQUIRE(is_member(a, A));
            }
        }
    }
}

TEST_CASE("hierarchy monotone at tower exponents") {
    // S at the approximants of w^(w + 1) grows along n on truncations
    fin_set ground = S("{1..5}");
    ordinal a = O("w^(w + 1)");
    for (int n = 1; n <= 2; ++n) {
        ordinal lo = lambda_approx(a, n), hi = lambda_approx(a, n + 1);
        REQUIRE(lo == mul(O("w^(w)"), ordinal::from_int(n)));
        for (const auto& A : members_on(lo, ground)) REQUIRE(is_member(hi, A));
    }
}

TEST_CASE("fine families") {
    ordinal b = O("w");
    CHECK(fine_is_member(b, O("0"), S("{}")));
    CHECK_FALSE(fine_is_member(b, O("0"), S("{1}")));
    for (int k = 1; k <= 4; ++k)
        for (const auto& A : all_subsets(S("{1..6}")))
            REQUIRE(fine_is_member(b, O(std::to_string(k)), A) == (A.size() <= k));
    CHECK(fine_is_member(O("w"), O("w"), S("{3,4,5}")));
    CHECK_FALSE(fine_is_member(O("w"), O("w"), S("{3,4,5,6}")));
    CHECK_THROWS_AS(fine_is_member(O("w*2"), O("w"), S("{}")), std::domain_error);
    CHECK_THROWS_AS(fine_is_member(O("w"), O("w*2"), S("{}")), std::domain_error);

    // maximality: peeled sizes must land exactly
    CHECK(fine_is_maximal(b, O("2"), S("{4,9}")));
    CHECK_FALSE(fine_is_maximal(b, O("2"), S("{4}")));
    CHECK(fine_is_maximal(O("w"), O("w"), S("{3,4,5}")));

    // the join law: the fine family at g1 + g2 is obtained by putting a
    // member at level g2 before a member at level g1
    ordinal bb = O("w^(w)");
    fin_set ground = S("{1..7}");
    std::vector<std::pair<std::string, std::string>> splits = {
        {"w", "2"}, {"w", "w"}, {"w*2", "1"}, {"w^(2)", "w"}};
    for (const auto& [g1s, g2s] : splits) {
        ordinal g1 = O(g1s), g2 = O(g2s), g = add(g1, g2);
        for (const auto& A : all_subsets(ground)) {
            bool joined = false;
            for (int cut = 0; cut <= A.size() && !joined; ++cut)
                joined = fine_is_member(bb, g2, A.prefix(cut)) &&
                         fine_is_member(bb, g1, fin_set(std::vector<int>(A.elems.begin() + cut,
                                                                         A.elems.end())));
            REQUIRE(joined == fine_is_member(bb, g, A));
        }
    }
}

TEST_CASE("fine hierarchy monotone along approximants") {
    fin_set ground = S("{1..7}");
    for (const auto& bs : {"w", "w^(w)"}) {
        ordinal b = O(bs);
        for (int n = 1; n <= 4; ++n) {
            ordinal lo = eta_approx(b, b, n), hi = eta_approx(b, b, n + 1);
            for (const auto& A : all_subsets(ground)) {
                if (fine_is_member(b, lo, A)) REQUIRE(fine_is_member(b, hi, A));
                if (fine_is_member(b, lo, A) && (A.empty() || A.min() >= n))
                    REQUIRE(fine_is_member(b, b, A));
            }
        }
    }
}

TEST_CASE("shared caches are safe under concurrent use") {
    fin_set ground = S("{2..9}");
    auto worker = [&]() {
        long hits = 0;
        for (const auto& as : {"2", "w", "w*2"}) {
            ordinal a = O(as);
            for (const auto& A : all_subsets(ground))
                if (is_member(a, A)) ++hits;
        }
        return hits;
    };
    std::vector<std::future<long>> futures;
    for (int t = 0; t < 4; ++t) futures.push_back(std::async(std::launch::async, worker));
    std::vector<long> results;
    for (auto& f : futures) results.push_back(f.get());
    for (long r : results) REQUIRE(r == results.front());
}

TEST_CASE("snapshot derivative") {
    family_snapshot just_empty{S("{1,2,3}"), {S("{}")}};
    CHECK(derivative(just_empty).members.empty());

    // on S_1 over {2..7} the derivative removes exactly the sets with
    // size == min
    auto f = snapshot_of(O("1"), S("{2..7}"));
    auto d = derivative(f);
    for (const auto& A : f.members) {
        bool removed = !d.contains(A);
        bool truly_maximal = !A.empty() && A.size() == A.min();
        REQUIRE(removed == truly_maximal);
    }

    CHECK(derivative_steps_to_empty(snapshot_of(O("0"), S("{1..5}"))) == 2);

    // deeper levels drain more slowly; the counts are frozen from a first run
    CHECK(derivative_steps_to_empty(snapshot_of(O("1"), S("{2..7}"))) == 5);
    CHECK(derivative_steps_to_empty(snapshot_of(O("2"), S("{2..7}"))) == 7);
}

TEST_CASE("snapshot validation and spread") {
    family_snapshot bad{S("{1,2}"), {S("{}"), S("{1,2}")}};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    family_snapshot f{S("{1}"), {S("{}"), S("{1}")}};
    auto g = spread_onto(f, S("{5,9}"));
    REQUIRE(g.members == std::vector<fin_set>{S("{}"), S("{5}")});

    // spreads of S_1 members land inside S_1 on the target ground
    auto s1 = snapshot_of(O("1"), S("{1,2,3}"));
    auto onto = spread_onto(s1, S("{2,4,6}"));
    for (const auto& A : onto.members) REQUIRE(is_member(O("1"), A));

    // identity relabeling
    auto same = spread_onto(s1, S("{1,2,3}"));
    REQUIRE(same.members == s1.members);

    CHECK_THROWS_AS(spread_onto(s1, S("{4}")), std::domain_error);
}

TEST_CASE("block decompositions match membership") {
    CHECK(decomposition_check(O("1"), O("1"), S("{2,3,4,5,6,7}")));
    CHECK(is_member(O("2"), S("{2,3,4,5,6,7}")));

    // a zero part reduces to plain membership at the other level
    for (const auto& A : members_on(O("w"), S("{2..7}"))) {
        REQUIRE(decomposition_check(O("w"), O("0"), A));
        REQUIRE(decomposition_check(O("0"), O("w"), A));
    }

    std::vector<std::pair<std::string, std::string>> splits = {
        {"1", "1"}, {"2", "1"}, {"1", "2"}, {"w", "w"}, {"w", "1"}, {"w", "2"}};
    fin_set ground = S("{2..10}");
    for (const auto& [g1s, g2s] : splits) {
        ordinal g1 = O(g1s), g2 = O(g2s), g = add(g1, g2);
        for (const auto& A : all_subsets(ground))
            REQUIRE(decomposition_check(g1, g2, A) == is_member(g, A));
    }

    CHECK_THROWS_AS(decomposition_check(O("w + 5"), O("w"), S("{2}")), std::domain_error);
}

TEST_CASE("empirical shift search") {
    // S_2 sets far enough to the right fit inside S_3 on this ground
    auto n = least_shift(O("2"), O("3"), S("{1..8}"));
    REQUIRE(n.has_value());
    CHECK(*n >= 1);
    fin_set tail;
    for (int x = *n; x <= 8; ++x) tail.elems.push_back(x);
    for (const auto& A : members_on(O("2"), tail)) REQUIRE(is_member(O("3"), A));
}
