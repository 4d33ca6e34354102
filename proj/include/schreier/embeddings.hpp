#pragma once

#include "schreier/metrics.hpp"
#include "schreier/spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace schreier {

enum class embedding_kind { ell1, summing };

inline embedding_kind parse_embedding_kind(const std::string& s) {
    if (s == "ell1") return embedding_kind::ell1;
    if (s == "summing") return embedding_kind::summing;
    throw std::domain_error("unknown embedding kind: '" + s + "'");
}

// Isometric embedding into l1: one coordinate per prefix, placed at the top
// of the prefix's spread code so that distinct prefixes never collide.
inline sparse_vec phi_ell1(const spread_codec& codec, const ordinal& a, const fin_set& A) {
    if (!is_member(a, A)) throw std::domain_error("phi_ell1: set is not a member");
    sparse_vec v;
    for (int k = 1; k <= A.size(); ++k) {
        fin_set D = A.prefix(k);
        v.set(codec.encode(D).max(), zeta(a, D));
    }
    return v;
}

// Embedding into the summing-norm sequence space with unit-vector images:
// coordinate max(D) carries the weight of the prefix D.
inline sparse_vec phi_summing(const ordinal& a, const fin_set& A) {
    if (!is_member(a, A)) throw std::domain_error("phi_summing: set is not a member");
    sparse_vec v;
    for (int k = 1; k <= A.size(); ++k) v.set(A.elems[k - 1], zeta(a, A.prefix(k)));
    return v;
}

// Exact two-sided distortion data of an embedding over all member pairs of a
// ground restriction: the smallest ratio of image distance to the interlacing
// distance and the largest ratio to the tree distance.  Witnesses are the
// first extremal pairs in colex pair order, so reports are deterministic.
struct pair_row {
    fin_set A, B;
    rat d1_val, dinf_val, norm_diff;
};

struct distortion_report {
    ordinal alpha;
    fin_set ground;
    embedding_kind kind;
    long pair_count = 0;
    std::optional<rat> lower_ratio;  // min ||dPhi|| / dinf over pairs with dinf > 0
    std::optional<rat> upper_ratio;  // max ||dPhi|| / d1 over pairs with d1 > 0
    std::optional<pair_row> lower_witness, upper_witness;
    std::vector<pair_row> rows;  // all pairs, colex order
};

inline distortion_report audit(const ordinal& a, const fin_set& ground, embedding_kind kind) {
    distortion_report rep;
    rep.alpha = a;
    rep.ground = ground;
    rep.kind = kind;
    auto members = members_on(a, ground);
    spread_codec codec(ground.empty() ? 0 : ground.max());
    std::vector<sparse_vec> images;
    images.reserve(members.size());
    for (const auto& A : members)
        images.push_back(kind == embedding_kind::ell1 ? phi_ell1(codec, a, A) : phi_summing(a, A));
    const norm_kind nk = kind == embedding_kind::ell1 ? norm_kind::l1 : norm_kind::summing;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            pair_row row;
            row.A = members[i];
            row.B = members[j];
            row.d1_val = d1(a, row.A, row.B);
            row.dinf_val = dinf(a, row.A, row.B);
            row.norm_diff = norm(images[i] - images[j], nk);
            ++rep.pair_count;
            if (row.dinf_val != 0) {
                rat ratio = row.norm_diff / row.dinf_val;
                if (!rep.lower_ratio || ratio < *rep.lower_ratio) {
                    rep.lower_ratio = ratio;
                    rep.lower_witness = row;
                }
            }
            if (row.d1_val != 0) {
                rat ratio = row.norm_diff / row.d1_val;
                if (!rep.upper_ratio || ratio > *rep.upper_ratio) {
                    rep.upper_ratio = ratio;
                    rep.upper_witness = row;
                }
            }
            rep.rows.push_back(std::move(row));
        }
    return rep;
}

}  // namespace schreier
