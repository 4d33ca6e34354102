#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace schreier {

// A finite subset of the positive integers, kept strictly increasing.
// Conventions from the ambient order: max({}) = 0 and min({}) = +infinity,
// so {} > A and A < {} hold for every A.
struct fin_set {
    std::vector<int> elems;

    fin_set() = default;
    explicit fin_set(std::vector<int> xs) : elems(std::move(xs)) { validate(); }
    fin_set(std::initializer_list<int> xs) : elems(xs) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (elems[i] < 1) throw std::domain_error("fin_set elements must be positive");
            if (i > 0 && elems[i - 1] >= elems[i])
                throw std::domain_error("fin_set elements must be strictly increasing");
        }
    }

    bool empty() const { return elems.empty(); }
    int size() const { return static_cast<int>(elems.size()); }
    int min() const {
        if (empty()) throw std::domain_error("min of empty set");
        return elems.front();
    }
    int max() const {
        if (empty()) throw std::domain_error("max of empty set");
        return elems.back();
    }
    int max0() const { return empty() ? 0 : elems.back(); }

    bool contains(int x) const { return std::binary_search(elems.begin(), elems.end(), x); }

    // first k elements
    fin_set prefix(int k) const {
        fin_set p;
        p.elems.assign(elems.begin(), elems.begin() + std::min<std::size_t>(k, elems.size()));
        return p;
    }
    // drop the largest element ({}' = {})
    fin_set drop_max() const { return empty() ? fin_set{} : prefix(size() - 1); }
    fin_set drop_min() const {
        fin_set p;
        if (!empty()) p.elems.assign(elems.begin() + 1, elems.end());
        return p;
    }
    fin_set with(int x) const {
        fin_set r = *this;
        r.elems.insert(std::lower_bound(r.elems.begin(), r.elems.end(), x), x);
        r.validate();
        return r;
    }

    bool operator==(const fin_set& o) const { return elems == o.elems; }
    bool operator!=(const fin_set& o) const { return elems != o.elems; }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(elems[i]);
        }
        return out + "}";
    }

    static fin_set parse(const std::string& text);
};

// A extended by B: A is an initial segment of B.
inline bool is_prefix(const fin_set& a, const fin_set& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.elems.begin(), a.elems.end(), b.elems.begin());
}
inline bool is_proper_prefix(const fin_set& a, const fin_set& b) {
    return a.size() < b.size() && is_prefix(a, b);
}

// max(A) < min(B), with the empty-set conventions (always true if either is empty).
inline bool before(const fin_set& a, const fin_set& b) {
    return a.empty() || b.empty() || a.max() < b.min();
}

inline bool is_subset(const fin_set& a, const fin_set& b) {
    return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
}

// B is a spread of A: same size, coordinatewise B_i >= A_i.
inline bool is_spread_of(const fin_set& b, const fin_set& a) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (b.elems[i] < a.elems[i]) return false;
    return true;
}

inline fin_set set_union(const fin_set& a, const fin_set& b) {
    fin_set r;
    std::set_union(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                   std::back_inserter(r.elems));
    r.validate();
    return r;
}

inline fin_set set_intersection(const fin_set& a, const fin_set& b) {
    fin_set r;
    std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                          std::back_inserter(r.elems));
    return r;
}

// Colex order: compare by the largest element where the sets differ.  This is
// the consistent enumeration order used everywhere: max(A) < max(B) implies
// A comes first, initial segments come before their extensions, and {} is
// first overall.
inline bool colex_less(const fin_set& a, const fin_set& b) {
    auto ia = a.elems.rbegin();
    auto ib = b.elems.rbegin();
    for (; ia != a.elems.rend() && ib != b.elems.rend(); ++ia, ++ib)
        if (*ia != *ib) return *ia < *ib;
    return a.size() < b.size();
}

// All subsets of ground, in colex order ({} first).
inline std::vector<fin_set> all_subsets(const fin_set& ground) {
    const int n = ground.size();
    if (n > 24) throw std::domain_error("ground too large to enumerate");
    std::vector<fin_set> out;
    out.reserve(std::size_t(1) << n);
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        fin_set s;
        for (int i = 0; i < n; ++i)
            if (mask & (1ul << i)) s.elems.push_back(ground.elems[i]);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), colex_less);
    return out;
}

// Literal forms: "{2,5,9}", "{2..9}", "{}" and mixtures like "{2..4,7}".
inline fin_set fin_set::parse(const std::string& text) {
    auto fail = [&](const std::string& msg) -> void {
        throw std::domain_error("fin_set parse error in '" + text + "': " + msg);
    };
    std::string t;
    for (char c : text)
        if (c != ' ' && c != '\t') t += c;
    if (t.size() < 2 || t.front() != '{' || t.back() != '}') fail("expected {...}");
    std::string body = t.substr(1, t.size() - 2);
    fin_set r;
    if (body.empty()) return r;
    std::size_t pos = 0;
    auto read_int = [&]() -> int {
        std::size_t start = pos;
        while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9') ++pos;
        if (pos == start) fail("expected a number");
        long v = std::stol(body.substr(start, pos - start));
        if (v < 1 || v > 1000000) fail("element out of range");
        return static_cast<int>(v);
    };
    while (true) {
        int lo = read_int();
        int hi = lo;
        if (pos + 1 < body.size() && body[pos] == '.' && body[pos + 1] == '.') {
            pos += 2;
            hi = read_int();
            if (hi < lo) fail("descending range");
        }
        for (int v = lo; v <= hi; ++v) r.elems.push_back(v);
        if (pos == body.size()) break;
        if (body[pos] != ',') fail("expected ','");
        ++pos;
    }
    r.validate();
    return r;
}

}  // namespace schreier
