#pragma once

#include "schreier/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace schreier {

// Ordinals below epsilon_0 in Cantor normal form: a strictly decreasing list
// of (exponent, coefficient) terms where exponents are themselves ordinals
// and coefficients are positive integers.  The empty list is 0.  The
// representation is canonical, so equality is structural.
class ordinal {
public:
    struct term;
    using term_list = std::vector<term>;

    ordinal() = default;

    static ordinal zero() { return ordinal(); }
    static ordinal from_int(const big_int& n);
    static ordinal omega();
    // w^e * c, c >= 1
    static ordinal omega_pow(const ordinal& e, const big_int& c = 1);
    static ordinal from_terms(term_list ts);

    const term_list& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    // value of a finite ordinal
    big_int finite_value() const;
    // nonzero with smallest-exponent term having exponent >= 1
    bool is_limit() const;
    bool is_successor() const { return !is_zero() && !is_limit(); }

    std::string str() const;

private:
    term_list terms_;  // strictly decreasing exponents, coefficients >= 1
};

struct ordinal::term {
    ordinal exp;
    big_int coeff;
};

int cmp(const ordinal& a, const ordinal& b);

inline bool operator==(const ordinal& a, const ordinal& b) { return cmp(a, b) == 0; }
inline bool operator!=(const ordinal& a, const ordinal& b) { return cmp(a, b) != 0; }
inline bool operator<(const ordinal& a, const ordinal& b) { return cmp(a, b) < 0; }
inline bool operator<=(const ordinal& a, const ordinal& b) { return cmp(a, b) <= 0; }
inline bool operator>(const ordinal& a, const ordinal& b) { return cmp(a, b) > 0; }
inline bool operator>=(const ordinal& a, const ordinal& b) { return cmp(a, b) >= 0; }

inline int cmp(const ordinal& a, const ordinal& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        int e = cmp(ta[i].exp, tb[i].exp);
        if (e != 0) return e;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
    }
    if (ta.size() == tb.size()) return 0;
    return ta.size() < tb.size() ? -1 : 1;
}

inline ordinal ordinal::from_terms(term_list ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i].coeff < 1) throw std::domain_error("ordinal term with coefficient < 1");
        if (i + 1 < ts.size() && cmp(ts[i].exp, ts[i + 1].exp) <= 0)
            throw std::domain_error("ordinal terms not strictly decreasing");
    }
    ordinal o;
    o.terms_ = std::move(ts);
    return o;
}

inline ordinal ordinal::from_int(const big_int& n) {
    if (n < 0) throw std::domain_error("negative ordinal");
    ordinal o;
    if (n > 0) o.terms_.push_back(term{ordinal(), n});
    return o;
}

inline ordinal ordinal::omega() { return omega_pow(from_int(1)); }

inline ordinal ordinal::omega_pow(const ordinal& e, const big_int& c) {
    if (c < 1) throw std::domain_error("ordinal term with coefficient < 1");
    ordinal o;
    o.terms_.push_back(term{e, c});
    return o;
}

inline bool ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero());
}

inline big_int ordinal::finite_value() const {
    if (!is_finite()) throw std::domain_error("ordinal is not finite");
    return terms_.empty() ? big_int(0) : terms_[0].coeff;
}

inline bool ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exp.is_zero();
}

// CNF addition: terms of a with exponent below the leading exponent of b are
// absorbed, a boundary term with equal exponent merges coefficients.
inline ordinal add(const ordinal& a, const ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const ordinal& be = b.terms().front().exp;
    ordinal::term_list out;
    std::size_t i = 0;
    while (i < a.terms().size() && cmp(a.terms()[i].exp, be) > 0) out.push_back(a.terms()[i++]);
    ordinal::term lead = b.terms().front();
    if (i < a.terms().size() && cmp(a.terms()[i].exp, be) == 0) lead.coeff += a.terms()[i].coeff;
    out.push_back(std::move(lead));
    out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
    return ordinal::from_terms(std::move(out));
}

// CNF multiplication.  For a > 0: a * w^f c = w^(e1+f) c for f > 0 (e1 the
// leading exponent of a), and a * m multiplies the leading coefficient only.
inline ordinal mul(const ordinal& a, const ordinal& b) {
    if (a.is_zero() || b.is_zero()) return ordinal::zero();
    ordinal result;
    const ordinal& e1 = a.terms().front().exp;
    for (const auto& t : b.terms()) {
        if (!t.exp.is_zero()) {
            result = add(result, ordinal::omega_pow(add(e1, t.exp), t.coeff));
        } else {
            ordinal::term_list scaled = a.terms();
            scaled.front().coeff *= t.coeff;
            result = add(result, ordinal::from_terms(std::move(scaled)));
        }
    }
    return result;
}

// Splits g at its j-th CNF term (0-based, leading first), moving m1 of that
// term's coefficient into the left part:
//   g1 = t_0 + ... + t_{j-1} + w^{e_j} m1,   g2 = w^{e_j} (m_j - m1) + rest,
// so that add(g1, g2) == g.
inline std::pair<ordinal, ordinal> split(const ordinal& g, std::size_t j, const big_int& m1) {
    const auto& ts = g.terms();
    if (j >= ts.size()) throw std::domain_error("split: term index out of range");
    if (m1 < 0 || m1 > ts[j].coeff) throw std::domain_error("split: coefficient out of range");
    ordinal::term_list left(ts.begin(), ts.begin() + j);
    if (m1 > 0) left.push_back(ordinal::term{ts[j].exp, m1});
    ordinal::term_list right;
    if (ts[j].coeff - m1 > 0) right.push_back(ordinal::term{ts[j].exp, ts[j].coeff - m1});
    right.insert(right.end(), ts.begin() + j + 1, ts.end());
    return {ordinal::from_terms(std::move(left)), ordinal::from_terms(std::move(right))};
}

namespace detail {
// a with the coefficient of its last CNF term decremented (the term is
// dropped when the coefficient reaches zero).
inline ordinal drop_one_unit(const ordinal& a) {
    ordinal::term_list ts = a.terms();
    if (ts.empty()) throw std::domain_error("cannot decrement zero");
    if (ts.back().coeff > 1)
        --ts.back().coeff;
    else
        ts.pop_back();
    return ordinal::from_terms(std::move(ts));
}
}  // namespace detail

// The canonical approximating sequence of a limit ordinal a < eps_0:
//   - tail term w^x m with more than one unit in the CNF:
//       lambda(a, n) = (a - w^x) + lambda(w^x, n)
//   - a = w^(z+1): lambda(a, n) = w^z * n
//   - a = w^x, x limit: lambda(a, n) = w^(lambda(x, n))
// It is strictly increasing in n with supremum a.
inline ordinal lambda_approx(const ordinal& a, const big_int& n) {
    if (!a.is_limit()) throw std::domain_error("lambda_approx: ordinal is not a limit");
    if (n < 1) throw std::domain_error("lambda_approx: n must be positive");
    const auto& ts = a.terms();
    if (ts.size() > 1 || ts.back().coeff > 1) {
        ordinal head = detail::drop_one_unit(a);
        return add(head, lambda_approx(ordinal::omega_pow(ts.back().exp), n));
    }
    const ordinal& x = ts[0].exp;  // a = w^x, x >= 1
    if (x.is_limit()) return ordinal::omega_pow(lambda_approx(x, n));
    return ordinal::omega_pow(detail::drop_one_unit(x), n);
}

// True iff b = w^(w^x) for some x; reports x when asked.
inline bool is_omega_tower(const ordinal& b, ordinal* xi_out = nullptr) {
    if (b.terms().size() != 1 || b.terms()[0].coeff != 1) return false;
    const ordinal& e = b.terms()[0].exp;
    if (e.terms().size() != 1 || e.terms()[0].coeff != 1) return false;
    if (xi_out) *xi_out = e.terms()[0].exp;
    return true;
}

// Approximating sequence eta(g, n) for limit g relative to a base
// b = w^(w^x), chosen so that mul(b, eta(g, n)) == lambda_approx(mul(b, g), n).
// Under the canonical lambda above this is lambda_approx(g, n); the defining
// identity is kept as a test obligation rather than assumed.
inline ordinal eta_approx(const ordinal& b, const ordinal& g, const big_int& n) {
    if (!is_omega_tower(b)) throw std::domain_error("eta_approx: base is not of the form w^(w^x)");
    if (!g.is_limit()) throw std::domain_error("eta_approx: ordinal is not a limit");
    return lambda_approx(g, n);
}

// --- literal grammar -------------------------------------------------------
//   ord  := term ("+" term)* | "0"
//   term := "w" ("^" "(" ord ")")? ("*" nat)? | nat
// Omitted exponent means 1, omitted coefficient means 1.  The formatter emits
// terms in strictly decreasing exponent order; the parser accepts any term
// order and canonicalizes through add().

namespace detail {

struct ordinal_parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ordinal_parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::domain_error("ordinal parse error at position " + std::to_string(pos) + ": " + msg);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    big_int number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) fail("expected a number");
        return big_int(s.substr(start, pos - start));
    }
    ordinal term() {
        skip_ws();
        if (pos < s.size() && s[pos] == 'w') {
            ++pos;
            ordinal e = ordinal::from_int(1);
            if (eat('^')) {
                if (!eat('(')) fail("expected '(' after '^'");
                e = expr();
                if (!eat(')')) fail("expected ')'");
            }
            big_int c = 1;
            if (eat('*')) {
                c = number();
                if (c < 1) fail("coefficient must be >= 1");
            }
            return ordinal::omega_pow(e, c);
        }
        big_int c = number();
        if (c < 1) fail("term must be >= 1 (use \"0\" for zero)");
        return ordinal::from_int(c);
    }
    ordinal expr() {
        ordinal r = term();
        while (eat('+')) r = add(r, term());
        return r;
    }
    ordinal parse() {
        skip_ws();
        ordinal r;
        if (pos < s.size() && s[pos] == '0') {
            ++pos;
        } else {
            r = expr();
        }
        skip_ws();
        if (pos != s.size()) fail("unexpected trailing input");
        return r;
    }
};

}  // namespace detail

inline ordinal parse_ordinal(const std::string& text) {
    return detail::ordinal_parser(text).parse();
}

inline std::string ordinal::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += " + ";
        const term& t = terms_[i];
        if (t.exp.is_zero()) {
            out += t.coeff.str();
            continue;
        }
        out += "w";
        if (!(t.exp.is_finite() && t.exp.finite_value() == 1)) out += "^(" + t.exp.str() + ")";
        if (t.coeff != 1) out += "*" + t.coeff.str();
    }
    return out;
}

inline std::string format_ordinal(const ordinal& a) { return a.str(); }

}  // namespace schreier
