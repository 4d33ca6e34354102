#pragma once

#include "schreier/analysis.hpp"
#include "schreier/embeddings.hpp"
#include "schreier/metrics.hpp"

#include <json.hpp>

#include <string>

namespace schreier {

// All reports are emitted as ordered JSON with a schema version, rationals as
// "p/q" strings, and container orders fixed by the library, so identical
// inputs produce identical bytes.
using json = nlohmann::ordered_json;

inline int json_decimal_digits = 0;  // 0 = exact "p/q"; set by --decimal for human output

inline json j_rat(const rat& r) {
    if (json_decimal_digits <= 0) return rat_str(r);
    // round-half-away from zero to the requested number of digits
    big_int scale = 1;
    for (int i = 0; i < json_decimal_digits; ++i) scale *= 10;
    big_int scaled_num = numerator(r) * scale * 2 + (r >= 0 ? denominator(r) : -denominator(r));
    big_int q = scaled_num / (denominator(r) * 2);
    bool neg = q < 0;
    std::string digits = (neg ? big_int(-q) : q).str();
    while (digits.size() < std::size_t(json_decimal_digits) + 1) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - json_decimal_digits, '.');
    return (neg ? "-" : "") + digits;
}

inline json j_finset(const fin_set& s) {
    json arr = json::array();
    for (int x : s.elems) arr.push_back(x);
    return arr;
}

inline json j_family(const std::vector<fin_set>& fams) {
    json arr = json::array();
    for (const auto& s : fams) arr.push_back(j_finset(s));
    return arr;
}

inline json j_snapshot(const family_snapshot& f) {
    return j_family(f.members);
}

inline json j_mass_vector(const std::map<int, rat>& v) {
    json obj = json::object();
    for (const auto& [c, r] : v) obj[std::to_string(c)] = j_rat(r);
    return obj;
}

inline json j_sparse_vec(const sparse_vec& v) {
    json obj = json::object();
    for (const auto& [c, r] : v.entries) obj[std::to_string(c)] = j_rat(r);
    return obj;
}

inline json j_tree(const analysis_tree& t) {
    json node;
    node["node"] = j_finset(t.node);
    if (!t.children.empty()) {
        json kids = json::array();
        for (const auto& c : t.children) kids.push_back(j_tree(c));
        node["children"] = kids;
    }
    return node;
}

inline json j_components(const component_decomp& cd) {
    json obj;
    obj["s"] = cd.s;
    obj["parts"] = j_family(cd.parts);
    return obj;
}

inline json j_convex_family(const convex_family& fam) {
    json obj;
    obj["beta"] = fam.beta.str();
    obj["gamma"] = fam.gamma.str();
    obj["B"] = j_finset(fam.B);
    json entries = json::array();
    for (const auto& [A, r] : fam.entries) {
        json e;
        e["A"] = j_finset(A);
        json coeffs = json::array();
        for (const auto& v : r) coeffs.push_back(j_rat(v));
        e["r"] = coeffs;
        entries.push_back(e);
    }
    obj["entries"] = entries;
    return obj;
}

inline json j_pair_row(const pair_row& row) {
    json e;
    e["A"] = j_finset(row.A);
    e["B"] = j_finset(row.B);
    e["d1"] = j_rat(row.d1_val);
    e["dinf"] = j_rat(row.dinf_val);
    e["norm_diff"] = j_rat(row.norm_diff);
    return e;
}

inline json j_distortion_report(const distortion_report& rep) {
    json obj;
    obj["schema"] = 1;
    obj["op"] = "audit";
    obj["alpha"] = rep.alpha.str();
    obj["ground"] = j_finset(rep.ground);
    obj["kind"] = rep.kind == embedding_kind::ell1 ? "ell1" : "summing";
    // the spread codes are a pure function of this bound, so recording it
    // makes the report reproducible
    obj["codec"] = json{{"bound", rep.ground.empty() ? 0 : rep.ground.max()}};
    obj["pairs"] = rep.pair_count;
    obj["lower_ratio"] = rep.lower_ratio ? j_rat(*rep.lower_ratio) : json(nullptr);
    obj["upper_ratio"] = rep.upper_ratio ? j_rat(*rep.upper_ratio) : json(nullptr);
    obj["ratios_defined"] = rep.lower_ratio.has_value() && rep.upper_ratio.has_value();
    obj["lower_witness"] = rep.lower_witness ? j_pair_row(*rep.lower_witness) : json(nullptr);
    obj["upper_witness"] = rep.upper_witness ? j_pair_row(*rep.upper_witness) : json(nullptr);
    return obj;
}

inline std::string csv_quote(const std::string& field) {
    return "\"" + field + "\"";
}

inline std::string audit_csv(const distortion_report& rep) {
    std::string out = "A,B,d1,dinf,norm_diff\n";
    for (const auto& row : rep.rows) {
        out += csv_quote(row.A.str()) + "," + csv_quote(row.B.str()) + "," + rat_str(row.d1_val) +
               "," + rat_str(row.dinf_val) + "," + rat_str(row.norm_diff) + "\n";
    }
    return out;
}

inline json j_stability(const stability_table& t) {
    json obj;
    obj["schema"] = 1;
    obj["op"] = "stability";
    obj["metric"] = t.kind == metric_kind::d1 ? "d1" : "dinf";
    obj["alpha"] = t.alpha.str();
    json matrix = json::array();
    for (const auto& row : t.entries) {
        json r = json::array();
        for (const auto& v : row) r.push_back(j_rat(v));
        matrix.push_back(r);
    }
    obj["matrix"] = matrix;
    json rv = json::array(), cv = json::array();
    for (const auto& v : t.row_values) rv.push_back(j_rat(v));
    for (const auto& v : t.col_values) cv.push_back(j_rat(v));
    obj["row_values"] = rv;
    obj["col_values"] = cv;
    obj["rows_stabilized"] = t.rows_stabilized;
    obj["cols_stabilized"] = t.cols_stabilized;
    obj["row_iterated_limit"] = j_rat(t.row_iterated);
    obj["col_iterated_limit"] = j_rat(t.col_iterated);
    obj["verdict"] = t.iterated_limits_equal ? "stable" : "unstable";
    return obj;
}

inline std::string stability_csv(const stability_table& t) {
    std::string out;
    for (const auto& row : t.entries) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += rat_str(row[i]);
        }
        out += "\n";
    }
    return out;
}

inline json j_smallness(const smallness_report& rep) {
    json obj;
    obj["schema"] = 1;
    obj["op"] = "smallness";
    obj["alpha"] = rep.alpha.str();
    obj["gamma"] = rep.gamma.str();
    obj["ground"] = j_finset(rep.ground);
    obj["epsilon"] = j_rat(rep.epsilon);
    obj["max_mass"] = j_rat(rep.max_mass);
    obj["witness_B"] = j_finset(rep.witness_B);
    obj["witness_A"] = j_finset(rep.witness_A);
    obj["holds_on_this_ground"] = rep.holds_on_ground;
    return obj;
}

// FamilySnapshot wire format: a JSON array of arrays in colex order.
inline family_snapshot snapshot_from_json(const json& j, const fin_set& ground) {
    family_snapshot f;
    f.ground = ground;
    for (const auto& arr : j) {
        fin_set s;
        for (const auto& x : arr) s.elems.push_back(x.get<int>());
        s.validate();
        f.members.push_back(std::move(s));
    }
    f.normalize();
    f.validate();
    return f;
}

}  // namespace schreier
