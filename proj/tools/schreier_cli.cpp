// Command-line reports over the Schreier-family toolkit.  Every subcommand
// writes one deterministic JSON (or CSV) document: identical invocations
// produce identical bytes.  Exit status: 0 success, 1 domain error, 2 usage.

#include "schreier/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace schreier;

struct output_sink {
    std::string path;  // empty = stdout

    void write(const std::string& bytes) const {
        if (path.empty()) {
            std::cout << bytes;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::domain_error("cannot open output file: " + path);
        out << bytes;
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json base_report(const std::string& op) {
    json j;
    j["schema"] = 1;
    j["op"] = op;
    return j;
}

void add_common(CLI::App* cmd, output_sink& sink, int& decimal) {
    cmd->add_option("--out", sink.path, "write the report to this file instead of stdout");
    cmd->add_option("--decimal", decimal,
                    "render rationals with this many decimal digits (human output only)");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace schreier;

    CLI::App app{
        "schreier: exact combinatorics of ordinal-indexed set families.\n"
        "Membership and enumeration for the transfinite Schreier hierarchy and its\n"
        "fine, doubly indexed refinement; repeated-average weights; the weighted\n"
        "tree and interlacing distances; block-analysis of maximal sets; special\n"
        "convex-combination families; and exact distortion audits of the l1 and\n"
        "summing-norm embeddings.  Ordinals are written in the literal grammar\n"
        "\"w^(w)*2 + w*3 + 5\"; sets as \"{2,3,5}\" or \"{2..9}\".  All values are\n"
        "exact rationals rendered as \"p/q\"."};
    app.require_subcommand(1);

    std::string alpha_s, beta_s = "w", gamma_s = "1", alpha0_s = "0";
    std::string set_s, set_a_s, set_b_s, ground_s, kind_s, eps_s = "1/2", family_file;
    int depth = 8, steps = 1, demote_child = 0, decimal = 0;
    bool csv = false, with_s1 = false;
    std::string fine_beta_s;
    output_sink sink;

    auto* c_enum = app.add_subcommand("enumerate", "list the members of S_alpha drawn from a ground set");
    c_enum->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_enum->add_option("--ground", ground_s, "ground set literal")->required();
    add_common(c_enum, sink, decimal);

    auto* c_member = app.add_subcommand("member", "test membership in S_alpha (or a fine family)");
    c_member->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_member->add_option("--set", set_s, "set literal")->required();
    c_member->add_option("--fine-beta", fine_beta_s,
                         "test the fine family with this base instead; --alpha is then the second index");
    add_common(c_member, sink, decimal);

    auto* c_maximal = app.add_subcommand("maximal", "test maximality in S_alpha (or a fine family)");
    c_maximal->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_maximal->add_option("--set", set_s, "set literal")->required();
    c_maximal->add_option("--fine-beta", fine_beta_s, "test the fine family with this base instead");
    add_common(c_maximal, sink, decimal);

    auto* c_zeta = app.add_subcommand("zeta", "repeated-average coefficient of a set");
    c_zeta->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_zeta->add_option("--set", set_s, "set literal")->required();
    c_zeta->add_flag("--s1", with_s1, "include the optimal S_1 decomposition and l1 defect");
    add_common(c_zeta, sink, decimal);

    auto* c_zvec = app.add_subcommand("zvec", "repeated-average probability vector of a maximal set");
    c_zvec->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_zvec->add_option("--set", set_s, "set literal")->required();
    add_common(c_zvec, sink, decimal);

    auto* c_d1 = app.add_subcommand("d1", "weighted tree distance between two members");
    c_d1->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_d1->add_option("--A", set_a_s, "first set")->required();
    c_d1->add_option("--B", set_b_s, "second set")->required();
    add_common(c_d1, sink, decimal);

    auto* c_dinf = app.add_subcommand("dinf", "weighted interlacing distance between two members");
    c_dinf->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_dinf->add_option("--A", set_a_s, "first set")->required();
    c_dinf->add_option("--B", set_b_s, "second set")->required();
    add_common(c_dinf, sink, decimal);

    auto* c_audit = app.add_subcommand("audit", "exact distortion report of an embedding over all member pairs");
    c_audit->add_option("--alpha,-a", alpha_s, "level ordinal")->required();
    c_audit->add_option("--ground", ground_s, "ground set literal")->required();
    c_audit->add_option("--kind", kind_s, "embedding kind: ell1 | summing")->required();
    c_audit->add_flag("--csv", csv, "emit the per-pair dump as CSV instead of the JSON report");
    add_common(c_audit, sink, decimal);

    auto* c_analyze = app.add_subcommand("analyze", "block-analysis tree, components and e-family of a set");
    c_analyze->add_option("--beta", beta_s, "base ordinal, of the form w^(w^x)")->required();
    c_analyze->add_option("--gamma", gamma_s, "second index, 1 <= gamma <= beta")->required();
    c_analyze->add_option("--B", set_b_s, "the analysed set")->required();
    add_common(c_analyze, sink, decimal);

    auto* c_convex = app.add_subcommand("convex", "special family of convex combinations for a set");
    c_convex->add_option("--beta", beta_s, "base ordinal, of the form w^(w^x)")->required();
    c_convex->add_option("--gamma", gamma_s, "second index")->required();
    c_convex->add_option("--B", set_b_s, "the underlying set")->required();
    c_convex->add_option("--alpha0", alpha0_s, "averaging level for the coefficients")->required();
    c_convex->add_option("--demote", demote_child,
                         "also emit the renormalized family on this child block (1-based)");
    add_common(c_convex, sink, decimal);

    auto* c_stab = app.add_subcommand("stability", "iterated-limit table for the two metrics");
    c_stab->add_option("--kind", kind_s, "table kind: d1 | dinf")->required();
    c_stab->add_option("--depth", depth, "table size (default 8, minimum 4)");
    c_stab->add_flag("--csv", csv, "emit the matrix as CSV instead of the JSON report");
    add_common(c_stab, sink, decimal);

    auto* c_small = app.add_subcommand("smallness", "largest mass a level-alpha average puts on a level-gamma set");
    c_small->add_option("--alpha,-a", alpha_s, "averaging level")->required();
    c_small->add_option("--gamma", gamma_s, "mass level, gamma < alpha")->required();
    c_small->add_option("--ground", ground_s, "ground set literal")->required();
    c_small->add_option("--eps", eps_s, "threshold to compare against (rational)");
    add_common(c_small, sink, decimal);

    auto* c_deriv = app.add_subcommand("derivative", "iterate the snapshot derivative of a finite family");
    c_deriv->add_option("--alpha,-a", alpha_s, "build the snapshot from S_alpha on the ground");
    c_deriv->add_option("--ground", ground_s, "ground set literal")->required();
    c_deriv->add_option("--family-file", family_file, "read the snapshot from a JSON array of arrays instead");
    c_deriv->add_option("--steps", steps, "number of derivative steps (default 1)");
    add_common(c_deriv, sink, decimal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        json_decimal_digits = decimal;

        if (c_enum->parsed()) {
            ordinal a = parse_ordinal(alpha_s);
            fin_set ground = fin_set::parse(ground_s);
            json j = base_report("enumerate");
            j["alpha"] = a.str();
            j["ground"] = j_finset(ground);
            j["members"] = j_family(members_on(a, ground));
            sink.write(dump(j));
        } else if (c_member->parsed() || c_maximal->parsed()) {
            bool want_max = c_maximal->parsed();
            ordinal a = parse_ordinal(alpha_s);
            fin_set s = fin_set::parse(set_s);
            json j = base_report(want_max ? "maximal" : "member");
            bool result;
            if (!fine_beta_s.empty()) {
                ordinal b = parse_ordinal(fine_beta_s);
                result = want_max ? fine_is_maximal(b, a, s) : fine_is_member(b, a, s);
                j["family"] = "fine";
                j["beta"] = b.str();
                j["gamma"] = a.str();
            } else {
                result = want_max ? is_maximal(a, s) : is_member(a, s);
                j["family"] = "schreier";
                j["alpha"] = a.str();
            }
            j["set"] = j_finset(s);
            j["result"] = result;
            sink.write(dump(j));
        } else if (c_zeta->parsed()) {
            ordinal a = parse_ordinal(alpha_s);
            fin_set s = fin_set::parse(set_s);
            json j = base_report("zeta");
            j["alpha"] = a.str();
            j["set"] = j_finset(s);
            j["value"] = j_rat(zeta(a, s));
            if (with_s1) {
                auto dec = s1_decomposition(s);
                j["s1_blocks"] = j_family(dec.blocks);
                j["l1"] = dec.l1;
            }
            sink.write(dump(j));
        } else if (c_zvec->parsed()) {
            ordinal a = parse_ordinal(alpha_s);
            fin_set s = fin_set::parse(set_s);
            json j = base_report("zvec");
            j["alpha"] = a.str();
            j["set"] = j_finset(s);
            j["vector"] = j_mass_vector(z_vector(a, s));
            sink.write(dump(j));
        } else if (c_d1->parsed() || c_dinf->parsed()) {
            ordinal a = parse_ordinal(alpha_s);
            fin_set A = fin_set::parse(set_a_s), B = fin_set::parse(set_b_s);
            json j = base_report(c_d1->parsed() ? "d1" : "dinf");
            j["alpha"] = a.str();
            j["A"] = j_finset(A);
            j["B"] = j_finset(B);
            j["value"] = j_rat(c_d1->parsed() ? d1(a, A, B) : dinf(a, A, B));
            sink.write(dump(j));
        } else if (c_audit->parsed()) {
            ordinal a = parse_ordinal(alpha_s);
            fin_set ground = fin_set::parse(ground_s);
            auto rep = audit(a, ground, parse_embedding_kind(kind_s));
            sink.write(csv ? audit_csv(rep) : dump(j_distortion_report(rep)));
        } else if (c_analyze->parsed()) {
            ordinal b = parse_ordinal(beta_s), g = parse_ordinal(gamma_s);
            fin_set B = fin_set::parse(set_b_s);
            json j = base_report("analyze");
            j["beta"] = b.str();
            j["gamma"] = g.str();
            j["B"] = j_finset(B);
            j["tree"] = j_tree(beta_analysis(b, g, B));
            json prefixes = json::array();
            for (int k = 1; k <= B.size(); ++k) {
                json e;
                e["A"] = j_finset(B.prefix(k));
                e["components"] = j_components(components(b, g, B.prefix(k)));
                prefixes.push_back(e);
            }
            j["prefix_components"] = prefixes;
            j["e_family"] = j_family(e_family(b, g, B));
            sink.write(dump(j));
        } else if (c_convex->parsed()) {
            ordinal b = parse_ordinal(beta_s), g = parse_ordinal(gamma_s);
            ordinal a0 = parse_ordinal(alpha0_s);
            fin_set B = fin_set::parse(set_b_s);
            auto fam = special_convex_family(b, g, B, a0);
            json j = base_report("convex");
            j["alpha0"] = a0.str();
            j["family"] = j_convex_family(fam);
            j["special"] = check_special(fam);
            if (demote_child > 0) {
                auto dem = demote(b, g, B, fam, demote_child);
                j["demoted_child"] = demote_child;
                j["demoted_family"] = j_convex_family(dem);
                j["demoted_special"] = check_special(dem);
            }
            sink.write(dump(j));
        } else if (c_stab->parsed()) {
            stability_table table;
            if (kind_s == "d1") {
                auto [as, bs] = d1_stable_specs(depth);
                table = make_stability_table(ordinal::from_int(1), as, bs, metric_kind::d1);
            } else if (kind_s == "dinf") {
                auto [as, bs] = dinf_counterexample_specs(depth);
                table = make_stability_table(ordinal::from_int(1), as, bs, metric_kind::dinf);
            } else {
                throw std::domain_error("stability --kind must be d1 or dinf");
            }
            sink.write(csv ? stability_csv(table) : dump(j_stability(table)));
        } else if (c_small->parsed()) {
            ordinal a = parse_ordinal(alpha_s), g = parse_ordinal(gamma_s);
            fin_set ground = fin_set::parse(ground_s);
            auto rep = smallness_check(a, g, ground, parse_rat(eps_s));
            sink.write(dump(j_smallness(rep)));
        } else if (c_deriv->parsed()) {
            fin_set ground = fin_set::parse(ground_s);
            family_snapshot f;
            if (!family_file.empty()) {
                std::ifstream in(family_file);
                if (!in) throw std::domain_error("cannot open family file: " + family_file);
                json parsed = json::parse(in);
                f = snapshot_from_json(parsed, ground);
            } else if (!alpha_s.empty()) {
                f = snapshot_of(parse_ordinal(alpha_s), ground);
            } else {
                throw std::domain_error("derivative needs --alpha or --family-file");
            }
            json j = base_report("derivative");
            j["ground"] = j_finset(ground);
            j["start"] = j_snapshot(f);
            json trail = json::array();
            for (int i = 0; i < steps; ++i) {
                f = derivative(f);
                trail.push_back(j_snapshot(f));
            }
            j["steps"] = trail;
            sink.write(dump(j));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
