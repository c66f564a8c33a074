#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympc/json_io.hpp"
#include "sympc/verify.hpp"

namespace {

using nlohmann::json;
using namespace sympc;

json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '[' && arg[0] != '{') {
        std::ifstream in(arg);
        require(in.good(), "IoError", "cannot open " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return json::parse(text);
}

struct FieldArgs {
    std::int64_t p = 0;
    std::string ext;

    FieldPtr make() const { return p == 0 ? nullptr : field_from_spec(p, ext); }

    void attach(CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--field", p, "field characteristic (odd prime)");
        cmd->add_option("--ext", ext,
                        "optional extension modulus, coefficients low to high, e.g. '2,2,1'");
        if (required) o->required();
    }
};

Matrix load_matrix(const std::string& arg, const FieldPtr& context) {
    return matrix_from_json(load_json_arg(arg), context);
}

SymplecticElement load_element(const std::string& matrix_arg, const std::string& form_arg,
                               const FieldPtr& context) {
    Matrix u = load_matrix(matrix_arg, context);
    Matrix j = form_arg == "standard" ? standard_form(u.field(), u.rows())
                                      : load_matrix(form_arg, u.field());
    return make_symplectic(std::move(u), std::move(j));
}

void emit(const json& j, const std::string& out, const std::string& table_text) {
    if (out == "table")
        std::cout << table_text;
    else
        std::cout << j.dump(2) << "\n";
}

std::string descriptor_table(const ClassDescriptor& d) {
    std::ostringstream os;
    os << "n " << d.n << "  p " << d.field->characteristic() << "\n";
    for (const auto& e : d.split) {
        os << "split pair=" << e.pair.text() << " a=";
        for (int v : e.a) os << v << " ";
        os << "\n";
    }
    for (const auto& e : d.selfbar) {
        os << "selfbar q=" << e.q.text() << " b=";
        for (int v : e.b) os << v << " ";
        os << "\n";
    }
    for (const auto& e : d.linear) {
        os << "linear sign=" << (e.plus_one ? "+" : "-") << " b=";
        for (int v : e.b) os << v << " ";
        for (const auto& [lvl, cls] : e.disc)
            os << "disc" << lvl << "=" << (cls == SquareClass::Square ? "sq" : "ns") << " ";
        os << "\n";
    }
    os << "label " << d.label() << "\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conjugacy invariants, centralizer orders, and brute-force cross checks "
                 "for symplectic groups over odd finite fields"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --out appear after the subcommand name
    std::string out = "json";
    app.add_option("--out", out, "output format")->check(CLI::IsMember({"json", "table"}));

    auto* c_classify = app.add_subcommand("classify", "conjugacy class descriptor of one element");
    FieldArgs classify_field;
    classify_field.attach(c_classify, false);
    std::string classify_matrix, classify_form = "standard";
    c_classify->add_option("--matrix", classify_matrix, "matrix JSON or path")->required();
    c_classify->add_option("--form", classify_form, "skew form JSON/path or 'standard'");

    auto* c_conj = app.add_subcommand("conj-test", "decide conjugacy of two elements");
    FieldArgs conj_field;
    conj_field.attach(c_conj, false);
    std::vector<std::string> conj_matrices;
    std::string conj_form = "standard";
    c_conj->add_option("--matrix", conj_matrices, "matrix JSON or path, given twice")
        ->expected(2)
        ->allow_extra_args(false); // keep [...] JSON values whole, one per occurrence
    c_conj->add_option("--form", conj_form, "skew form JSON/path or 'standard'");

    auto* c_enum = app.add_subcommand("enumerate-classes", "all class descriptors for (n, q)");
    int enum_n = 0;
    std::int64_t enum_q = 0;
    c_enum->add_option("--n", enum_n, "space dimension (even)")->required();
    c_enum->add_option("--q", enum_q, "odd prime field size")->required();

    auto* c_cent = app.add_subcommand("centralizer", "exact centralizer order of one element");
    FieldArgs cent_field;
    cent_field.attach(c_cent, false);
    std::string cent_matrix, cent_form = "standard";
    c_cent->add_option("--matrix", cent_matrix, "matrix JSON or path")->required();
    c_cent->add_option("--form", cent_form, "skew form JSON/path or 'standard'");

    auto* c_random = app.add_subcommand("random", "seeded random symplectic matrix");
    FieldArgs random_field;
    random_field.attach(c_random, true);
    int random_n = 0;
    std::uint64_t random_seed = 0;
    c_random->add_option("--n", random_n, "space dimension (even)")->required();
    c_random->add_option("--seed", random_seed, "PRNG seed")->required();

    auto* c_oracle = app.add_subcommand("oracle-classes", "brute-force conjugacy classes");
    int oracle_n = 0;
    std::int64_t oracle_q = 0, oracle_cap = 10'000'000;
    c_oracle->add_option("--n", oracle_n, "space dimension (even)")->required();
    c_oracle->add_option("--q", oracle_q, "odd prime field size")->required();
    c_oracle->add_option("--cap", oracle_cap, "group order cap");

    auto* c_verify = app.add_subcommand("verify", "classifier vs oracle cross-validation");
    int verify_n = 0, verify_trials = 200;
    std::int64_t verify_q = 0, verify_cap = 10'000'000;
    std::uint64_t verify_seed = 0xbead5eedull;
    c_verify->add_option("--n", verify_n, "space dimension (even)")->required();
    c_verify->add_option("--q", verify_q, "odd prime field size")->required();
    c_verify->add_option("--seed", verify_seed, "PRNG seed for the invariance trials");
    c_verify->add_option("--trials", verify_trials, "number of invariance trials");
    c_verify->add_option("--cap", verify_cap, "group order cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_classify)) {
            auto el = load_element(classify_matrix, classify_form, classify_field.make());
            ClassDescriptor d = invariant(el);
            emit({{"descriptor", d.to_json()}, {"label", d.label()}}, out, descriptor_table(d));
        } else if (app.got_subcommand(c_conj)) {
            FieldPtr F = conj_field.make();
            auto a = load_element(conj_matrices[0], conj_form, F);
            auto b = load_element(conj_matrices[1], conj_form, F);
            require(a.u.field()->same(*b.u.field()) && a.u.rows() == b.u.rows(), "FormMismatch",
                    "elements live in different spaces");
            std::string la = invariant(a).label(), lb = invariant(b).label();
            bool conj = la == lb;
            emit({{"conjugate", conj}, {"labels", {la, lb}}}, out,
                 std::string("conjugate ") + (conj ? "true" : "false") + "\n" + la + "\n" + lb +
                     "\n");
        } else if (app.got_subcommand(c_enum)) {
            auto descs = enumerate_classes(enum_n, field_from_spec(enum_q));
            json arr = json::array();
            std::ostringstream table;
            for (const auto& d : descs) {
                arr.push_back(d.to_json());
                table << d.label() << "\n";
            }
            table << descs.size() << " classes\n";
            emit({{"count", descs.size()}, {"classes", arr}}, out, table.str());
        } else if (app.got_subcommand(c_cent)) {
            auto el = load_element(cent_matrix, cent_form, cent_field.make());
            CentralizerReport rep = centralizer_order(invariant(el));
            std::ostringstream table;
            for (const auto& f : rep.factors) table << f.symbol << " = " << f.value.str() << "\n";
            table << "total " << rep.total.str() << "\n";
            emit(report_to_json(rep), out, table.str());
        } else if (app.got_subcommand(c_random)) {
            auto el = random_symplectic(random_n, random_field.make(), random_seed);
            std::ostringstream table;
            for (int r = 0; r < el.u.rows(); ++r) {
                for (int c = 0; c < el.u.cols(); ++c)
                    table << el.u.field()->to_string(el.u.at(r, c)) << (c + 1 < el.u.cols() ? " " : "");
                table << "\n";
            }
            emit(matrix_to_json(el.u), out, table.str());
        } else if (app.got_subcommand(c_oracle)) {
            GroupTable t = enumerate_group(oracle_n, field_from_spec(oracle_q), oracle_cap);
            auto orbits = brute_conjugacy(t);
            json classes = json::array();
            std::ostringstream table;
            table << "order " << t.order() << "\n";
            for (const auto& orbit : orbits) {
                classes.push_back({{"size", orbit.size()},
                                   {"rep", matrix_to_json(t.elements[orbit[0]])}});
                table << "class size " << orbit.size() << "\n";
            }
            table << orbits.size() << " classes\n";
            emit({{"order", t.order()}, {"count", orbits.size()}, {"classes", classes}}, out,
                 table.str());
        } else if (app.got_subcommand(c_verify)) {
            auto checks = verify_group(verify_n, field_from_spec(verify_q), verify_trials,
                                       verify_seed, verify_cap);
            bool all = true;
            json arr = json::array();
            std::ostringstream table;
            for (const auto& c : checks) {
                all = all && c.pass;
                arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                table << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
            }
            emit({{"checks", arr}, {"all_pass", all}}, out, table.str());
            return all ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
