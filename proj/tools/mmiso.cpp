// Command-line front end: builds multiplication tensors, applies and
// manipulates isotropy-group elements, recovers elements from raw linear
// maps, and runs exhaustive stabilizer/orbit searches over small prime
// fields. File formats are documented in core/include/mmiso/io.hpp.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mmiso/io.hpp"
#include "mmiso/verify.hpp"

using namespace mmiso;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

FieldSpec parse_field_flag(const std::string& text) {
    if (text == "rational") return FieldSpec::rationals();
    if (text.rfind("gf:", 0) == 0) {
        try {
            return FieldSpec::prime_field(std::stoll(text.substr(3)));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad field '") + text + "': " + e.what());
        }
    }
    throw ParseError("unknown field '" + text + "' (use rational or gf:<q>)");
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

struct Cli {
    CLI::App app{"exact-arithmetic toolkit for the symmetry group of matrix multiplication tensors"};
    int exit_code = kExitTrue;
};

} // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App& app = cli.app;
    app.require_subcommand(1);

    // ---- gen ---------------------------------------------------------
    int gm = 2, gn = 2, gp = 2;
    std::string gen_field = "rational", gen_out;
    CLI::App* gen = app.add_subcommand("gen", "write the tensor <m,n,p>");
    gen->add_option("m", gm, "rows of the left factor")->required();
    gen->add_option("n", gn, "shared dimension")->required();
    gen->add_option("p", gp, "columns of the right factor")->required();
    gen->add_option("--field", gen_field, "rational or gf:<q>");
    gen->add_option("--out", gen_out, "output path (default stdout)");
    gen->callback([&] {
        const FieldSpec f = parse_field_flag(gen_field);
        emit(tensor_to_string(mmt_tensor(Shape{gm, gn, gp}, f)), gen_out);
    });

    // ---- apply -------------------------------------------------------
    std::string ap_elem, ap_tensor, ap_out;
    CLI::App* ap = app.add_subcommand("apply", "apply an element to a tensor");
    ap->add_option("element", ap_elem, "element file")->required();
    ap->add_option("tensor", ap_tensor, "tensor file")->required();
    ap->add_option("--out", ap_out, "output path (default stdout)");
    ap->callback([&] {
        const IsotropyElement g = read_element_file(ap_elem);
        const Tensor3 t = read_tensor_file(ap_tensor);
        emit(tensor_to_string(apply(g, t)), ap_out);
    });

    // ---- check -------------------------------------------------------
    std::string ck_elem, ck_tensor;
    CLI::App* ck = app.add_subcommand("check", "exit 0 iff the element fixes the tensor");
    ck->add_option("element", ck_elem)->required();
    ck->add_option("tensor", ck_tensor)->required();
    ck->callback([&] {
        const IsotropyElement g = read_element_file(ck_elem);
        const Tensor3 t = read_tensor_file(ck_tensor);
        const bool member = is_isotropy(g, t);
        std::cout << (member ? "isotropy: yes\n" : "isotropy: no\n");
        cli.exit_code = member ? kExitTrue : kExitFalse;
    });

    // ---- compose / invert / normalize / equal -------------------------
    std::string c_g, c_h, c_out;
    CLI::App* co = app.add_subcommand("compose", "compose two elements (h acts first)");
    co->add_option("left", c_g)->required();
    co->add_option("right", c_h, "applied first")->required();
    co->add_option("--out", c_out);
    co->callback([&] {
        const IsotropyElement g = read_element_file(c_g);
        const IsotropyElement h = read_element_file(c_h);
        emit(element_to_string(normalize(compose(g, h))), c_out);
    });

    std::string inv_g, inv_out;
    CLI::App* iv = app.add_subcommand("invert", "invert an element");
    iv->add_option("element", inv_g)->required();
    iv->add_option("--out", inv_out);
    iv->callback([&] {
        emit(element_to_string(normalize(invert(read_element_file(inv_g)))), inv_out);
    });

    std::string nm_g, nm_out;
    CLI::App* nm = app.add_subcommand("normalize", "canonical representative modulo scalars");
    nm->add_option("element", nm_g)->required();
    nm->add_option("--out", nm_out);
    nm->callback([&] {
        emit(element_to_string(normalize(read_element_file(nm_g))), nm_out);
    });

    std::string eq_g, eq_h;
    CLI::App* eq = app.add_subcommand("equal", "exit 0 iff the elements define the same map");
    eq->add_option("first", eq_g)->required();
    eq->add_option("second", eq_h)->required();
    eq->callback([&] {
        const bool same =
            equal_mod_scalars(read_element_file(eq_g), read_element_file(eq_h));
        std::cout << (same ? "equal: yes\n" : "equal: no\n");
        cli.exit_code = same ? kExitTrue : kExitFalse;
    });

    // ---- rho -----------------------------------------------------------
    std::string rho_perm, rho_field = "rational", rho_out;
    int rm = 2, rn = 2, rp = 2;
    CLI::App* rh = app.add_subcommand("rho", "transpose-and-permute symmetry element");
    rh->add_option("perm", rho_perm, "one of id, 12, 13, 23, 123, 132")->required();
    rh->add_option("m", rm)->required();
    rh->add_option("n", rn)->required();
    rh->add_option("p", rp)->required();
    rh->add_option("--field", rho_field);
    rh->add_option("--out", rho_out);
    rh->callback([&] {
        const auto pi = perm_from_name(rho_perm);
        if (!pi) throw ParseError("unknown permutation '" + rho_perm + "'");
        const FieldSpec f = parse_field_flag(rho_field);
        emit(element_to_string(rho_element(*pi, Shape{rm, rn, rp}, f)), rho_out);
    });

    // ---- recover -------------------------------------------------------
    std::string rc_a, rc_b, rc_c, rc_out;
    CLI::App* rc = app.add_subcommand(
        "recover", "recover the group element behind a multiplicative triple of maps");
    rc->add_option("A", rc_a, "linmap on M_{n,m}")->required();
    rc->add_option("B", rc_b, "linmap on M_{p,n}")->required();
    rc->add_option("C", rc_c, "linmap on M_{p,m}")->required();
    rc->add_option("--out", rc_out);
    rc->callback([&] {
        const LinMap A = read_linmap_file(rc_a);
        const LinMap B = read_linmap_file(rc_b);
        const LinMap C = read_linmap_file(rc_c);
        const RecoveredTriple t = recover_triple(A, B, C);
        const Shape s{A.dom().cols, A.dom().rows, B.dom().rows};
        const IsotropyElement g =
            normalize(small_element(s, t.c.inverse(), t.b.inverse(), t.a));
        emit(element_to_string(g), rc_out);
    });

    // ---- structure-tensor ----------------------------------------------
    std::string st_file, st_field = "rational", st_out;
    std::vector<int> st_mmt, st_xshape, st_yshape, st_zshape;
    CLI::App* st = app.add_subcommand("structure-tensor",
                                      "structure tensor of a bilinear map");
    st->add_option("--mmt", st_mmt, "m n p: use the composition map of this shape")
        ->expected(3);
    st->add_option("file", st_file, "bilinear map file (when --mmt is absent)");
    st->add_option("--xshape", st_xshape, "rows cols of the space X")->expected(2);
    st->add_option("--yshape", st_yshape, "rows cols of the space Y")->expected(2);
    st->add_option("--zshape", st_zshape, "rows cols of the space Z")->expected(2);
    st->add_option("--field", st_field);
    st->add_option("--out", st_out);
    st->callback([&] {
        if (!st_mmt.empty()) {
            const FieldSpec f = parse_field_flag(st_field);
            const Shape s{st_mmt[0], st_mmt[1], st_mmt[2]};
            emit(tensor_to_string(structure_tensor(BilinearMap::composition_map(s, f))),
                 st_out);
            return;
        }
        if (st_file.empty()) throw ParseError("need --mmt or a bilinear map file");
        auto dims = [](const std::vector<int>& v) {
            return v.empty() ? FactorDims{0, 0} : FactorDims{v[0], v[1]};
        };
        std::ifstream in(st_file);
        if (!in) throw ParseError("cannot open '" + st_file + "'");
        const BilinearMap f =
            read_bilinear(in, dims(st_xshape), dims(st_yshape), dims(st_zshape));
        emit(tensor_to_string(structure_tensor(f)), st_out);
    });

    // ---- enumerate -------------------------------------------------------
    int em = 2, en = 2, ep = 2;
    std::string en_field = "gf:2", en_mode = "small", en_out;
    std::uint64_t en_budget = GroupEnumeration::default_budget;
    bool en_count_only = false;
    CLI::App* enu = app.add_subcommand("enumerate",
                                       "stream the isotropy group over a prime field");
    enu->add_option("m", em)->required();
    enu->add_option("n", en)->required();
    enu->add_option("p", ep)->required();
    enu->add_option("--field", en_field, "gf:<q> (finite fields only)");
    enu->add_option("--mode", en_mode, "small (sandwich part only) or full");
    enu->add_option("--budget", en_budget, "raw triple budget");
    enu->add_flag("--count-only", en_count_only, "print the element count only");
    enu->add_option("--out", en_out);
    enu->callback([&] {
        const FieldSpec f = parse_field_flag(en_field);
        if (!f.is_prime_field()) throw ParseError("enumeration needs --field gf:<q>");
        if (en_mode != "small" && en_mode != "full")
            throw ParseError("mode must be small or full");
        const GroupEnumeration group(
            Shape{em, en, ep}, f.modulus(),
            en_mode == "small" ? EnumerationMode::Small : EnumerationMode::Full, en_budget);
        std::cerr << "enumerating " << group.size() << " elements\n";
        if (en_count_only) {
            emit(std::to_string(group.size()) + "\n", en_out);
            return;
        }
        std::ostringstream os;
        for (std::uint64_t i = 0; i < group.size(); ++i) {
            write_element(os, group.element(i));
            if ((i + 1) % 10000 == 0) std::cerr << "  " << (i + 1) << " written\n";
        }
        emit(os.str(), en_out);
    });

    // ---- stabilizer -------------------------------------------------------
    std::string sb_dec, sb_field = "gf:2", sb_out;
    std::uint64_t sb_budget = GroupEnumeration::default_budget;
    int sb_threads = 1;
    CLI::App* sb = app.add_subcommand("stabilizer",
                                      "exhaustive stabilizer of a decomposition");
    sb->add_option("decomposition", sb_dec)->required();
    sb->add_option("--field", sb_field, "gf:<q>; rational inputs are reduced mod q");
    sb->add_option("--budget", sb_budget);
    sb->add_option("--threads", sb_threads, "worker threads (result is identical)");
    sb->add_option("--out", sb_out);
    sb->callback([&] {
        const FieldSpec f = parse_field_flag(sb_field);
        if (!f.is_prime_field()) throw ParseError("stabilizer needs --field gf:<q>");
        const Decomposition d = read_decomposition_file(sb_dec);
        std::cerr << "searching the full group over gf " << f.modulus() << "\n";
        const StabilizerResult st = stabilizer(d, f.modulus(), sb_budget, sb_threads);
        std::cerr << "stabilizer order " << st.order
                  << (st.closed ? " (closure verified)\n" : " (closure FAILED)\n");
        emit(stabilizer_to_string(st), sb_out);
        if (!st.closed) cli.exit_code = kExitFalse;
    });

    // ---- orbit-equal -------------------------------------------------------
    std::string oe_d1, oe_d2, oe_field = "gf:2", oe_out;
    std::uint64_t oe_budget = GroupEnumeration::default_budget;
    int oe_threads = 1;
    CLI::App* oe = app.add_subcommand(
        "orbit-equal", "find a group element mapping one decomposition to another");
    oe->add_option("d1", oe_d1)->required();
    oe->add_option("d2", oe_d2)->required();
    oe->add_option("--field", oe_field);
    oe->add_option("--budget", oe_budget);
    oe->add_option("--threads", oe_threads);
    oe->add_option("--out", oe_out);
    oe->callback([&] {
        const FieldSpec f = parse_field_flag(oe_field);
        if (!f.is_prime_field()) throw ParseError("orbit search needs --field gf:<q>");
        const Decomposition d1 = read_decomposition_file(oe_d1);
        const Decomposition d2 = read_decomposition_file(oe_d2);
        const auto witness = orbit_equivalent(d1, d2, f.modulus(), oe_budget, oe_threads);
        if (witness) {
            std::cerr << "equivalent: witness found\n";
            emit(element_to_string(*witness), oe_out);
        } else {
            std::cout << "not equivalent (exhaustive search)\n";
            cli.exit_code = kExitFalse;
        }
    });

    // ---- verify-suite -------------------------------------------------------
    std::vector<int> vs_shape{2, 2, 2};
    std::string vs_field = "rational";
    int vs_samples = 25;
    std::uint64_t vs_seed = 1, vs_budget = GroupEnumeration::default_budget;
    CLI::App* vs = app.add_subcommand("verify-suite",
                                      "run the cross-module identity checks");
    vs->add_option("--shape", vs_shape, "m n p")->expected(3);
    vs->add_option("--field", vs_field);
    vs->add_option("--samples", vs_samples, "random samples per check (0 = vacuous)");
    vs->add_option("--seed", vs_seed);
    vs->add_option("--budget", vs_budget);
    vs->callback([&] {
        VerifyOptions opt;
        opt.shape = Shape{vs_shape[0], vs_shape[1], vs_shape[2]};
        opt.field = parse_field_flag(vs_field);
        opt.samples = vs_samples;
        opt.seed = vs_seed;
        opt.budget = vs_budget;
        if (vs_samples == 0)
            std::cerr << "warning: 0 samples, property checks pass vacuously\n";
        const std::vector<CheckResult> results = run_verify_suite(opt);
        print_report(std::cout, results);
        int pass = 0, fail = 0, skip = 0;
        for (const CheckResult& r : results) {
            if (r.status == CheckStatus::Pass)
                ++pass;
            else if (r.status == CheckStatus::Fail)
                ++fail;
            else
                ++skip;
        }
        std::cout << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
        if (fail > 0) cli.exit_code = kExitFalse;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return cli.exit_code;
}
