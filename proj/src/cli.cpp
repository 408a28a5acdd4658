#include "tatecup/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <sstream>

#include "tatecup/error.hpp"
#include "tatecup/products.hpp"
#include "tatecup/verify.hpp"
#include "tatecup/workspace.hpp"

namespace tatecup {

namespace {

enum class Format { human, machine };

struct Context {
    Workspace ws;
    Format format = Format::human;
    std::ostream& out;
};

std::string token(const Workspace& ws, const CohClass& c) {
    std::string s = ws.module_name(c.parent()->module().get()) + "@" + std::to_string(c.parent()->degree()) + ":";
    for (std::size_t i = 0; i < c.coords().size(); ++i) s += (i ? "," : "") + c.coords()[i].to_string();
    return s;
}

std::string group_label(const Workspace& ws, const CohomologyPtr& h) {
    return "H^" + std::to_string(h->degree()) + "(" + ws.module_name(h->module().get()) + ")";
}

void report_class(Context& ctx, const std::string& key, const std::string& expr, const CohClass& c) {
    if (ctx.format == Format::machine) {
        ctx.out << "RESULT " << key << " = " << token(ctx.ws, c) << "\n";
    } else {
        ctx.out << expr << " = " << token(ctx.ws, c) << "   in " << group_label(ctx.ws, c.parent()) << " = "
                << c.parent()->describe() << "\n";
    }
}

CohClass arg_class(const Context& ctx, const std::string& tok, const ModulePtr& expected) {
    return resolve_class(ctx.ws, parse_class_token(tok), expected);
}

int cmd_cohomology(Context& ctx, const std::string& module, int degree) {
    auto h = cohomology(ctx.ws.module(module), degree);
    if (ctx.format == Format::machine) {
        ctx.out << "RESULT " << group_label(ctx.ws, h) << " = " << h->describe() << "\n";
    } else {
        ctx.out << "H^" << degree << " = " << h->describe() << "\n";
    }
    return 0;
}

int cmd_cup(Context& ctx, const std::string& pairing, const std::string& a, const std::string& b) {
    const GPairing& p = ctx.ws.pairing(pairing);
    CohClass x = arg_class(ctx, a, p.left());
    CohClass y = arg_class(ctx, b, p.right());
    report_class(ctx, "cup", token(ctx.ws, x) + " u " + token(ctx.ws, y), cup_classes(x, y, p));
    return 0;
}

int cmd_acup(Context& ctx, const std::string& tate, const std::string& a, const std::string& b) {
    const TateProduct& t = ctx.ws.tate(tate).tate;
    CohClass x = arg_class(ctx, a, t.seq_a().quotient());
    CohClass y = arg_class(ctx, b, t.seq_b().quotient());
    report_class(ctx, "acup", token(ctx.ws, x) + " u_aug " + token(ctx.ws, y), acup(x, y, t));
    return 0;
}

int cmd_delta(Context& ctx, const std::string& seq_name, const std::string& a) {
    const ShortExactSeq& seq = ctx.ws.sequence(seq_name);
    CohClass x = arg_class(ctx, a, seq.quotient());
    report_class(ctx, "delta", "delta " + token(ctx.ws, x), connecting(seq, x));
    return 0;
}

// The induced data for H and a G-module, built on demand.
InducedData induced_for(const Context& ctx, const std::string& sub, const ModulePtr& over_g, const ModulePtr& over_h) {
    const auto& h = ctx.ws.subgroup(sub);
    for (const auto& [name, e] : ctx.ws.induced)
        if (e.subgroup == sub && e.data.source_g && e.data.source_g->get() == over_g.get() &&
            (!over_h || e.data.source.get() == over_h.get())) {
            return e.data;
        }
    ModulePtr c = over_h ? over_h : restrict_module(over_g, *h, ctx.ws.module_name(over_g.get()) + "|" + sub);
    return induce(h, c, over_g);
}

int cmd_res(Context& ctx, const std::string& sub, const std::string& a) {
    CohClass x = arg_class(ctx, a, nullptr);
    const ModulePtr& m = x.parent()->module();
    if (m->group().get() != ctx.ws.subgroup(sub)->parent().get()) throw InputError("class is not over the group of " + sub);
    ModulePtr over_h;
    for (const auto& [name, rf] : ctx.ws.restricted_from)
        if (rf.second == sub && ctx.ws.module(rf.first).get() == m.get()) over_h = ctx.ws.module(name);
    InducedData d = induced_for(ctx, sub, m, over_h);
    report_class(ctx, "res", "res " + token(ctx.ws, x), restriction(d, x));
    return 0;
}

int cmd_cores(Context& ctx, const std::string& sub, const std::string& a) {
    CohClass x = arg_class(ctx, a, nullptr);
    const ModulePtr& c = x.parent()->module();
    std::string cname = ctx.ws.module_name(c.get());
    ModulePtr over_g;
    if (auto it = ctx.ws.restricted_from.find(cname); it != ctx.ws.restricted_from.end() && it->second.second == sub) {
        over_g = ctx.ws.module(it->second.first);
    }
    for (const auto& [name, e] : ctx.ws.induced)
        if (!over_g && e.subgroup == sub && e.data.source.get() == c.get() && e.data.source_g) over_g = *e.data.source_g;
    if (!over_g) {
        throw InputError("corestriction needs the G-structure of " + cname +
                         ": declare it with 'restrict' or an [induced] section with 'over'");
    }
    InducedData d = induced_for(ctx, sub, over_g, c);
    report_class(ctx, "cores", "cores " + token(ctx.ws, x), corestriction(d, x));
    return 0;
}

int cmd_induced_pairing(Context& ctx, const std::string& tate, const std::string& ext, int r, int s) {
    const TateProduct& t = ctx.ws.tate(tate).tate;
    const ExtensionEntry& e = ctx.ws.extension(ext);
    InducedPairingResult res = induced_pairing(t, e.data, r, s);
    auto list = [&](const std::vector<CohClass>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + token(ctx.ws, v[i]);
        return out.empty() ? std::string("-") : out;
    };
    const bool m = ctx.format == Format::machine;
    ctx.out << (m ? "CHECK induced_pairing.trivial_on_kernel PASS\n" : "acup vanishes on Img j_* x Ker phi_*\n");
    ctx.out << (m ? "RESULT left = " : "Img(H^r(A) -> H^r(A'')) generators: ") << list(res.left) << "\n";
    ctx.out << (m ? "RESULT right = " : "Img(H^s(B'') -> H^s(D'')) generators: ") << list(res.right) << "\n";
    ctx.out << (m ? "RESULT kernel = " : "Ker(H^s(B'') -> H^s(D'')) generators: ") << list(res.kernel) << "\n";
    ctx.out << (m ? "RESULT right_surjective = " : "H^s(B'') -> H^s(D'') surjective: ")
            << (res.right_surjective ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < res.table.size(); ++i)
        for (std::size_t j = 0; j < res.table[i].size(); ++j) {
            ctx.out << (m ? "RESULT pairing[" : "pairing[") << i << "," << j << "] = " << token(ctx.ws, res.table[i][j])
                    << "\n";
        }
    return 0;
}

int cmd_verify(Context& ctx, const VerifyOptions& opts) {
    auto checks = run_verify(ctx.ws, opts);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        ctx.out << "CHECK " << c.name << (c.pass ? " PASS" : " FAIL");
        if (!c.pass) ctx.out << " " << c.witness;
        ctx.out << "\n";
        failed += c.pass ? 0 : 1;
    }
    if (ctx.format == Format::machine) {
        ctx.out << "RESULT checks = " << checks.size() << "\nRESULT failed = " << failed << "\n";
    } else {
        ctx.out << checks.size() << " checks, " << failed << " failed\n";
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cohomology of finite groups: cup, Tate and augmented cup products"};
    app.require_subcommand(1);
    std::string spec, format = "human";
    std::size_t max_cols = 0;
    app.add_option("--spec", spec, "Spec file declaring groups, modules and products")->required();
    app.add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--max-cols", max_cols, "Column cap for coboundary matrices (also TATECUP_MAX_COLS)");

    std::string a1, a2, a3;
    int degree = 0, left_degree = 0, right_degree = 1;
    VerifyOptions vopts;
    vopts.seed = 1;

    auto* coh = app.add_subcommand("cohomology", "Invariant factors of H^r(G, M)")->fallthrough();
    coh->add_option("module", a1)->required();
    coh->add_option("degree", degree)->required()->check(CLI::NonNegativeNumber);
    auto* cup = app.add_subcommand("cup", "Cup product of two classes")->fallthrough();
    cup->add_option("pairing", a1)->required();
    cup->add_option("left", a2)->required();
    cup->add_option("right", a3)->required();
    auto* acup_cmd = app.add_subcommand("acup", "Augmented cup product of two classes")->fallthrough();
    acup_cmd->add_option("tate", a1)->required();
    acup_cmd->add_option("left", a2)->required();
    acup_cmd->add_option("right", a3)->required();
    auto* delta = app.add_subcommand("delta", "Connecting homomorphism of a sequence")->fallthrough();
    delta->add_option("sequence", a1)->required();
    delta->add_option("class", a2)->required();
    auto* res = app.add_subcommand("res", "Restriction to a subgroup")->fallthrough();
    res->add_option("subgroup", a1)->required();
    res->add_option("class", a2)->required();
    auto* cores = app.add_subcommand("cores", "Corestriction from a subgroup")->fallthrough();
    cores->add_option("subgroup", a1)->required();
    cores->add_option("class", a2)->required();
    auto* ip = app.add_subcommand("induced-pairing", "Pairing induced by the augmented cup product")->fallthrough();
    ip->add_option("tate", a1)->required();
    ip->add_option("extension", a2)->required();
    ip->add_option("--left-degree", left_degree, "r")->check(CLI::NonNegativeNumber);
    ip->add_option("--right-degree", right_degree, "s")->check(CLI::NonNegativeNumber);
    auto* verify = app.add_subcommand("verify", "Run the property suites")->fallthrough();
    verify->add_option("--suite", vopts.suite, "One suite only")->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", vopts.seed, "Seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (max_cols > 0) set_max_columns(max_cols);
        Context ctx{parse_spec_file(spec), format == "machine" ? Format::machine : Format::human, out};
        if (*coh) return cmd_cohomology(ctx, a1, degree);
        if (*cup) return cmd_cup(ctx, a1, a2, a3);
        if (*acup_cmd) return cmd_acup(ctx, a1, a2, a3);
        if (*delta) return cmd_delta(ctx, a1, a2);
        if (*res) return cmd_res(ctx, a1, a2);
        if (*cores) return cmd_cores(ctx, a1, a2);
        if (*ip) return cmd_induced_pairing(ctx, a1, a2, left_degree, right_degree);
        if (*verify) return cmd_verify(ctx, vopts);
    } catch (const ResourceCapError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckFailure& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace tatecup
