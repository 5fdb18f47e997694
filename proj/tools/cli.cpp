#include "cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobop/frobop.hpp"

namespace frobop::cli {
namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_not_verified = 1;
constexpr int exit_usage = 2;
constexpr int exit_failed = 3;

struct CommonFlags {
    std::uint64_t p = 0;
    std::string vars;
    std::string order = "grevlex";
    bool json_mode = false;
    bool oracle = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("-p,--prime", flags.p, "field characteristic (prime)")->required();
    cmd->add_option("-v,--vars", flags.vars, "comma-separated variable names")->required();
    cmd->add_option("--order", flags.order, "monomial order: grevlex or lex")
        ->check(CLI::IsMember({"grevlex", "lex"}));
    cmd->add_flag("--json", flags.json_mode, "emit the JSON report instead of text");
    cmd->add_flag("--oracle", flags.oracle, "cross-check against the brute-force oracle")
        ->group(""); // hidden: test harness only
}

ContextPtr build_context(const CommonFlags& flags) {
    std::vector<std::string> names;
    std::string current;
    std::istringstream in(flags.vars);
    while (std::getline(in, current, ','))
        names.push_back(current);
    auto order = order_from_name(flags.order);
    if (!order)
        throw DomainError("unknown monomial order '" + flags.order + "'");
    return RingContext::make(flags.p, std::move(names), *order);
}

json context_json(const ContextPtr& ctx) {
    return json{{"p", ctx->p()}, {"vars", ctx->vars()}, {"order", order_name(ctx->order())}};
}

std::string gens_text(const std::vector<Poly>& gens) {
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += gens[i].str();
    }
    return out + ")";
}

std::int64_t max_gen_degree(const Ideal& ideal) {
    std::int64_t deg = -1;
    for (const auto& g : ideal.gens())
        deg = std::max(deg, g.total_degree());
    return deg;
}

json chain_json(const ChainReport& report) {
    json levels = json::array();
    for (const auto& level : report.levels) {
        json strs = json::array();
        for (const auto& g : level.ideal.groebner())
            strs.push_back(g.str());
        levels.push_back({{"s", level.s},
                          {"groebner", std::move(strs)},
                          {"max_gen_degree", max_gen_degree(level.ideal)}});
    }
    json chain{{"levels", std::move(levels)}, {"cap", report.cap}, {"degrees_ok", report.degrees_ok}};
    if (report.stabilized_at)
        chain["stabilized_at"] = *report.stabilized_at;
    else
        chain["stabilized_at"] = nullptr;
    return chain;
}

void chain_text(const ChainReport& report, std::ostream& out) {
    for (const auto& level : report.levels) {
        out << "level " << level.s << ": I_" << level.s << " = "
            << gens_text(level.ideal.groebner()) << "   [max gen degree "
            << max_gen_degree(level.ideal) << "]\n";
    }
    if (report.stabilized_at)
        out << "stabilized at s = " << *report.stabilized_at << " (cap " << report.cap << ")\n";
    else
        out << "no stabilization within " << report.levels.size() << " levels (cap " << report.cap
            << ")\n";
    out << "degree audit: " << (report.degrees_ok ? "ok" : "FAILED") << "\n";
}

void emit(const json& report, bool json_mode, std::ostream& out, const std::string& text) {
    if (json_mode)
        out << report.dump(2) << "\n";
    else
        out << text;
}

// independent multiplication route for --oracle cross-checks
bool oracle_chain_ok(const Poly& f, const ChainReport& report, std::ostream& err) {
    for (const auto& level : report.levels) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < level.s; ++i)
            q *= f.context()->p();
        Poly power = oracle::pow(f, q - 1);
        if (power != pow_ps_minus_one(f, level.s)) {
            err << "oracle: power mismatch at level " << level.s << "\n";
            return false;
        }
        if (oracle::recompose(frob_decompose(power, level.s)) != power) {
            err << "oracle: decomposition does not recompose at level " << level.s << "\n";
            return false;
        }
    }
    return true;
}

int run_chain(const CommonFlags& flags, const std::string& f_text,
              std::optional<unsigned> max_level, std::ostream& out, std::ostream& err) {
    ContextPtr ctx = build_context(flags);
    Poly f = parse_poly(f_text, ctx);
    ChainReport report = compute_chain(f, max_level);

    json doc{{"schema_version", "1"},
             {"command", "chain"},
             {"context", context_json(ctx)},
             {"chain", chain_json(report)}};
    std::ostringstream text;
    chain_text(report, text);
    emit(doc, flags.json_mode, out, text.str());

    if (flags.oracle && !oracle_chain_ok(f, report, err))
        return exit_failed;
    if (!report.stabilized_at) {
        err << "the chain did not stabilize within the computed levels\n";
        return exit_failed;
    }
    return exit_ok;
}

int run_operator(const CommonFlags& flags, const std::string& f_text,
                 std::optional<unsigned> max_level, std::optional<unsigned> power,
                 std::ostream& out, std::ostream& err) {
    ContextPtr ctx = build_context(flags);
    Poly f = parse_poly(f_text, ctx);
    ChainReport report = compute_chain(f, max_level);
    if (!report.stabilized_at) {
        std::ostringstream text;
        chain_text(report, text);
        json doc{{"schema_version", "1"},
                 {"command", "operator"},
                 {"context", context_json(ctx)},
                 {"chain", chain_json(report)}};
        emit(doc, flags.json_mode, out, text.str());
        err << "the chain did not stabilize within the computed levels\n";
        return exit_failed;
    }

    DiffOperator delta = synthesize_delta(f, *report.stabilized_at);
    unsigned level = std::max(delta.level(), 1u);
    bool verified = verify_delta(delta, f, level);

    json doc{{"schema_version", "1"},
             {"command", "operator"},
             {"context", context_json(ctx)},
             {"chain", chain_json(report)},
             {"operator", {{"normal_form", delta.str()}, {"level", level}, {"verified", verified}}}};
    std::ostringstream text;
    chain_text(report, text);
    text << "delta = " << delta.str() << "\n"
         << "level = " << level << "\n"
         << "verified = " << (verified ? "true" : "false") << "\n";

    if (power) {
        OperatorExpr witness = generator_witness(delta, *power);
        doc["witness"] = {{"expr", witness.str()}, {"target_power", *power}};
        text << "witness (power " << *power << ") = " << witness.str() << "\n";
    }
    emit(doc, flags.json_mode, out, text.str());

    if (flags.oracle) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < level; ++i)
            q *= ctx->p();
        Poly lhs = apply_operator(delta, oracle::pow(f, q - 1));
        if (lhs != oracle::pow(f, q - ctx->p())) {
            err << "oracle: operator identity fails against naive powers\n";
            return exit_failed;
        }
    }
    return verified ? exit_ok : exit_not_verified;
}

int run_verify(const CommonFlags& flags, const std::string& op_text, const std::string& f_text,
               unsigned level, std::ostream& out, std::ostream& err) {
    ContextPtr ctx = build_context(flags);
    DiffOperator op = parse_operator(op_text, ctx);
    Poly f = parse_poly(f_text, ctx);
    bool verified = verify_delta(op, f, level);

    json doc{{"schema_version", "1"},
             {"command", "verify"},
             {"context", context_json(ctx)},
             {"operator", {{"normal_form", op.str()}, {"level", level}, {"verified", verified}}}};
    std::ostringstream text;
    text << "operator = " << op.str() << "\n"
         << "level = " << level << "\n"
         << "verified = " << (verified ? "true" : "false") << "\n";
    emit(doc, flags.json_mode, out, text.str());

    if (!verified) {
        err << "the operator does not satisfy delta(f^(p^N - 1)) = f^(p^N - p) at N = " << level
            << "\n";
        return exit_not_verified;
    }
    return exit_ok;
}

int run_root(const CommonFlags& flags, const std::string& g_text, unsigned s, std::ostream& out,
             std::ostream& err) {
    ContextPtr ctx = build_context(flags);
    Poly g = parse_poly(g_text, ctx);
    FrobDecomposition dec = frob_decompose(g, s);
    std::vector<Poly> gens;
    for (const auto& [alpha, coord] : dec.coords)
        gens.push_back(coord);
    Ideal ideal(ctx, std::move(gens));

    json coords = json::array();
    std::ostringstream text;
    text << "coordinates of g at level " << s << ":\n";
    for (const auto& [alpha, coord] : dec.coords) {
        coords.push_back({{"alpha", alpha}, {"coord", coord.str()}});
        text << "  alpha = (";
        for (std::size_t i = 0; i < alpha.size(); ++i)
            text << (i ? "," : "") << alpha[i];
        text << "): " << coord.str() << "\n";
    }
    json basis = json::array();
    for (const auto& b : ideal.groebner())
        basis.push_back(b.str());
    text << "I_" << s << " = " << gens_text(ideal.groebner()) << "\n";

    json doc{{"schema_version", "1"},
             {"command", "root"},
             {"context", context_json(ctx)},
             {"root", {{"s", s}, {"coordinates", std::move(coords)}, {"groebner", std::move(basis)}}}};
    emit(doc, flags.json_mode, out, text.str());

    if (flags.oracle) {
        if (oracle::recompose(dec) != g) {
            err << "oracle: decomposition does not recompose\n";
            return exit_failed;
        }
        // D^(s).g = I_s(g)^[p^s] whenever the enumeration fits the limit
        std::uint64_t count = 1;
        bool within = true;
        for (std::size_t i = 0; i < ctx->nvars() * s; ++i) {
            count *= ctx->p();
            if (count > 4096) {
                within = false;
                break;
            }
        }
        if (within && !ideal_equal(oracle::ds_image(g, s), ideal.bracket_power(s))) {
            err << "oracle: D^(s).g disagrees with the bracket power of I_s\n";
            return exit_failed;
        }
    }
    return exit_ok;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frobenius-root ideal chains and differential operator certificates over F_p"};
    app.name("frobop");
    app.require_subcommand(1);

    CommonFlags chain_flags;
    std::string chain_f;
    unsigned chain_max_level = 0;
    auto* chain_cmd = app.add_subcommand(
        "chain", "compute the descending chain I_s(f^(p^s - 1)) and its stabilization level");
    add_common(chain_cmd, chain_flags);
    chain_cmd->add_option("-f,--poly", chain_f, "polynomial f")->required();
    auto* chain_max_opt =
        chain_cmd->add_option("--max-level", chain_max_level, "cap on computed levels");

    CommonFlags op_flags;
    std::string op_f;
    unsigned op_max_level = 0;
    unsigned op_power = 0;
    auto* op_cmd = app.add_subcommand(
        "operator", "synthesize and verify delta with delta(1/f) = 1/f^p");
    add_common(op_cmd, op_flags);
    op_cmd->add_option("-f,--poly", op_f, "polynomial f")->required();
    auto* op_max_opt = op_cmd->add_option("--max-level", op_max_level, "cap on computed levels");
    auto* op_power_opt =
        op_cmd->add_option("--power", op_power, "also emit the witness sending 1/f to 1/f^(p^t)");

    CommonFlags verify_flags;
    std::string verify_op, verify_f;
    unsigned verify_level = 0;
    auto* verify_cmd = app.add_subcommand(
        "verify", "replay delta(f^(p^N - 1)) = f^(p^N - p) for a given operator");
    add_common(verify_cmd, verify_flags);
    verify_cmd->add_option("--op", verify_op, "operator in normal form")->required();
    verify_cmd->add_option("-f,--poly", verify_f, "polynomial f")->required();
    verify_cmd->add_option("-s,--level", verify_level, "verification level N")->required();

    CommonFlags root_flags;
    std::string root_g;
    unsigned root_s = 0;
    auto* root_cmd = app.add_subcommand(
        "root", "Frobenius decomposition of g and the root ideal I_s(g)");
    add_common(root_cmd, root_flags);
    root_cmd->add_option("-g,--poly", root_g, "polynomial g")->required();
    root_cmd->add_option("-s,--level", root_s, "decomposition level s")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (chain_cmd->parsed()) {
            std::optional<unsigned> max_level;
            if (chain_max_opt->count())
                max_level = chain_max_level;
            return run_chain(chain_flags, chain_f, max_level, out, err);
        }
        if (op_cmd->parsed()) {
            std::optional<unsigned> max_level;
            if (op_max_opt->count())
                max_level = op_max_level;
            std::optional<unsigned> power;
            if (op_power_opt->count())
                power = op_power;
            return run_operator(op_flags, op_f, max_level, power, out, err);
        }
        if (verify_cmd->parsed())
            return run_verify(verify_flags, verify_op, verify_f, verify_level, out, err);
        if (root_cmd->parsed())
            return run_root(root_flags, root_g, root_s, out, err);
        err << "no subcommand given\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ContextMismatch& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DivisionByZero& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    }
}

} // namespace frobop::cli
