#ifndef LOGCONN_CLI_HPP
#define LOGCONN_CLI_HPP

// Subcommand front end. Exit status: 0 affirmative verdict, 1 negative
// verdict (with certificate), 2 malformed input, 3 oracle disagreement.

#include "logconn/birkhoff.hpp"
#include "logconn/castling.hpp"
#include "logconn/extension.hpp"
#include "logconn/filtrations.hpp"
#include "logconn/jordan.hpp"
#include "logconn/json_io.hpp"
#include "logconn/saito.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace logconn::cli {

using io::json;

inline constexpr const char* kVersion = "0.1.0";

enum Exit { Affirmative = 0, Negative = 1, Malformed = 2, OracleMismatch = 3 };

struct Options {
    std::string command;
    std::string input;
    std::string output;
    bool json_out = false;
    bool oracle = false;
    unsigned long seed = 1;
    int chain = -1;
    long n = 3;
    std::string rep;
    std::string group = "GL";
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Outcome {
    Exit code = Affirmative;
    std::string verdict;
    json fields = json::object();
    json witness;
};

/// Input text: a file path, or inline JSON when it starts with '{' or '['.
inline std::string read_input(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw io::InputError("", "cannot read input file \"" + arg + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw io::InputError("", "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

inline Outcome cmd_saito(const json& j, const Options& opt) {
    io::check_schema(j);
    SaitoSystem sys = io::saito_system_from(j);
    SaitoResult r = saito_check(sys);
    Outcome o;
    o.code = r.free ? Affirmative : Negative;
    o.verdict = r.free ? "free" : "not-free";
    o.fields["free"] = r.free;
    o.fields["unit"] = logconn::to_string(r.unit);
    o.fields["reduced"] = r.reduced;
    o.fields["logarithmic"] = r.logarithmic;
    o.fields["determinant"] = io::to_json(r.determinant);
    if (!r.free) {
        if (!r.reduced) o.witness = {{"kind", "non-reduced"}, {"reducedEquation", io::to_json(r.squarefree)}};
        else if (r.non_tangent_field >= 0) o.witness = {{"kind", "non-tangent"}, {"field", r.non_tangent_field}};
        else o.witness = {{"kind", "determinant"}, {"determinant", io::to_json(r.determinant)}};
    }
    if (opt.oracle) {
        bool agree = det_cofactor(sys.saito_matrix()) == r.determinant;
        o.fields["oracle"] = {{"cofactorDeterminant", agree}};
        if (!agree) throw OracleError("cofactor expansion disagrees with the Bareiss determinant");
    }
    return o;
}

inline Outcome cmd_flat(const json& j, const Options& opt) {
    io::check_schema(j);
    LogConnection conn = io::log_connection_from(j);
    FlatnessResult r;
    try {
        r = flatness_check(conn);
    } catch (const AlgebraError& e) {
        throw io::InputError("/fields", e.what());
    }
    Outcome o;
    o.code = r.flat ? Affirmative : Negative;
    o.verdict = r.flat ? "flat" : "not-flat";
    o.fields["flat"] = r.flat;
    if (r.witness) {
        auto c = structure_constants(conn.system);
        PolyMatrix k = curvature(conn, c, r.witness->first, r.witness->second);
        o.witness = {{"pair", {r.witness->first, r.witness->second}}, {"curvature", io::to_json(k)}};
    }
    if (opt.oracle && r.flat) {
        // Curvature evaluated at random integer points must vanish.
        std::mt19937 rng(static_cast<std::mt19937::result_type>(opt.seed));
        std::uniform_int_distribution<int> dist(-9, 9);
        auto c = structure_constants(conn.system);
        std::size_t n = conn.system.dim();
        for (int s = 0; s < 8; ++s) {
            std::vector<Rational> pt(n);
            for (auto& x : pt) x = dist(rng);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    for (const auto& e : curvature(conn, c, a, b).data())
                        if (e.evaluate(pt) != 0) throw OracleError("curvature nonzero at a sample point");
        }
        o.fields["oracle"] = {{"pointEvaluation", true}};
    }
    return o;
}

inline Outcome cmd_jc(const json& j, const Options& opt) {
    const json* mj = &j;
    GroupKind group = opt.group == "SL" ? GroupKind::SL : GroupKind::GL;
    if (j.is_object()) {
        io::check_schema(j);
        mj = &io::field(j, "matrix", "");
        if (auto it = j.find("group"); it != j.end()) {
            if (*it == "SL") group = GroupKind::SL;
            else if (*it == "GL") group = GroupKind::GL;
            else throw io::InputError("/group", "expected \"GL\" or \"SL\"");
        }
    }
    QMatrix m = io::qmatrix_from(*mj, j.is_object() ? "/matrix" : "");
    if (m.rows() == 0) throw io::InputError("", "empty matrix");
    JCPair jc;
    try {
        jc = jordan_chevalley(m);
    } catch (const AlgebraError& e) {
        throw io::InputError(j.is_object() ? "/matrix" : "", e.what());
    }
    Outcome o;
    o.verdict = "factorized";
    o.fields["S"] = io::to_json(jc.S);
    o.fields["U"] = io::to_json(jc.U);
    auto wr = quasi_unipotent_weights(jc.S);
    if (wr.weights) {
        o.fields["weights"] = io::to_json(*wr.weights);
        o.fields["wellBehaved"] = well_behaved_check(jc.S, group);
    } else {
        o.fields["quasiUnipotent"] = false;
        o.witness = {{"nonCyclotomicFactor", io::to_json(wr.failing_factor)}};
    }
    if (opt.oracle) {
        bool ok = jc.S * jc.U == m && jc.U * jc.S == m && is_unipotent(jc.U) && is_semisimple(jc.S) &&
                  is_polynomial_in(jc.S, m);
        o.fields["oracle"] = {{"jordanChevalley", ok}};
        if (!ok) throw OracleError("Jordan-Chevalley identities fail");
    }
    return o;
}

inline Outcome cmd_split(const json& j, const Options& opt) {
    io::check_schema(j);
    auto fs = io::filtrations_from(j);
    SplitResult r = simultaneous_split(fs);
    Outcome o;
    o.code = r.splittable() ? Affirmative : Negative;
    o.verdict = r.splittable() ? "splittable" : "not-splittable";
    o.fields["splittable"] = r.splittable();
    if (r.basis) o.fields["basis"] = io::to_json(*r.basis);
    if (r.certificate) o.witness = io::to_json(*r.certificate);
    if (opt.oracle && r.basis) {
        bool ok = verify_adapted(*r.basis, fs);
        o.fields["oracle"] = {{"adaptedBasis", ok}};
        if (!ok) throw OracleError("emitted basis is not adapted");
    }
    return o;
}

inline LaurentMatrix transition_from(const json& j, std::string& path) {
    if (j.is_array()) {
        path = "";
        return io::laurent_matrix_from(j, "");
    }
    io::check_schema(j);
    path = "/transition";
    return io::laurent_matrix_from(io::field(j, "transition", ""), path);
}

inline json factors_json(const BirkhoffFactors& f) {
    return {{"minus", io::to_json(f.minus)}, {"diag", io::to_json(f.diag)}, {"plus", io::to_json(f.plus)}};
}

inline void birkhoff_oracle(const LaurentMatrix& t, const BirkhoffFactors& f, Outcome& o) {
    bool recon = verify_birkhoff(t, f);
    bool rank = splitting_type_rank_oracle(t) == f.exponents;
    o.fields["oracle"] = {{"reconstruction", recon}, {"rankOracle", rank}};
    if (!recon || !rank) throw OracleError("Birkhoff factorization disagrees with its oracle");
}

inline Outcome cmd_birkhoff(const json& j, const Options& opt) {
    std::string path;
    LaurentMatrix t = transition_from(j, path);
    if (t.rows() == 0) throw io::InputError(path, "empty matrix");
    BirkhoffFactors f;
    try {
        f = birkhoff_factorize(t);
    } catch (const AlgebraError& e) {
        throw io::InputError(path, e.what());
    }
    Outcome o;
    o.verdict = "factorized";
    o.fields["splittingType"] = f.exponents;
    o.fields["factors"] = factors_json(f);
    if (opt.oracle) birkhoff_oracle(t, f, o);
    return o;
}

inline Outcome cmd_football(const json& j, const Options& opt) {
    io::check_schema(j);
    EquivariantTransition et;
    et.T = io::laurent_matrix_from(io::field(j, "transition", ""), "/transition");
    et.p = io::integer(io::field(j, "p", ""), "/p");
    et.q = io::integer(io::field(j, "q", ""), "/q");
    et.isotropy0 = io::integers(io::field(j, "isotropy0", ""), "/isotropy0");
    et.isotropy_inf = io::integers(io::field(j, "isotropyInf", ""), "/isotropyInf");
    FootballSplit r;
    try {
        r = football_split(et);
    } catch (const AlgebraError& e) {
        throw io::InputError("/transition", e.what());
    }
    Outcome o;
    o.verdict = "factorized";
    o.fields["classes"] = r.classes;
    o.fields["consistentP"] = r.consistent_p;
    o.fields["consistentQ"] = r.consistent_q;
    o.fields["factors"] = factors_json(r.factors);
    if (opt.oracle) birkhoff_oracle(et.T, r.factors, o);
    return o;
}

inline Outcome cmd_extend(const json& j, const Options& opt) {
    io::check_schema(j);
    ConnectionData d = io::connection_data_from(j);
    ExtendedConnection ext;
    try {
        ext = extend_connection(d);
    } catch (const AlgebraError& e) {
        throw io::InputError("", e.what());
    }
    Outcome o;
    o.verdict = "extends";
    o.fields["extends"] = true;
    o.fields["twists"] = ext.twists;
    o.fields["frameWeights"] = ext.frame_weights;
    o.fields["global"] = io::to_json(ext.global);
    o.fields["phi0"] = io::to_json(ext.phi0);
    o.fields["phiInf"] = io::to_json(ext.phi_inf);
    json eig = json::array();
    for (const auto& [v, mult] : ext.eigenvalues) eig.push_back({{"value", logconn::to_string(v)}, {"multiplicity", mult}});
    o.fields["residueEigenvalues"] = eig;
    if (opt.oracle) {
        bool ok = verify_extension(d, ext) && flatness_check(ext.global).flat;
        o.fields["oracle"] = {{"gaugeIdentities", ok}};
        if (!ok) throw OracleError("extension fails its gauge or flatness checks");
    }
    return o;
}

inline Outcome cmd_castle(const json& j, const Options& opt) {
    io::check_schema(j);
    PrehomDescriptor d = io::descriptor_from(j);
    try {
        d.validate();
    } catch (const AlgebraError& e) {
        throw io::InputError("", e.what());
    }
    Outcome o;
    o.verdict = "transformed";
    o.fields["descriptor"] = io::to_json(d);
    PrehomDescriptor c = castling_transform(d);
    o.fields["castled"] = io::to_json(c);
    o.fields["involution"] = castling_transform(c).n == d.n && castling_transform(c).r == d.r;
    o.fields["moritaFactor"] = logconn::to_string(morita_rescale(d.r, d.n, Rational(1)));
    if (opt.chain >= 0) o.fields["dims"] = castling_chain(d, opt.chain);
    return o;
}

inline Outcome cmd_gen_divisor(const Options& opt) {
    if (opt.n < 2) throw io::InputError("", "--n must be at least 2");
    SaitoSystem sys = castled_saito_system(opt.n);
    SaitoResult r = saito_check(sys);
    Outcome o;
    o.code = r.free ? Affirmative : Negative;
    o.verdict = r.free ? "free" : "not-free";
    o.fields["system"] = io::to_json(sys);
    o.fields["divisorText"] = sys.divisor.to_string(sys.names);
    o.fields["free"] = r.free;
    o.fields["unit"] = logconn::to_string(r.unit);
    return o;
}

inline Outcome cmd_gen_nonextendable(const std::optional<json>& j, const Options& opt) {
    std::vector<QMatrix> psi;
    long n = 3;
    std::size_t m = 0;
    if (j) {
        io::check_schema(*j);
        n = io::integer(io::field(*j, "n", ""), "/n");
        const json& ps = io::array_at(io::field(*j, "psi", ""), "/psi");
        for (std::size_t i = 0; i < ps.size(); ++i) psi.push_back(io::qmatrix_from(ps[i], io::child("/psi", i)));
        if (psi.empty()) throw io::InputError("/psi", "need at least one generator");
        m = psi.front().rows();
    } else if (opt.rep == "fundamental" || opt.rep.empty()) {
        psi = sl2_fundamental();
        m = 2;
    } else if (opt.rep == "adjoint") {
        psi = sl2_adjoint();
        m = 3;
    } else {
        throw io::InputError("", "--rep must be \"fundamental\" or \"adjoint\"");
    }
    NonExtendable ne;
    try {
        ne = gen_nonextendable(psi, n, m);
    } catch (const AlgebraError& e) {
        throw io::InputError(j ? "/psi" : "", e.what());
    }
    Outcome o;
    o.verdict = "non-extendable";
    o.fields["n"] = n;
    o.fields["rank"] = m;
    o.fields["residualSlTrivial"] = ne.certificate.residual_trivial;
    o.witness = {{"generatorIndex", ne.certificate.generator_index},
                 {"generatorName", ne.certificate.generator_name},
                 {"generator", io::to_json(ne.certificate.generator)}};
    if (opt.oracle) {
        bool ok = !chevalley_violation(psi, n, m) && !residual_sl_trivial(ne.rep);
        o.fields["oracle"] = {{"bracketRelations", ok}};
        if (!ok) throw OracleError("generated representation fails its bracket check");
    }
    return o;
}

// ---------------------------------------------------------------------------

inline json certificate(const Options& opt, const Outcome& o, const std::string& input_text) {
    json c = {{"schema", 1}, {"command", opt.command}, {"verdict", o.verdict}};
    for (const auto& [k, v] : o.fields.items()) c[k] = v;
    if (!o.witness.is_null()) c["witness"] = o.witness;
    c["inputDigest"] = io::digest(input_text);
    c["version"] = kVersion;
    return c;
}

inline void print_human(std::ostream& out, const json& c) {
    for (const auto& [k, v] : c.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

inline Outcome dispatch(const Options& opt, std::string& input_text) {
    if (opt.command == "gen-divisor") return cmd_gen_divisor(opt);
    if (opt.command == "gen-nonextendable") {
        if (opt.input.empty()) return cmd_gen_nonextendable(std::nullopt, opt);
        input_text = read_input(opt.input);
        return cmd_gen_nonextendable(parse_json(input_text), opt);
    }
    if (opt.input.empty()) throw io::InputError("", "missing input");
    input_text = read_input(opt.input);
    json j = parse_json(input_text);
    if (opt.command == "saito-check") return cmd_saito(j, opt);
    if (opt.command == "flat-check") return cmd_flat(j, opt);
    if (opt.command == "jc") return cmd_jc(j, opt);
    if (opt.command == "split-filtrations") return cmd_split(j, opt);
    if (opt.command == "birkhoff") return cmd_birkhoff(j, opt);
    if (opt.command == "football-split") return cmd_football(j, opt);
    if (opt.command == "extend") return cmd_extend(j, opt);
    if (opt.command == "castle") return cmd_castle(j, opt);
    throw io::InputError("", "unknown command " + opt.command);
}

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact algebra for logarithmic connections", "logconn"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "emit a JSON certificate");
    app.add_flag("--oracle", opt.oracle, "cross-check results with independent oracles");
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("-o,--output", opt.output, "write the report to a file");
    app.set_version_flag("--version", kVersion);

    auto add = [&](const std::string& name, const std::string& desc, bool needs_input) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        auto* in = sub->add_option("input", opt.input, "JSON file or inline JSON");
        if (needs_input) in->required();
        return sub;
    };
    add("saito-check", "Saito criterion for a divisor and n vector fields", true);
    add("flat-check", "flatness of a logarithmic connection", true);
    add("jc", "Jordan-Chevalley decomposition and central-log data", true)
        ->add_option("--group", opt.group, "GL or SL")
        ->check(CLI::IsMember({"GL", "SL"}));
    add("split-filtrations", "simultaneous splitting of filtrations", true);
    add("birkhoff", "Birkhoff factorization of a Laurent matrix", true);
    add("football-split", "splitting of an equivariant bundle on a football", true);
    add("extend", "extend a logarithmic connection from C^2 minus the origin", true);
    add("castle", "castling transform of a prehomogeneous descriptor", true)
        ->add_option("--chain", opt.chain, "number of castle-and-rebase steps");
    add("gen-divisor", "minor-product free divisor and its Saito fields", false)
        ->add_option("--n", opt.n, "number of rows");
    add("gen-nonextendable", "residue data of a non-extendable connection", false)
        ->add_option("--rep", opt.rep, "fundamental or adjoint");

    std::vector<std::string> argv_store = {"logconn"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Malformed;
    }
    opt.command = app.get_subcommands().front()->get_name();

    std::string input_text;
    Outcome o;
    try {
        o = dispatch(opt, input_text);
    } catch (const io::InputError& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return Malformed;
    } catch (const AlgebraError& e) {
        err << "error: " << e.what() << '\n';
        return Malformed;
    } catch (const OracleError& e) {
        err << "error: oracle disagreement: " << e.what() << '\n';
        return OracleMismatch;
    }

    json c = certificate(opt, o, input_text);
    std::ostringstream report;
    if (opt.json_out) report << c.dump() << '\n';
    else print_human(report, c);
    if (!opt.output.empty()) {
        std::ofstream f(opt.output);
        if (!f) {
            err << "error: cannot write " << opt.output << '\n';
            return Malformed;
        }
        f << report.str();
    } else {
        out << report.str();
    }
    return o.code;
}

}  // namespace logconn::cli

#endif  // LOGCONN_CLI_HPP
