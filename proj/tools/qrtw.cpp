// command-line front door: list, verify, qrt, orbit, reduce-check
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qrtw/qrt.hpp"
#include "qrtw/verify.hpp"

namespace {

using namespace qrtw;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw Error("bad rational literal '" + s + "' (use p/q or an integer)");
    q.canonicalize();
    return q;
}

// a=1,b=3/2,...
ParameterAssignment parse_params(const std::string& spec) {
    ParameterAssignment pa;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("bad parameter assignment '" + item + "' (use name=value)");
        pa.values[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    return pa;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
}

// a definition file read as a map: the components in file order, over a ring
// whose leading symbols are the phase variables
RationalMap map_from_file(const std::string& path, const std::string& name) {
    std::vector<Definition> defs = parse_definition_file(path);
    if (defs.empty()) throw Error("no definitions in '" + path + "'");
    RationalMap m;
    m.name = name;
    m.syms = defs.front().syms;
    m.nphase = defs.size();
    for (const Definition& d : defs) {
        if (!same_symbols(d.syms, m.syms))
            throw Error("'" + path + "': all components must share one @vars ring");
        m.comps.push_back(d.value);
    }
    if (m.nphase > m.syms->size())
        throw Error("'" + path + "': more components than ring symbols");
    return m;
}

std::string describe(const CheckResult& r, const SymbolsPtr& syms) {
    std::ostringstream out;
    out << (r.ok ? "pass" : "FAIL");
    out << " (" << (r.mode == Mode::Exact ? "exact" : "randomized") << ")";
    if (!r.detail.empty()) out << " " << r.detail;
    if (r.witness) {
        out << "\n  witness:";
        for (size_t i = 0; i < r.witness->size() && i < syms->size(); ++i)
            out << " " << syms->name(i) << "=" << (*r.witness)[i].get_str();
        if (r.lhs && r.rhs)
            out << "\n  lhs=" << r.lhs->get_str() << " rhs=" << r.rhs->get_str();
    }
    out << "\n";
    return out.str();
}

int cmd_list() {
    for (const ExampleInfo& e : list_examples())
        std::cout << e.name << "  " << e.summary << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& example, const ParameterAssignment& params,
               const SuiteOptions& opt, const std::string& format,
               const std::string& out_path, const std::string& mutate) {
    CheckReport rep = run_suite(example, params, opt, mutate);
    write_output(out_path, format == "text" ? rep.to_text() : rep.to_json());
    return rep.overall ? kExitOk : kExitCheckFailed;
}

int cmd_qrt(const std::string& file, const std::string& u_name,
            const std::string& v_name, const std::string& out_path) {
    std::vector<Definition> defs = parse_definition_file(file);
    if (defs.empty()) throw Error("no definitions in '" + file + "'");
    const Definition& d = defs.front();
    size_t iu = d.syms->require(u_name);
    size_t iv = d.syms->require(v_name);
    BiquadraticInvariant bi = validate_biquadratic(d.value, iu, iv);
    RationalMap q = build_qrt(bi);
    std::ostringstream out;
    out << "invariant " << d.name << " = " << d.value.str() << "\n";
    for (size_t i = 0; i < q.comps.size(); ++i)
        out << q.syms->name(i) << " -> " << q.comps[i].str() << "\n";
    write_output(out_path, out.str());
    return kExitOk;
}

int cmd_orbit(const std::string& example, const ParameterAssignment& params,
              const std::string& map_tag, const std::vector<std::string>& start,
              int steps, bool use_float, double tol, const std::string& out_path) {
    ReducedSystem rs = reduced(example, params);
    const RationalMap* m = nullptr;
    for (const auto& [tag, mp] : rs.maps)
        if (map_tag.empty() ? m == nullptr : tag == map_tag) m = &mp;
    if (!m) throw Error("no reduced map named '" + map_tag + "' in " + example);

    if (start.size() != rs.nphase)
        throw Error("--start needs " + std::to_string(rs.nphase) + " values for " +
                    example);
    Point p;
    for (const std::string& s : start) p.push_back(parse_rational(s));
    for (size_t i = rs.nphase; i < rs.syms->size(); ++i) {
        const std::string& pname = rs.syms->name(i);
        auto it = params.values.find(pname);
        if (it == params.values.end())
            throw Error("parameter '" + pname + "' must be set with --params for orbit");
        p.push_back(it->second);
    }

    OrbitArithmetic arith;
    arith.use_float = use_float;
    arith.tol = tol;
    OrbitRecord rec = iterate_orbit(*m, p, steps,
                                    {{rs.invariant_name, rs.invariant}}, arith);
    write_output(out_path, rec.to_csv());
    if (rec.float_drift_flagged) {
        std::cerr << "invariant drift beyond tolerance " << tol << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_reduce_check(const std::string& phi_file, const std::string& psi_file,
                     const std::string& pi_file, const ModePolicy& mp) {
    RationalMap phi = map_from_file(phi_file, "phi");
    RationalMap psi = map_from_file(psi_file, "psi");
    std::vector<Definition> pi_defs = parse_definition_file(pi_file);
    std::vector<RationalFunction> pi;
    for (const Definition& d : pi_defs) {
        if (!same_symbols(d.syms, phi.syms))
            throw Error("'" + pi_file + "': pi components must live on phi's ring");
        pi.push_back(d.value);
    }
    if (pi.size() != psi.syms->size())
        throw Error("pi needs one component per symbol of psi's ring (" +
                    std::to_string(psi.syms->size()) + ")");
    CheckResult r = check_commuting_square(phi, psi, pi, mp);
    std::cout << "commuting-square " << describe(r, phi.syms);
    return r.ok ? kExitOk : kExitCheckFailed;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for integrable maps"};
    app.require_subcommand(1);

    std::string params_spec, out_path, format = "json", mutate;
    uint64_t seed = 0;
    int trials = 200;
    std::string mode;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--params", params_spec, "parameter values, e.g. a=1,b=3/2");
        cmd->add_option("--seed", seed, "seed for randomized checks");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    CLI::App* list_cmd = app.add_subcommand("list", "print the example catalogue");
    (void)list_cmd;

    std::string example;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full check suite");
    verify_cmd->add_option("example", example, "registry example name")->required();
    verify_cmd->add_option("--mode", mode, "exact or randomized (default: per dimension)")
        ->check(CLI::IsMember({"exact", "randomized"}));
    verify_cmd->add_option("--trials", trials, "trials per randomized check");
    verify_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    verify_cmd->add_flag("--timing", "record wall times in the report");
    verify_cmd->add_option("--mutate", mutate,
                           "perturb the named stored definition by +1 first");
    add_common(verify_cmd);

    std::string inv_file, u_name, v_name;
    CLI::App* qrt_cmd = app.add_subcommand("qrt", "build the QRT map of an invariant");
    qrt_cmd->add_option("--invariant", inv_file, "definition file with the invariant")
        ->required();
    qrt_cmd->add_option("--u", u_name, "first phase variable")->required();
    qrt_cmd->add_option("--v", v_name, "second phase variable")->required();
    qrt_cmd->add_option("--out", out_path, "write output to a file instead of stdout");

    std::vector<std::string> start;
    int steps = 0;
    bool use_float = false;
    double tol = 1e-9;
    std::string map_tag;
    CLI::App* orbit_cmd = app.add_subcommand("orbit", "iterate a reduced map");
    orbit_cmd->add_option("example", example, "registry example name")->required();
    orbit_cmd->add_option("--start", start, "start point, one rational per phase variable")
        ->required();
    orbit_cmd->add_option("--steps", steps, "number of iterations")->required();
    orbit_cmd->add_option("--map", map_tag, "reduced map tag (default: first)");
    orbit_cmd->add_flag("--float", use_float, "floating-point iteration");
    orbit_cmd->add_option("--tol", tol, "relative invariant drift tolerance (float mode)");
    add_common(orbit_cmd);

    std::string phi_file, psi_file, pi_file;
    CLI::App* rc_cmd = app.add_subcommand("reduce-check",
                                          "verify pi∘phi == psi∘pi on user data");
    rc_cmd->add_option("--phi", phi_file, "definition file for phi")->required();
    rc_cmd->add_option("--psi", psi_file, "definition file for psi")->required();
    rc_cmd->add_option("--pi", pi_file, "definition file for pi")->required();
    rc_cmd->add_option("--mode", mode, "exact or randomized")
        ->check(CLI::IsMember({"exact", "randomized"}));
    rc_cmd->add_option("--trials", trials, "trials per randomized check");
    rc_cmd->add_option("--seed", seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (const char* env = std::getenv("QRTW_SEED")) seed = std::strtoull(env, nullptr, 10);

    try {
        ParameterAssignment params =
            params_spec.empty() ? ParameterAssignment{} : parse_params(params_spec);
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("verify")) {
            SuiteOptions opt;
            if (mode == "exact") opt.mode_override = Mode::Exact;
            if (mode == "randomized") opt.mode_override = Mode::Randomized;
            opt.trials = trials;
            opt.seed = seed;
            opt.record_wall_time = verify_cmd->count("--timing") > 0;
            return cmd_verify(example, params, opt, format, out_path, mutate);
        }
        if (app.got_subcommand("qrt")) return cmd_qrt(inv_file, u_name, v_name, out_path);
        if (app.got_subcommand("orbit"))
            return cmd_orbit(example, params, map_tag, start, steps, use_float, tol,
                             out_path);
        if (app.got_subcommand("reduce-check")) {
            ModePolicy mp;
            mp.mode = mode == "randomized" ? Mode::Randomized : Mode::Exact;
            mp.trials = trials;
            mp.seed = seed;
            return cmd_reduce_check(phi_file, psi_file, pi_file, mp);
        }
    } catch (const UnknownExample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DenominatorVanishes& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const NotBiquadratic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegenerateSwitch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const SingularSystem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const IdenticallySingular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const BitCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
