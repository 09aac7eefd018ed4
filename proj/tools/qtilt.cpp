#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qtilt/report.hpp"

using namespace qtilt;

namespace {

enum Exit { kPositive = 0, kNegative = 1, kError = 2 };

struct Options {
    RunConfig cfg;
    std::string output;
    std::string format = "json";
    std::string recheck;
};

struct Loaded {
    AlgebraSpec spec;
    AlgebraPtr alg;
};

Loaded load_algebra(const std::string& path, const RunConfig& cfg) {
    Loaded l{parse_algebra(read_json_file(path)), nullptr};
    l.alg = l.spec.module_algebra(cfg.max_path_len);
    return l;
}

ProjComplex load_complex(const std::string& path, const Loaded& l) {
    ProjComplex t = parse_complex(read_json_file(path), l.spec, l.alg);
    auto v = validate(t);
    if (!v.d_squared_zero) throw Error(ErrorKind::DSquaredNonzero, path + ": d^2 != 0");
    return t;
}

void write_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << j.dump(2) << "\n";
}

void emit(const Json& j, const Options& o, bool to_file) {
    std::ostringstream ss;
    if (o.format == "text") render_text(j, ss);
    else ss << j.dump(2) << "\n";
    if (to_file && !o.output.empty()) {
        std::ofstream out(o.output);
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + o.output);
        out << ss.str();
    } else {
        std::cout << ss.str();
    }
}

int verdict_exit(bool v) { return v ? kPositive : kNegative; }

/// Runs a recheck against a stored report; prints one line and maps failure to exit 2.
template <class F>
int run_recheck(const Options& o, const char* kind, F&& check) {
    Json rep = read_json_file(o.recheck);
    if (!rep.contains("report") || rep.at("report") != kind)
        throw Error(ErrorKind::InvalidInput, o.recheck + " is not a " + kind + " report");
    check(rep);
    std::cout << "recheck " << kind << ": ok\n";
    return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtilt: exact computations with tilting complexes over bound quiver algebras"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.cfg.seed, "seed for all randomized subroutines")->capture_default_str();
    app.add_option("--max-path-len", o.cfg.max_path_len, "bound on path length while enumerating bases")
        ->capture_default_str();
    app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--recheck", o.recheck, "re-verify a previously emitted report against the inputs");

    std::string alg_file, cpx_file, mod_file, p_list, q_list;
    int r = 1, s = 1;

    auto* alg = app.add_subcommand("alg", "algebra inspection")->require_subcommand(1);
    auto* alg_check = alg->add_subcommand("check", "dimension, Cartan matrix, Loewy structure");
    alg_check->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    alg_check->add_option("-o,--output", o.output, "report path");

    auto* nust = app.add_subcommand("nust", "maximal nu-stable projective module");
    nust->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    nust->add_option("-o,--output", o.output, "report path");

    auto* tilting = app.add_subcommand("tilting", "tilting complexes")->require_subcommand(1);
    auto* construct = tilting->add_subcommand("construct", "build T(P,Q) from approximation sequences");
    construct->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    construct->add_option("--p", p_list, "vertices of P, comma separated")->required();
    construct->add_option("--q", q_list, "vertices of Q, comma separated")->required();
    construct->add_option("-r", r, "length of the left part")->capture_default_str();
    construct->add_option("-s", s, "length of the right part")->capture_default_str();
    construct->add_option("-o,--output", o.output, "write the complex to this file");
    auto* verify = tilting->add_subcommand("verify", "self-orthogonality, K0 rank, basicness");
    verify->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    verify->add_option("complex", cpx_file)->required()->check(CLI::ExistingFile);
    verify->add_option("-o,--output", o.output, "report path");

    auto* endalg = app.add_subcommand("endalg", "endomorphism algebra of a tilting complex");
    endalg->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    endalg->add_option("complex", cpx_file)->required()->check(CLI::ExistingFile);
    endalg->add_option("-o,--output", o.output, "write the presented End(T) to this file");

    auto* nustable = app.add_subcommand("nustable", "iterated almost nu-stable criterion")->require_subcommand(1);
    auto* nustable_check = nustable->add_subcommand("check", "conditions (a), (b) and the simple-image test");
    nustable_check->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    nustable_check->add_option("complex", cpx_file)->required()->check(CLI::ExistingFile);
    nustable_check->add_option("-o,--output", o.output, "report path");

    auto* stable = app.add_subcommand("stable-image", "module-level image of the derived equivalence");
    stable->add_option("algebra", alg_file)->required()->check(CLI::ExistingFile);
    stable->add_option("complex", cpx_file)->required()->check(CLI::ExistingFile);
    stable->add_option("module", mod_file)->required()->check(CLI::ExistingFile);
    stable->add_option("-o,--output", o.output, "report path");

    CLI11_PARSE(app, argc, argv);

    const bool rechecking = !o.recheck.empty();
    try {
        if (alg_check->parsed()) {
            AlgebraSpec spec = parse_algebra(read_json_file(alg_file));
            if (rechecking) return run_recheck(o, "alg-check", [&](const Json& j) { recheck_alg_check(j, spec, o.cfg); });
            emit(alg_check_report(spec, o.cfg), o, true);
            return kPositive;
        }
        Loaded l = load_algebra(alg_file, o.cfg);
        if (nust->parsed()) {
            if (rechecking) return run_recheck(o, "nust", [&](const Json& j) { recheck_nust(j, l.spec, l.alg); });
            emit(nust_report(l.spec, l.alg), o, true);
            return kPositive;
        }
        if (construct->parsed()) {
            auto p = parse_label_list(l.spec.quiver, p_list), q = parse_label_list(l.spec.quiver, q_list);
            ProjComplex t(l.alg);
            if (rechecking) {
                t = construct_tpq(l.alg, p, q, r, s, o.cfg.seed).complex;
                return run_recheck(o, "tilting-construct", [&](const Json& j) {
                    ProjComplex stored = parse_complex(j.at("complex"), l.spec, l.alg);
                    detail::require(is_isomorphic_complex(stored, t).has_value(), "stored complex differs from T(P,Q)");
                    recheck_tilting(j, l.spec, l.alg, stored);
                });
            }
            Json rep = tilting_construct_report(l.spec, l.alg, p, q, r, s, o.cfg, &t);
            if (!o.output.empty()) write_json(complex_json(t, l.spec), o.output);
            emit(rep, o, false);
            return verdict_exit(rep.at("verdict").get<bool>());
        }
        ProjComplex t = load_complex(cpx_file, l);
        if (verify->parsed()) {
            if (rechecking)
                return run_recheck(o, "tilting-verify", [&](const Json& j) { recheck_tilting(j, l.spec, l.alg, t); });
            Json rep = tilting_verify_report(l.spec, t, o.cfg);
            emit(rep, o, true);
            return verdict_exit(rep.at("verdict").get<bool>());
        }
        if (endalg->parsed()) {
            if (rechecking)
                return run_recheck(o, "endalg", [&](const Json& j) { recheck_endalg(j, l.spec, l.alg, t, o.cfg); });
            require_self_orthogonal(t);
            Json rep = endalg_report(l.spec, t, o.cfg);
            if (!o.output.empty() && rep.contains("presentation")) write_json(rep.at("presentation"), o.output);
            emit(rep, o, false);
            return verdict_exit(rep.at("basic").get<bool>());
        }
        if (nustable_check->parsed()) {
            if (rechecking)
                return run_recheck(o, "nustable-check", [&](const Json& j) { recheck_nustable(j, l.spec, l.alg, t); });
            Json rep = nustable_report(l.spec, l.alg, t, o.cfg);
            emit(rep, o, true);
            return verdict_exit(rep.at("verdict").get<bool>());
        }
        if (stable->parsed()) {
            Representation x = parse_module(read_json_file(mod_file), l.spec, l.alg);
            if (rechecking)
                return run_recheck(o, "stable-image",
                                   [&](const Json& j) { recheck_stable_image(j, l.alg, t, x, o.cfg); });
            StableImageOutcome out = stable_image_report(l.spec, l.alg, t, x, o.cfg);
            emit(out.report, o, true);
            return verdict_exit(out.concentrated);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::NotTilting:
            case ErrorKind::NotConcentrated:
            case ErrorKind::NotBasic:
            case ErrorKind::NotSelfOrthogonal:
                return rechecking ? kError : kNegative;
            default:
                return kError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
