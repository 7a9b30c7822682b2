#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qpgeom/io.hpp"
#include "qpgeom/random.hpp"

using namespace qpgeom;

namespace {

enum Exit { verified = 0, usage = 1, refuted = 2, undetermined = 3 };

struct Globals {
    double tol = Tolerances::from_env().eps;
    std::uint64_t seed = 0;
    bool table = false;

    Tolerances tolerances() const {
        Tolerances t;
        t.eps = tol;
        return t;
    }
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

SolveMethod method_from(const std::string& name) {
    if (name == "direct") return SolveMethod::direct_solve;
    if (name == "power") return SolveMethod::power_iteration;
    return SolveMethod::gth;
}

Json oracle_json(const StationaryEstimate& est) {
    return {{"N", est.N}, {"method", to_string(est.method)}, {"residual_norm", est.residual_norm}, {"iterations", est.iterations}};
}

void print_table(const Json& report) {
    std::printf("%-26s %-15s %s\n", "check", "verdict", "details");
    for (const auto& c : report["necessary"]["checks"])
        std::printf("%-26s %-15s %s\n", c["name"].get<std::string>().c_str(), c["verdict"].get<std::string>().c_str(),
                    c["details"].get<std::string>().c_str());
    const auto& inv = report["invariant"];
    std::printf("%-26s %-15s max residual %s, routes agree: %s\n", "invariant_on_window",
                inv["is_invariant_on_window"].get<bool>() ? "yes" : "no", inv["max_residual"].get<std::string>().c_str(),
                inv["routes_agree"].get<bool>() ? "yes" : "no");
    if (report.contains("oracle"))
        std::printf("%-26s N=%d max_rel_error %.3e at (%d,%d)\n", "oracle", report["oracle"]["N"].get<int>(),
                    report["oracle"]["max_rel_error"].get<double>(), report["oracle"]["worst"][0].get<int>(),
                    report["oracle"]["worst"][1].get<int>());
    std::printf("overall: %s\n", report["overall"].get<std::string>().c_str());
}

int cmd_check(const Globals& g, const std::string& walk_file, const std::string& terms_file, int window, int oracle_n,
              const std::string& method) {
    const Tolerances tol = g.tolerances();
    Bundle b = parse_bundle(read_file(walk_file), walk_file, tol);
    if (!terms_file.empty()) b.terms = parse_terms(read_file(terms_file), terms_file, tol);
    if (!b.terms) throw ParseError(walk_file, 0, "terms", "no term set given");

    Json report;
    try {
        report["validation"] = to_json(validate_walk(b.walk));
    } catch (const std::exception& e) {
        report["validation"] = {{"valid", false}, {"error", e.what()}};
    }
    const auto necessary = check_necessary(b.walk, *b.terms, window, tol);
    const auto invariant = check_invariant(b.walk, *b.terms, window, tol);
    report["necessary"] = to_json(necessary);
    report["invariant"] = to_json(invariant);
    if (oracle_n > 0) {
        const auto est = truncated_stationary(b.walk, oracle_n, method_from(method));
        const auto cmp = compare(est, *b.terms, std::min(window, oracle_n));
        Json o = oracle_json(est);
        o["window"] = std::min(window, oracle_n);
        o["max_rel_error"] = cmp.max_rel_error;
        o["worst"] = {cmp.worst_i, cmp.worst_j};
        report["oracle"] = o;
    }

    Exit code = undetermined;
    if (invariant.is_invariant_on_window) code = verified;
    else if (necessary.overall == Overall::refuted || !invariant.residual_route) code = refuted;
    report["overall"] = code == verified ? "invariant" : code == refuted ? "refuted" : "undetermined";

    if (g.table) print_table(report);
    else emit(report);
    return code;
}

Json bundle_json(const Construction& c, const Coordinate& seed, const ConstructOptions& opts) {
    Json prov = {{"seed", {to_json(seed.rho), to_json(seed.sigma)}},
                 {"first_step", to_string(opts.trace.first)},
                 {"max_length", opts.trace.max_len},
                 {"boundary_choice", opts.boundary == BoundaryChoice::lexmin ? "lexmin" : "centroid"},
                 {"chain", to_json(c.chain)},
                 {"stop_reason", to_string(c.chain.stop)},
                 {"nullspace_dim", c.nullspace_dim}};
    if (!c.ok) {
        prov["failure"] = c.failure;
        return {{"provenance", prov}};
    }
    try {
        prov["validation"] = to_json(validate_walk(c.walk));
    } catch (const std::exception& e) {
        prov["validation"] = {{"valid", false}, {"error", e.what()}};
    }
    return {{"walk", to_json(c.walk)}, {"terms", to_json(c.terms)}, {"provenance", prov}};
}

int cmd_construct(const Globals& g, const std::string& file, const std::string& rho_text, const std::string& sigma_text,
                  int length, bool horizontal, bool search, const std::string& boundary) {
    const Tolerances tol = g.tolerances();
    const WalkSpec interior = parse_bundle(read_file(file), file, tol).walk.interior_only();
    Coordinate seed{Numeric::parse(rho_text, tol.eps), Numeric(0)};
    if (!sigma_text.empty()) {
        seed.sigma = Numeric::parse(sigma_text, tol.eps);
    } else {
        const auto roots = sigma_partners(interior, seed.rho, tol).inside();
        if (roots.empty() || roots.front().sign() <= 0) throw std::invalid_argument("no sigma on the curve for rho " + rho_text);
        seed.sigma = roots.front();
    }

    ConstructOptions opts;
    opts.trace.max_len = length;
    opts.trace.first = horizontal ? StepDirection::horizontal : StepDirection::vertical;
    opts.boundary = boundary == "centroid" ? BoundaryChoice::centroid : BoundaryChoice::lexmin;

    Construction best = construct_measure(interior, seed, opts, tol);
    ConstructOptions best_opts = opts;
    if (search) {
        for (auto first : {StepDirection::vertical, StepDirection::horizontal})
            for (int len = length; len >= 1; --len) {
                ConstructOptions o = opts;
                o.trace.first = first;
                o.trace.max_len = len;
                auto c = construct_measure(interior, seed, o, tol);
                if (c.ok && (!best.ok || c.terms.size() > best.terms.size())) best = std::move(c), best_opts = o;
            }
    }
    emit(bundle_json(best, seed, best_opts));
    return best.ok ? verified : refuted;
}

int cmd_curve(const Globals& g, const std::string& file, int n) {
    const Tolerances tol = g.tolerances();
    write_curve_csv(std::cout, curve_sample(parse_bundle(read_file(file), file, tol).walk, n, tol));
    return verified;
}

int cmd_oracle(const Globals& g, const std::string& file, int n, const std::string& method, const std::string& terms_file,
               int window, const std::string& csv) {
    const Tolerances tol = g.tolerances();
    Bundle b = parse_bundle(read_file(file), file, tol);
    if (!terms_file.empty()) b.terms = parse_terms(read_file(terms_file), terms_file, tol);
    const auto est = truncated_stationary(b.walk, n, method_from(method));
    Json out = oracle_json(est);
    if (b.terms) {
        const auto cmp = compare(est, *b.terms, std::min(window, n));
        out["window"] = std::min(window, n);
        out["max_rel_error"] = cmp.max_rel_error;
        out["worst"] = {cmp.worst_i, cmp.worst_j};
    }
    if (!csv.empty()) {
        std::ofstream os(csv);
        if (!os) throw std::runtime_error("cannot write " + csv);
        write_pi_csv(os, est);
    }
    emit(out);
    return verified;
}

// Random planted kernels, each constructed from its planted point.
int cmd_sweep(const Globals& g, int count, int length) {
    const Tolerances tol = g.tolerances();
    Rng rng(g.seed);
    Json rows = Json::array();
    int ok = 0;
    for (int k = 0; k < count; ++k) {
        const auto planted = planted_kernel(rng);
        ConstructOptions opts;
        opts.trace.max_len = length;
        Json row = {{"interior", to_json(planted.interior)}, {"seed", {to_json(planted.seed.rho), to_json(planted.seed.sigma)}}};
        try {
            const auto c = construct_measure(planted.interior, planted.seed, opts, tol);
            row["ok"] = c.ok;
            row["terms"] = c.terms.size();
            row["stop_reason"] = to_string(c.chain.stop);
            if (c.ok) {
                ++ok;
                row["walk"] = to_json(c.walk);
                row["measure"] = to_json(c.terms);
            } else {
                row["failure"] = c.failure;
            }
        } catch (const std::exception& e) {
            row["ok"] = false;
            row["failure"] = e.what();
        }
        rows.push_back(row);
    }
    emit({{"seed", g.seed}, {"count", count}, {"constructed", ok}, {"results", rows}});
    return verified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric-term invariant measures of quarter-plane random walks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "approximate-regime tolerance (default 1e-9, or QPGEOM_TOL)");
    app.add_option("--seed", g.seed, "seed for randomized workflows");
    app.add_flag("--table", g.table, "human-readable report instead of JSON");

    std::string walk, terms, method = "direct", rho, sigma, boundary = "lexmin", csv;
    int window = 6, oracle_n = 0, n = 200, length = 16, count = 20;
    bool horizontal = false, search = false;

    auto* check = app.add_subcommand("check", "verify a candidate invariant measure");
    check->add_option("walk", walk, "walk or bundle JSON")->required();
    check->add_option("terms", terms, "term set JSON");
    check->add_option("--window", window, "residual window");
    check->add_option("--oracle", oracle_n, "also compare with the truncated chain on [0,N]^2");
    check->add_option("--method", method)->check(CLI::IsMember({"direct", "power", "gth"}));

    auto* construct = app.add_subcommand("construct", "build a walk and measure from an interior kernel");
    construct->add_option("interior", walk, "walk JSON; boundary entries are ignored")->required();
    construct->add_option("--rho", rho, "seed rho")->required();
    construct->add_option("--sigma", sigma, "seed sigma (default: largest curve root)");
    construct->add_option("--length", length, "chain length")->check(CLI::PositiveNumber);
    construct->add_flag("--horizontal", horizontal, "first step keeps rho");
    construct->add_flag("--search", search, "try both directions and every length up to --length");
    construct->add_option("--boundary", boundary)->check(CLI::IsMember({"lexmin", "centroid"}));

    auto* curve = app.add_subcommand("curve", "CSV samples of Q, H and V");
    curve->add_option("walk", walk)->required();
    curve->add_option("-n", n, "samples per sweep")->check(CLI::PositiveNumber);

    auto* oracle = app.add_subcommand("oracle", "stationary distribution of the truncated chain");
    oracle->add_option("walk", walk, "walk or bundle JSON")->required();
    oracle->add_option("-N", n, "truncation size")->check(CLI::PositiveNumber);
    oracle->add_option("--method", method)->check(CLI::IsMember({"direct", "power", "gth"}));
    oracle->add_option("--terms", terms, "term set to compare against");
    oracle->add_option("--window", window, "comparison window");
    oracle->add_option("--csv", csv, "write pi as CSV");

    auto* sweep = app.add_subcommand("sweep", "construct measures on random kernels");
    sweep->add_option("--count", count)->check(CLI::PositiveNumber);
    sweep->add_option("--length", length)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : usage;
    }
    if (oracle->parsed() && oracle->count("-N") == 0) n = 40;
    if (oracle->parsed() && oracle->count("--window") == 0) window = 10;

    try {
        if (check->parsed()) return cmd_check(g, walk, terms, window, oracle_n, method);
        if (construct->parsed()) return cmd_construct(g, walk, rho, sigma, length, horizontal, search, boundary);
        if (curve->parsed()) return cmd_curve(g, walk, n);
        if (oracle->parsed()) return cmd_oracle(g, walk, n, method, terms, window, csv);
        return cmd_sweep(g, count, length);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return usage;
}
