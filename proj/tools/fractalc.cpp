#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fractalc/claims.hpp"
#include "fractalc/cli_specs.hpp"
#include "fractalc/corpus.hpp"
#include "fractalc/derivations.hpp"
#include "fractalc/errors.hpp"
#include "fractalc/frac_ops.hpp"
#include "fractalc/local_ops.hpp"
#include "fractalc/report.hpp"

namespace {

using namespace fractalc;

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct ComputeArgs {
    std::string op;
    double alpha = 0.5;
    std::string fn;
    std::optional<double> at;
    std::string range;
    double base = 0.0;
    std::string sigma = "+";
    int nodes = 0;
    int ladder_scales = LadderOptions{}.scales;
    double tol = LadderOptions{}.tolerance;
    std::string domain = "0,1";
    std::string out;
};

int run_compute(const ComputeArgs& a) {
    const Interval dom = parse_interval(a.domain);
    const FuncExpr f = parse_function_spec(a.fn, dom);
    std::vector<double> ts;
    if (a.at) ts.push_back(*a.at);
    if (!a.range.empty()) ts = range_points(parse_range(a.range));
    if (ts.empty()) throw ArgumentError("one of --at or --range is required");
    const Direction sigma = parse_direction(a.sigma);
    if (a.nodes < 0) throw ArgumentError("--nodes must be positive");
    const int nodes = a.nodes > 0 ? a.nodes : (a.op == "gl" ? kOracleNodes : kDefaultNodes);
    LadderOptions ladder;
    ladder.scales = a.ladder_scales;
    ladder.tolerance = a.tol;

    const bool local = a.op == "bc-lfd" || a.op == "kg-lfd";
    std::ostringstream os;
    os << (local ? "t,value,status,error_bar\n" : "t,value\n");
    for (double t : ts) {
        if (local) {
            const FracOrder alpha(a.alpha);
            const auto p = a.op == "bc-lfd" ? bc_lfd(f, alpha, t, sigma, ladder) : kg_lfd(f, alpha, t, sigma, ladder);
            os << fmt(t) << ',' << fmt(p.result.value) << ',' << to_string(p.result.status) << ','
               << fmt(p.result.error_bar) << '\n';
            continue;
        }
        double v = 0.0;
        if (a.op == "rl-int") {
            if (!(a.alpha > 0.0)) throw DomainError("integral order must be positive");
            v = rl_integral(f, a.alpha, a.base, t, nodes);
        } else if (a.op == "rl-deriv") {
            v = rl_derivative(f, FracOrder(a.alpha), a.base, t, nodes);
        } else if (a.op == "caputo") {
            v = caputo(f, FracOrder(a.alpha), a.base, t, nodes);
        } else if (a.op == "jumarie") {
            v = jumarie(f, FracOrder(a.alpha), t, nodes);
        } else if (a.op == "gl") {
            v = gl_derivative(f, FracOrder(a.alpha), a.base, t, nodes);
        } else if (a.op == "classical") {
            v = derivative(f)(t);
        } else {
            throw ArgumentError("unknown operator '" + a.op + "'");
        }
        os << fmt(t) << ',' << fmt(v) << '\n';
    }
    if (a.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream file(a.out);
        if (!file) throw ArgumentError("cannot write " + a.out);
        file << os.str();
    }
    return kExitOk;
}

struct CheckArgs {
    std::string id;
    std::optional<int> nodes;
    std::optional<int> oracle_nodes;
    std::optional<int> ladder_scales;
    std::optional<double> tol;
};

int run_check(const CheckArgs& a) {
    std::vector<const ClaimSpec*> specs;
    if (a.id == "all") {
        for (const auto& c : claim_registry()) specs.push_back(&c);
    } else if (const auto* c = find_claim(a.id)) {
        specs.push_back(c);
    } else {
        throw ArgumentError("unknown claim id '" + a.id + "'");
    }
    RunConfig cfg;
    cfg.seed = seed_from_environment();
    if (a.nodes) cfg.res.nodes = *a.nodes;
    if (a.oracle_nodes) cfg.res.oracle_nodes = *a.oracle_nodes;
    if (a.ladder_scales) cfg.res.ladder.scales = *a.ladder_scales;
    if (a.tol) cfg.res.ladder.tolerance = *a.tol;
    if (cfg.res.nodes < 8 || cfg.res.oracle_nodes < 8) throw ArgumentError("node counts must be at least 8");
    if (cfg.res.ladder.scales < 4) throw ArgumentError("--ladder-scales must be at least 4");
    if (!(cfg.res.ladder.tolerance > 0.0)) throw ArgumentError("--tol must be positive");

    bool all_met = true;
    for (const auto& r : run_claims(specs, cfg)) {
        std::cout << r.to_json().dump() << '\n';
        all_met = all_met && r.met();
    }
    std::cout.flush();
    return all_met ? kExitOk : kExitUnexpected;
}

struct SolveArgs {
    std::string algebra;
    std::optional<int> n;
    std::optional<int> d;
};

int run_solve(const SolveArgs& a) {
    std::optional<FiniteAlgebra> alg;
    if (a.algebra == "pointwise") {
        if (!a.n) throw ArgumentError("pointwise needs --n");
        if (*a.n < 1 || *a.n > kMaxPointwiseSize)
            throw ArgumentError("pointwise size must be in [1, " + std::to_string(kMaxPointwiseSize) + "]");
        alg = FiniteAlgebra::pointwise(*a.n);
    } else if (a.algebra == "truncated-poly") {
        if (!a.d) throw ArgumentError("truncated-poly needs --d");
        if (*a.d < 0 || *a.d > kMaxPolynomialDegree)
            throw ArgumentError("truncated-poly degree must be in [0, " + std::to_string(kMaxPolynomialDegree) + "]");
        alg = FiniteAlgebra::truncated_polynomial(*a.d);
    } else {
        throw ArgumentError("unknown algebra '" + a.algebra + "'");
    }
    const auto space = solve_derivation_space(*alg);
    auto j = to_json(space);
    if (alg->kind() == AlgebraKind::TruncatedPolynomial) {
        auto facts = nlohmann::json::array();
        for (const auto& f : factor_through_derivative(space)) {
            auto q = nlohmann::json::array();
            for (const auto& c : f.q) q.push_back(rational_string(c));
            facts.push_back({{"d_of_x", q}, {"exact", f.exact()}});
        }
        j["factorizations"] = facts;
    }
    std::cout << j.dump() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional derivative operators and checks of their algebraic laws."};
    app.require_subcommand(1);
    app.footer("Claims (check <id>):\n" + fractalc::claim_table() +
               "\nExit codes: 0 all verdicts as expected, 1 unexpected verdict, 2 usage error, 3 domain error.\n"
               "FRACTALC_SEED sets the seed for randomized probe points (default 42).");

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "Evaluate an operator; CSV to stdout or --out");
    compute->add_option("--op", ca.op, "rl-int, rl-deriv, caputo, jumarie, gl, bc-lfd, kg-lfd, classical")
        ->required()
        ->check(CLI::IsMember({"rl-int", "rl-deriv", "caputo", "jumarie", "gl", "bc-lfd", "kg-lfd", "classical"}));
    compute->add_option("--alpha", ca.alpha, "Order in (0,1)")->capture_default_str();
    compute->add_option("--fn", ca.fn, "Function, e.g. \"monomial:1,0.5+exp:2\"")->required();
    auto* at = compute->add_option("--at", ca.at, "Single evaluation point");
    auto* range = compute->add_option("--range", ca.range, "lo,hi,n");
    at->excludes(range);
    compute->add_option("--base", ca.base, "Base point a")->capture_default_str();
    compute->add_option("--sigma", ca.sigma, "Side for local operators: + or -")->capture_default_str();
    compute->add_option("--nodes", ca.nodes, "Grid cells (default 4096, gl 16384)");
    compute->add_option("--ladder-scales", ca.ladder_scales, "Scales in the local ladder")->capture_default_str();
    compute->add_option("--tol", ca.tol, "Limit tolerance for local operators")->capture_default_str();
    compute->add_option("--domain", ca.domain, "a,b")->capture_default_str();
    compute->add_option("--out", ca.out, "CSV output file");

    CheckArgs ka;
    auto* check = app.add_subcommand("check", "Run claim checks; one JSON report per line");
    check->add_option("id", ka.id, "Claim id or 'all'")->required();
    check->add_option("--nodes", ka.nodes, "Grid cells for fractional operators");
    check->add_option("--oracle-nodes", ka.oracle_nodes, "Grid cells for Gruenwald-Letnikov cross-checks");
    check->add_option("--ladder-scales", ka.ladder_scales, "Scales in local derivative ladders");
    check->add_option("--tol", ka.tol, "Limit tolerance for local derivative ladders");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Exact derivation space of a finite algebra (JSON)");
    solve->add_option("--algebra", sa.algebra, "pointwise or truncated-poly")->required();
    solve->add_option("--n", sa.n, "Size of the pointwise algebra (max 16)");
    solve->add_option("--d", sa.d, "Degree of the truncated polynomial algebra (max 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compute->parsed()) return run_compute(ca);
        if (check->parsed()) return run_check(ka);
        if (solve->parsed()) return run_solve(sa);
    } catch (const fractalc::DomainError& e) {
        std::cerr << "fractalc: domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const fractalc::ArgumentError& e) {
        std::cerr << "fractalc: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fractalc::UnsupportedVariant& e) {
        std::cerr << "fractalc: unsupported: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "fractalc: " << e.what() << '\n';
        return kExitUnexpected;
    }
    return kExitUsage;
}
