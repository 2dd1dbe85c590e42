// Acceptance suite: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "fractalc/algebra.hpp"
#include "fractalc/claims.hpp"
#include "fractalc/corpus.hpp"
#include "fractalc/derivations.hpp"
#include "fractalc/frac_ops.hpp"
#include "fractalc/local_ops.hpp"
#include "fractalc/numerics.hpp"

using namespace fractalc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const FuncExpr t = FuncExpr::monomial(1.0, 1.0);
const FracOrder half(0.5);

Outcome oracle_agreement() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double g : {0.5, 1.0, 2.0, 3.0})
        for (double a : {0.25, 0.5, 0.75})
            for (double x : {0.25, 0.5, 1.0}) {
                const auto f = FuncExpr::monomial(1.0, g);
                const FracOrder alpha(a);
                const double exact = power_rule_oracle(g, alpha, x);
                const double rl = rl_derivative(f, alpha, 0.0, x);
                const double gl = gl_derivative(f, alpha, 0.0, x, 1 << 14);
                worst = std::max({worst, std::abs(rl - exact), std::abs(gl - exact), std::abs(rl - gl)});
            }
    const double sec = seconds_since(t0);
    return {worst <= 5e-3 && sec < 10.0, "max pairwise gap " + num(worst) + " (tol 5e-3), " + num(sec) + " s"};
}

Outcome caputo_jumarie() {
    const auto t0 = Clock::now();
    double closed = 0.0, grid = 0.0;
    for (const auto& e : absolutely_continuous_corpus())
        for (double a : {0.25, 0.5, 0.75}) {
            if (try_derivative(e.f))
                closed = std::max(closed, caputo_jumarie_gap(e.f, FracOrder(a), default_probes(),
                                                             GapPath::ClosedForm).max_abs);
            grid = std::max(grid, caputo_jumarie_gap(e.f, FracOrder(a), default_probes(), GapPath::Grid).max_abs);
        }
    const double sec = seconds_since(t0);
    return {closed <= 1e-6 && grid <= 5e-3 && sec < 10.0,
            "closed-form " + num(closed) + " (tol 1e-6), grid " + num(grid) + " (tol 5e-3), " + num(sec) + " s"};
}

Outcome leibniz() {
    const double target = -0.752253;
    bool ok = true;
    std::string detail;
    for (const OperatorHandle& o : {OperatorHandle{op::RLDerivative{half, 0.0}}, OperatorHandle{op::Jumarie{half}},
                                    OperatorHandle{op::GrunwaldLetnikov{half, 0.0}}}) {
        const auto p = leibniz_residual(o, t, t, {1.0});
        const double r = p.residuals.at(0);
        const bool gl = std::holds_alternative<op::GrunwaldLetnikov>(o);
        // GL is the cross-check; its verdict is not part of the criterion.
        ok = ok && std::abs(r - target) <= 5e-3 && (gl || p.verdict == Verdict::Violated);
        if (!detail.empty()) detail += "; ";
        detail += describe(o) + " " + num(r) + (gl ? "" : " " + std::string(to_string(p.verdict)));
    }
    return {ok, detail};
}

Outcome chain() {
    const auto t2 = FuncExpr::monomial(1.0, 2.0);
    const auto p = chain_residual(op::RLDerivative{half, 0.0}, t2, t2, {1.0});
    const double r = p.residuals.at(0);
    bool ok = std::abs(r - (-0.2002)) <= 5e-3 && p.verdict == Verdict::Violated;
    double classical = 0.0;
    bool classical_ok = true;
    const auto poly = polynomial_corpus();
    for (const auto& f : poly)
        for (const auto& g : poly) {
            const auto c = chain_residual(op::ClassicalDerivative{}, f, g, default_probes());
            classical = std::max(classical, c.max_abs);
            classical_ok = classical_ok && c.verdict == Verdict::Satisfied;
        }
    ok = ok && classical_ok && classical <= 1e-10;
    return {ok, "RL residual " + num(r) + " " + std::string(to_string(p.verdict)) + "; classical max " +
                    num(classical) + (classical_ok ? " Satisfied" : " not Satisfied")};
}

Outcome entropy() {
    const std::vector<OperatorHandle> ent{op::Entropy{FuncExpr::constant(1.0)},
                                          op::Entropy{FuncExpr::constant(1.0) + t}};
    const std::vector<OperatorHandle> km{op::KonigMilman{FuncExpr::constant(1.0), FuncExpr::constant(1.0)},
                                         op::KonigMilman{t, FuncExpr::constant(2.0)}};
    std::vector<FuncExpr> c1;
    for (const auto& e : absolutely_continuous_corpus())
        if (try_derivative(e.f)) c1.push_back(e.f);
    const std::vector<FuncExpr> ent_funcs{FuncExpr::cos(3.0), FuncExpr::exp(-1.0), FuncExpr::constant(-0.5) + t,
                                          FuncExpr::monomial(1.0, 0.5), FuncExpr::weierstrass(0.5, 2.0, 8)};
    auto worst = [](const std::vector<OperatorHandle>& ops, const std::vector<FuncExpr>& fs) {
        double w = 0.0;
        for (const auto& o : ops)
            for (const auto& f : fs)
                for (const auto& g : fs) {
                    const auto p = leibniz_residual(o, f, g, default_probes());
                    for (std::size_t k = 0; k < p.probes.size(); ++k) {
                        const double x = p.probes[k];
                        if (std::abs(f(x)) < 1e-6 || std::abs(g(x)) < 1e-6) continue;
                        w = std::max(w, std::abs(p.residuals[k]));
                    }
                }
        return w;
    };
    const double e = worst(ent, ent_funcs);
    const double k = worst(km, c1);
    return {e <= 1e-12 && k <= 1e-12, "entropy max " + num(e) + ", Koenig-Milman max " + num(k) + " (tol 1e-12)"};
}

Outcome obstruction() {
    const auto t0 = Clock::now();
    std::size_t total = 0;
    for (int n = 2; n <= 16; ++n) total += solve_derivation_space(FiniteAlgebra::pointwise(n)).dimension();
    const double sec = seconds_since(t0);
    return {total == 0 && sec < 5.0, "sum of dimensions over n = 2..16: " + std::to_string(total) + ", " +
                                         num(sec) + " s"};
}

Outcome rigidity() {
    bool ok = true;
    std::string dims;
    for (int d = 2; d <= 8; ++d) {
        const auto s = solve_derivation_space(FiniteAlgebra::truncated_polynomial(d));
        for (const auto& f : factor_through_derivative(s)) ok = ok && f.exact();
        dims += std::to_string(s.dimension()) + (d < 8 ? "," : "");
    }
    return {ok, "dimensions d=2..8: " + dims + "; all residuals exactly zero: " + (ok ? "yes" : "no")};
}

Outcome kg_bc() {
    struct P {
        FuncExpr f;
        double a, y;
        Direction s;
    };
    std::vector<P> probes{{FuncExpr::monomial(1.0, 0.5), 0.5, 0.0, Direction::Plus},
                          {FuncExpr::monomial(1.0, 0.25), 0.25, 0.0, Direction::Plus},
                          {FuncExpr::monomial(1.0, 0.75) + t, 0.75, 0.0, Direction::Plus},
                          {FuncExpr::exp(1.0), 0.5, 0.4, Direction::Plus},
                          {FuncExpr::cos(3.0), 0.3, 0.7, Direction::Minus},
                          {FuncExpr::monomial(1.0, 0.8), 0.5, 0.55, Direction::Minus}};
    double worst = 0.0;
    int both = 0;
    bool anchor_ok = false;
    double anchor_value = NAN;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& p = probes[i];
        const auto rep = kg_bc_agreement(p.f, FracOrder(p.a), p.y, p.s);
        if (!rep.gap) continue;
        ++both;
        worst = std::max(worst, *rep.gap);
        if (i == 0) {
            anchor_value = rep.kg.result.value;
            anchor_ok = std::abs(rep.kg.result.value - 0.8862269) <= 1e-2 &&
                        std::abs(rep.bc.result.value - 0.8862269) <= 1e-2;
        }
    }
    return {anchor_ok && worst <= 1e-2, std::to_string(both) + "/" + std::to_string(probes.size()) +
                                            " probes converged for both, max gap " + num(worst) +
                                            ", KG(t^0.5)(0) = " + num(anchor_value)};
}

Outcome holder() {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (auto [lambda, alpha] : std::vector<std::pair<double, double>>{{0.8, 0.5}, {0.9, 0.5}, {0.6, 0.25}, {1.0, 0.5}}) {
        const auto s = triviality_sweep(FuncExpr::monomial(1.0, lambda), FracOrder(alpha), 0.1, 0.9, 64, 1e-3);
        ok = ok && s.fraction == 1.0;
        detail += "(" + num(lambda) + "," + num(alpha) + ")=" + num(s.fraction) + " ";
    }
    const double sec = seconds_since(t0);
    return {ok && sec < 30.0, detail + num(sec) + " s"};
}

Outcome weierstrass() {
    const auto w = FuncExpr::weierstrass(0.5, 2.0, 24);
    int unsettled = 0;
    const auto ys = seeded_points(42, 32, 0.1, 0.9);
    for (double y : ys)
        if (bc_lfd(w, half, y, Direction::Plus).result.status != LimitStatus::Converged) ++unsettled;
    const double frac = unsettled / 32.0;
    return {frac >= 0.9, std::to_string(unsettled) + "/32 probes Divergent or Inconclusive"};
}

struct CliRun {
    int code;
    std::string out;
    double seconds;
};

CliRun run_check_all() {
    const auto t0 = Clock::now();
    const std::string cmd = std::string(FRACTALC_CLI) + " check all";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    if (pipe != nullptr) {
        std::array<char, 4096> buf{};
        while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    }
    const int status = pipe != nullptr ? ::pclose(pipe) : -1;
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, seconds_since(t0)};
}

std::string strip_timing(const std::string& ndjson) {
    std::istringstream in(ndjson);
    std::string line, out;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        j.erase("runtime_ms");
        out += j.dump() + "\n";
    }
    return out;
}

Outcome determinism() {
    const auto a = run_check_all();
    const auto b = run_check_all();
    bool same = false;
    try {
        same = !a.out.empty() && strip_timing(a.out) == strip_timing(b.out);
    } catch (const std::exception&) {
        same = false;
    }
    const bool fast = a.seconds < 60.0 && b.seconds < 60.0;
    return {same && fast, std::string(same ? "identical" : "different") + " modulo runtime_ms; runs took " +
                              num(a.seconds) + " s and " + num(b.seconds) + " s; exit codes " +
                              std::to_string(a.code) + ", " + std::to_string(b.code)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle agreement", oracle_agreement},
        {"Caputo-Jumarie identity", caputo_jumarie},
        {"Leibniz falsification", leibniz},
        {"chain-rule falsification", chain},
        {"entropy and Koenig-Milman Leibniz", entropy},
        {"obstruction, pointwise algebras", obstruction},
        {"rigidity, truncated polynomials", rigidity},
        {"KG-BC equivalence", kg_bc},
        {"Hoelder triviality", holder},
        {"Weierstrass non-convergence", weierstrass},
        {"determinism of check all", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
