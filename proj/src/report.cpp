#include "fractalc/report.hpp"

#include <cmath>

namespace fractalc {

using nlohmann::json;

namespace {

// JSON has no infinities; keep them readable instead of emitting null.
json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

json to_json(const LimitEstimate& e) {
    return {{"value", number(e.value)},
            {"status", std::string(to_string(e.status))},
            {"error_bar", number(e.error_bar)},
            {"scales_used", e.scales_used}};
}

json to_json(const LocalProbe& p) {
    json raw = json::array();
    for (double v : p.raw) raw.push_back(number(v));
    return {{"y", p.y},         {"sigma", to_string(p.sigma)}, {"alpha", p.alpha},
            {"ladder", p.ladder}, {"raw", raw},                 {"result", to_json(p.result)}};
}

json to_json(const ResidualProfile& p) {
    json res = json::array();
    for (double r : p.residuals) res.push_back(number(r));
    return {{"property", p.property},
            {"operator", p.op},
            {"corpus_ids", p.corpus_ids},
            {"probes", p.probes},
            {"residuals", res},
            {"max_abs", number(p.max_abs)},
            {"error_estimate", number(p.error_estimate)},
            {"violation_factor", kViolationFactor},
            {"verdict", std::string(to_string(p.verdict))}};
}

json to_json(const FiniteAlgebra& a) {
    json j = {{"kind", a.kind() == AlgebraKind::Pointwise ? "pointwise" : "truncated-poly"},
              {"basis_size", a.dimension()}};
    j[a.kind() == AlgebraKind::Pointwise ? "n" : "d"] = a.parameter();
    return j;
}

json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rational_string(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

json to_json(const DerivationSpace& s) {
    json basis = json::array();
    for (const auto& b : s.basis) basis.push_back(to_json(b));
    return {{"schema", kSchemaVersion},
            {"algebra", to_json(s.algebra)},
            {"dimension", s.dimension()},
            {"constraint_rank", s.constraint_rank},
            {"unknowns", s.algebra.dimension() * s.algebra.dimension()},
            {"basis", basis}};
}

}  // namespace fractalc
