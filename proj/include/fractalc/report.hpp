#pragma once

#include "json.hpp"

#include "fractalc/algebra.hpp"
#include "fractalc/derivations.hpp"
#include "fractalc/local_ops.hpp"
#include "fractalc/numerics.hpp"

namespace fractalc {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const LimitEstimate& e);
nlohmann::json to_json(const LocalProbe& p);
nlohmann::json to_json(const ResidualProfile& p);
nlohmann::json to_json(const FiniteAlgebra& a);
/// Basis matrices are arrays of rows of "p/q" strings.
nlohmann::json to_json(const DerivationSpace& s);
nlohmann::json to_json(const RationalMatrix& m);

}  // namespace fractalc
