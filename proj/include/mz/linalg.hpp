#pragma once

#include <optional>
#include <vector>

#include "mz/rational.hpp"

namespace mz::linalg {

using Matrix = std::vector<std::vector<Rational>>;

Rational determinant(Matrix m);

/// Solves m·x = rhs exactly by Gauss-Jordan elimination. Free variables are set
/// to zero; returns nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve(Matrix m, std::vector<Rational> rhs);

}  // namespace mz::linalg
