#pragma once

#include <optional>
#include <vector>

#include "mvmap/field.hpp"

namespace mvmap {

using Matrix = std::vector<std::vector<Value>>;

std::size_t rank(const Field& F, Matrix a);
Value determinant(const Field& F, Matrix a);
std::optional<Matrix> inverse(const Field& F, const Matrix& a);
// Solves a x = b for square invertible a; nullopt when singular.
std::optional<std::vector<Value>> solve(const Field& F, const Matrix& a, const std::vector<Value>& b);
std::vector<Value> mat_vec(const Field& F, const Matrix& a, const std::vector<Value>& x);
Matrix identity(std::size_t n);

}  // namespace mvmap
