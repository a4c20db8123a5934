#pragma once

#include <optional>
#include <vector>

#include "qk3/rat.hpp"

namespace qk3::exactq {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row major

// One solution of A x = b (nullopt if inconsistent) plus a nullspace basis.
struct LinSolution {
    Vec particular;
    std::vector<Vec> nullspace;
};
std::optional<LinSolution> solve(const Mat& A, const Vec& b);

size_t rank(Mat A);
Mat identity(size_t n);
Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_vec(const Mat& A, const Vec& x);
Mat mat_inverse(const Mat& A);  // throws std::domain_error if singular
Rat dot(const Vec& a, const Vec& b);

}  // namespace qk3::exactq
