#include "qk3/linalg.hpp"

#include <stdexcept>

namespace qk3::exactq {

std::optional<LinSolution> solve(const Mat& A, const Vec& b) {
    size_t m = A.size();
    if (m != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    size_t n = m ? A[0].size() : 0;
    Mat M(m, Vec(n + 1));
    for (size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw std::invalid_argument("solve: ragged matrix");
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n] = b[i];
    }
    std::vector<size_t> piv_cols;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && M[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(M[p], M[r]);
        Rat inv = 1 / M[r][c];
        for (size_t j = c; j <= n; ++j) M[r][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (size_t j = c; j <= n; ++j) M[i][j] -= f * M[r][j];
        }
        piv_cols.push_back(c);
        ++r;
    }
    for (size_t i = r; i < m; ++i)
        if (M[i][n] != 0) return std::nullopt;
    LinSolution out;
    out.particular.assign(n, Rat(0));
    for (size_t k = 0; k < piv_cols.size(); ++k) out.particular[piv_cols[k]] = M[k][n];
    for (size_t c = 0; c < n; ++c) {
        bool is_piv = false;
        for (size_t pc : piv_cols)
            if (pc == c) is_piv = true;
        if (is_piv) continue;
        Vec v(n, Rat(0));
        v[c] = Rat(1);
        for (size_t k = 0; k < piv_cols.size(); ++k) v[piv_cols[k]] = Rat(-M[k][c]);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

size_t rank(Mat A) {
    size_t m = A.size();
    if (m == 0) return 0;
    size_t n = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && A[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(A[p], A[r]);
        for (size_t i = r + 1; i < m; ++i) {
            if (A[i][c] == 0) continue;
            Rat f = A[i][c] / A[r][c];
            for (size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
        }
        ++r;
    }
    return r;
}

Mat identity(size_t n) {
    Mat I(n, Vec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = Rat(1);
    return I;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    size_t m = A.size(), k = B.size(), n = B[0].size();
    Mat C(m, Vec(n, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

Vec mat_vec(const Mat& A, const Vec& x) {
    Vec y(A.size(), Rat(0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

Mat mat_inverse(const Mat& A) {
    size_t n = A.size();
    Mat M(n, Vec(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n + i] = Rat(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("mat_inverse: singular matrix");
        std::swap(M[p], M[c]);
        Rat inv = 1 / M[c][c];
        for (size_t j = 0; j < 2 * n; ++j) M[c][j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (size_t j = 0; j < 2 * n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    Mat R(n, Vec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R[i][j] = M[i][n + j];
    return R;
}

Rat dot(const Vec& a, const Vec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace qk3::exactq
