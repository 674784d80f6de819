#include "mvmap/linalg.hpp"

#include "mvmap/error.hpp"

namespace mvmap {

namespace {

// Row reduction in place; returns the rank and accumulates the determinant of the
// leading square block when the matrix is square.
std::size_t reduce(const Field& F, Matrix& a, Value* det, Matrix* companion) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    Value d = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) {
            d = 0;
            continue;
        }
        if (piv != r) {
            std::swap(a[piv], a[r]);
            if (companion) std::swap((*companion)[piv], (*companion)[r]);
            d = F.neg(d);
        }
        const Value inv = F.inv(a[r][c]);
        d = F.mul(d, a[r][c]);
        for (auto& v : a[r]) v = F.mul(v, inv);
        if (companion)
            for (auto& v : (*companion)[r]) v = F.mul(v, inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Value f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
            if (companion)
                for (std::size_t j = 0; j < (*companion)[i].size(); ++j)
                    (*companion)[i][j] = F.sub((*companion)[i][j], F.mul(f, (*companion)[r][j]));
        }
        ++r;
    }
    if (det) *det = (r == rows && rows == cols) ? d : 0;
    return r;
}

}  // namespace

std::size_t rank(const Field& F, Matrix a) { return reduce(F, a, nullptr, nullptr); }

Value determinant(const Field& F, Matrix a) {
    if (!a.empty() && a.size() != a[0].size()) fail(Errc::InvalidArgument, "determinant of a non-square matrix");
    if (a.empty()) return 1;
    Value d = 0;
    reduce(F, a, &d, nullptr);
    return d;
}

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<Value>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
    Matrix work = a;
    Matrix inv = identity(a.size());
    if (reduce(F, work, nullptr, &inv) != a.size()) return std::nullopt;
    return inv;
}

std::optional<std::vector<Value>> solve(const Field& F, const Matrix& a, const std::vector<Value>& b) {
    auto inv = inverse(F, a);
    if (!inv) return std::nullopt;
    return mat_vec(F, *inv, b);
}

std::vector<Value> mat_vec(const Field& F, const Matrix& a, const std::vector<Value>& x) {
    std::vector<Value> y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] = F.add(y[i], F.mul(a[i][j], x[j]));
    return y;
}

}  // namespace mvmap
