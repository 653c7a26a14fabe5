#include "rro/int_lattice.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace rro::lat {

namespace {

using Wide = __int128;

Int checked(Wide x) {
    if (x > Wide(INT64_MAX) / 4 || x < Wide(INT64_MIN) / 4)
        throw std::overflow_error("integer lattice arithmetic overflow");
    return static_cast<Int>(x);
}

// row_i -= q * row_j
void row_axpy(Vec& ri, const Vec& rj, Int q) {
    if (q == 0) return;
    for (size_t c = 0; c < ri.size(); ++c)
        ri[c] = checked(Wide(ri[c]) - Wide(q) * Wide(rj[c]));
}

// Replace (ri, rj) by (g-combination, zero-at-col) so that ri[col] = gcd and
// rj[col] = 0.  Classic two-row extended-gcd step.
void xgcd_rows(Vec& ri, Vec& rj, size_t col) {
    while (rj[col] != 0) {
        Int q = ri[col] / rj[col];
        row_axpy(ri, rj, q);
        std::swap(ri, rj);
    }
}

void hnf_in_place(std::vector<Vec>& rows, int cols) {
    size_t pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows.size(); ++col) {
        // Bring a nonzero entry in this column to pivot_row, gcd-ing the rest out.
        size_t nz = pivot_row;
        while (nz < rows.size() && rows[nz][col] == 0) ++nz;
        if (nz == rows.size()) continue;
        std::swap(rows[pivot_row], rows[nz]);
        for (size_t r = pivot_row + 1; r < rows.size(); ++r)
            if (rows[r][col] != 0) xgcd_rows(rows[pivot_row], rows[r], col);
        if (rows[pivot_row][col] < 0)
            for (auto& x : rows[pivot_row]) x = -x;
        // Reduce the entries above the pivot into [0, pivot).
        Int p = rows[pivot_row][col];
        for (size_t r = 0; r < pivot_row; ++r) {
            Int q = rows[r][col] / p;
            if (rows[r][col] % p < 0) --q;
            row_axpy(rows[r], rows[pivot_row], q);
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
}

bool is_zero(const Vec& v) {
    for (Int x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

Mat make_mat(int cols, std::vector<Vec> rows) {
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument("row width mismatch");
    return Mat{cols, std::move(rows)};
}

Mat hnf(Mat m) {
    hnf_in_place(m.rows, m.cols);
    return m;
}

HnfTransform hnf_with_transform(const Mat& m) {
    // Work on [m | I] and read the transform back off the identity part.
    int n = static_cast<int>(m.rows.size());
    std::vector<Vec> aug(m.rows.begin(), m.rows.end());
    for (int r = 0; r < n; ++r) {
        aug[r].resize(m.cols + n, 0);
        aug[r][m.cols + r] = 1;
    }

    // Same elimination as hnf_in_place but pivoting only on the m-columns,
    // and keeping all rows (kernel rows end with a zero m-part).
    size_t pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < aug.size(); ++col) {
        size_t nz = pivot_row;
        while (nz < aug.size() && aug[nz][col] == 0) ++nz;
        if (nz == aug.size()) continue;
        std::swap(aug[pivot_row], aug[nz]);
        for (size_t r = pivot_row + 1; r < aug.size(); ++r)
            if (aug[r][col] != 0) xgcd_rows(aug[pivot_row], aug[r], col);
        if (aug[pivot_row][col] < 0)
            for (auto& x : aug[pivot_row]) x = -x;
        Int p = aug[pivot_row][col];
        for (size_t r = 0; r < pivot_row; ++r) {
            Int q = aug[r][col] / p;
            if (aug[r][col] % p < 0) --q;
            row_axpy(aug[r], aug[pivot_row], q);
        }
        ++pivot_row;
    }

    HnfTransform out;
    out.rank = static_cast<int>(pivot_row);
    out.h.cols = m.cols;
    out.u.cols = n;
    for (size_t r = 0; r < aug.size(); ++r) {
        Vec hpart(aug[r].begin(), aug[r].begin() + m.cols);
        Vec upart(aug[r].begin() + m.cols, aug[r].end());
        if (r < pivot_row) out.h.rows.push_back(std::move(hpart));
        out.u.rows.push_back(std::move(upart));
    }
    return out;
}

Mat left_kernel(const Mat& m) {
    auto t = hnf_with_transform(m);
    Mat k;
    k.cols = static_cast<int>(m.rows.size());
    for (size_t r = t.rank; r < t.u.rows.size(); ++r) k.rows.push_back(t.u.rows[r]);
    return hnf(std::move(k));
}

std::optional<Vec> lattice_coefficients(const Mat& h, std::span<const Int> v) {
    if (static_cast<int>(v.size()) != h.cols)
        throw std::invalid_argument("vector width mismatch");
    Vec rem(v.begin(), v.end());
    Vec coeff(h.rows.size(), 0);
    for (size_t r = 0; r < h.rows.size(); ++r) {
        int col = 0;
        while (col < h.cols && h.rows[r][col] == 0) ++col;
        assert(col < h.cols);
        // No later row touches this pivot column, so divisibility is forced.
        if (rem[col] % h.rows[r][col] != 0) return std::nullopt;
        Int q = rem[col] / h.rows[r][col];
        coeff[r] = q;
        for (int c = 0; c < h.cols; ++c)
            rem[c] = checked(Wide(rem[c]) - Wide(q) * Wide(h.rows[r][c]));
    }
    if (!is_zero(rem)) return std::nullopt;
    return coeff;
}

bool lattice_contains(const Mat& h, std::span<const Int> v) {
    return lattice_coefficients(h, v).has_value();
}

Mat lattice_sum(const Mat& a, const Mat& b) {
    if (a.cols != b.cols) throw std::invalid_argument("lattice width mismatch");
    Mat m;
    m.cols = a.cols;
    m.rows = a.rows;
    m.rows.insert(m.rows.end(), b.rows.begin(), b.rows.end());
    return hnf(std::move(m));
}

Mat lattice_intersect(const Mat& a, const Mat& b) {
    if (a.cols != b.cols) throw std::invalid_argument("lattice width mismatch");
    // Rows (u | w) of the left kernel of [a; b] satisfy u*a = -w*b, and the
    // elements u*a run exactly over the intersection.
    Mat stacked;
    stacked.cols = a.cols;
    stacked.rows = a.rows;
    stacked.rows.insert(stacked.rows.end(), b.rows.begin(), b.rows.end());
    auto t = hnf_with_transform(stacked);
    Mat inter;
    inter.cols = a.cols;
    size_t na = a.rows.size();
    for (size_t r = t.rank; r < t.u.rows.size(); ++r) {
        Vec x(a.cols, 0);
        for (size_t i = 0; i < na; ++i)
            for (int c = 0; c < a.cols; ++c)
                x[c] = checked(Wide(x[c]) + Wide(t.u.rows[r][i]) * Wide(a.rows[i][c]));
        inter.rows.push_back(std::move(x));
    }
    return hnf(std::move(inter));
}

bool lattice_subset(const Mat& inner, const Mat& outer) {
    for (const auto& r : inner.rows)
        if (!lattice_contains(outer, r)) return false;
    return true;
}

bool lattice_equal(const Mat& a, const Mat& b) { return a == b; }

std::optional<Vec> solve_left(const Mat& a, std::span<const Int> b) {
    auto t = hnf_with_transform(a);
    // Solve y * h = b by pivot back-substitution, then x = y * u.
    Vec rem(b.begin(), b.end());
    if (static_cast<int>(rem.size()) != a.cols)
        throw std::invalid_argument("vector width mismatch");
    Vec y(t.h.rows.size(), 0);
    for (size_t r = 0; r < t.h.rows.size(); ++r) {
        int col = 0;
        while (col < t.h.cols && t.h.rows[r][col] == 0) ++col;
        if (rem[col] % t.h.rows[r][col] != 0) return std::nullopt;
        Int q = rem[col] / t.h.rows[r][col];
        y[r] = q;
        for (int c = 0; c < t.h.cols; ++c)
            rem[c] = checked(Wide(rem[c]) - Wide(q) * Wide(t.h.rows[r][c]));
    }
    if (!is_zero(rem)) return std::nullopt;
    Vec x(a.rows.size(), 0);
    for (size_t r = 0; r < y.size(); ++r)
        for (size_t i = 0; i < x.size(); ++i)
            x[i] = checked(Wide(x[i]) + Wide(y[r]) * Wide(t.u.rows[r][i]));
    return x;
}

Vec reduce_mod_lattice(const Mat& h, Vec v) {
    if (static_cast<int>(v.size()) != h.cols)
        throw std::invalid_argument("vector width mismatch");
    for (const auto& row : h.rows) {
        int col = 0;
        while (col < h.cols && row[col] == 0) ++col;
        Int p = row[col];
        Int q = v[col] / p;
        if (v[col] % p < 0) --q;
        for (int c = 0; c < h.cols; ++c)
            v[c] = checked(Wide(v[c]) - Wide(q) * Wide(row[c]));
    }
    return v;
}

}  // namespace rro::lat
