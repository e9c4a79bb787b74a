#include "esys/matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace esys {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IMat IMat::diag(const Vec& d) {
    int n = static_cast<int>(d.size());
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

IMat IMat::from_columns(int rows, const std::vector<Vec>& cols) {
    IMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) m.set_column(j, cols[j]);
    return m;
}

Vec IMat::column(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

void IMat::set_column(int j, const Vec& v) {
    if (static_cast<int>(v.size()) != r_) throw std::invalid_argument("column length mismatch");
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Vec IMat::row(int i) const {
    Vec v(c_);
    for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

IMat IMat::operator*(const IMat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
    IMat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            i64 a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.c_; ++j) m(i, j) = add_checked(m(i, j), mul_checked(a, o(k, j)));
        }
    return m;
}

Vec IMat::operator*(const Vec& v) const {
    if (c_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec out(r_, 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out[i] = add_checked(out[i], mul_checked((*this)(i, j), v[j]));
    return out;
}

IMat IMat::transpose() const {
    IMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

IMat IMat::hcat(const IMat& o) const {
    if (r_ != o.r_) throw std::invalid_argument("hcat row mismatch");
    IMat m(r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (int j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

IMat IMat::block_columns(int first, int count) const {
    IMat m(r_, count);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
}

std::string IMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        if (i) os << ";";
        for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

namespace {

// column j <- column j - q * column i (also applied to the transform)
void col_axpy(IMat& m, int j, int i, i64 q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows(); ++r) m(r, j) = sub_checked(m(r, j), mul_checked(q, m(r, i)));
}

void col_swap(IMat& m, int a, int b) {
    if (a == b) return;
    for (int r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

void col_neg(IMat& m, int a) {
    for (int r = 0; r < m.rows(); ++r) m(r, a) = -m(r, a);
}

void row_axpy(IMat& m, int j, int i, i64 q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols(); ++c) m(j, c) = sub_checked(m(j, c), mul_checked(q, m(i, c)));
}

void row_swap(IMat& m, int a, int b) {
    if (a == b) return;
    for (int c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void row_neg(IMat& m, int a) {
    for (int c = 0; c < m.cols(); ++c) m(a, c) = -m(a, c);
}

i64 iabs(i64 x) { return x < 0 ? -x : x; }

}  // namespace

HnfResult hnf(const IMat& a, bool want_transform) {
    const int k = a.rows(), m = a.cols();
    IMat b = a;
    IMat v = want_transform ? IMat::identity(m) : IMat();
    for (int i = 0; i < k; ++i) {
        for (;;) {
            int piv = -1;
            for (int j = i; j < m; ++j)
                if (b(i, j) != 0 && (piv < 0 || iabs(b(i, j)) < iabs(b(i, piv)))) piv = j;
            if (piv < 0) throw std::invalid_argument("hnf: rows are linearly dependent");
            col_swap(b, i, piv);
            if (want_transform) col_swap(v, i, piv);
            bool done = true;
            for (int j = i + 1; j < m; ++j) {
                if (b(i, j) == 0) continue;
                i64 q = b(i, j) / b(i, i);
                col_axpy(b, j, i, q);
                if (want_transform) col_axpy(v, j, i, q);
                if (b(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (b(i, i) < 0) {
            col_neg(b, i);
            if (want_transform) col_neg(v, i);
        }
        for (int j = 0; j < i; ++j) {
            i64 q = floor_div(b(i, j), b(i, i));
            col_axpy(b, j, i, q);
            if (want_transform) col_axpy(v, j, i, q);
        }
    }
    HnfResult r;
    r.h = b.block_columns(0, k);
    r.v = std::move(v);
    return r;
}

SnfResult snf(const IMat& a0) {
    IMat a = a0;
    const int k = a.rows(), m = a.cols();
    IMat u = IMat::identity(k), ui = IMat::identity(k);
    // Row operation helpers keep u and u_inv consistent.
    auto r_axpy = [&](int j, int i, i64 q) {  // row_j -= q row_i
        row_axpy(a, j, i, q);
        row_axpy(u, j, i, q);
        // u_inv <- u_inv * (I + q e_j e_i^T): column i += q column j
        for (int r = 0; r < k; ++r) ui(r, i) = add_checked(ui(r, i), mul_checked(q, ui(r, j)));
    };
    auto r_swap = [&](int x, int y) {
        row_swap(a, x, y);
        row_swap(u, x, y);
        col_swap(ui, x, y);
    };
    auto r_neg = [&](int x) {
        row_neg(a, x);
        row_neg(u, x);
        col_neg(ui, x);
    };
    const int n = std::min(k, m);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < k; ++i)
                for (int j = t; j < m; ++j)
                    if (a(i, j) != 0 && (pi < 0 || iabs(a(i, j)) < iabs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) goto finished;
            r_swap(t, pi);
            col_swap(a, t, pj);
            bool clean = true;
            for (int i = t + 1; i < k; ++i) {
                if (a(i, t) == 0) continue;
                r_axpy(i, t, a(i, t) / a(t, t));
                if (a(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < m; ++j) {
                if (a(t, j) == 0) continue;
                col_axpy(a, j, t, a(t, j) / a(t, t));
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < k && bad < 0; ++i)
                for (int j = t + 1; j < m; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            // row_t += row_bad
            r_axpy(t, bad, -1);
        }
        if (a(t, t) < 0) r_neg(t);
    }
finished:
    SnfResult res;
    res.diag.assign(n, 0);
    for (int t = 0; t < n; ++t) res.diag[t] = a(t, t);
    res.u = std::move(u);
    res.u_inv = std::move(ui);
    return res;
}

std::optional<Vec> solve_lower(const IMat& h, const Vec& b) {
    const int n = h.rows();
    Vec x(n, 0);
    Vec r = b;
    for (int i = 0; i < n; ++i) {
        if (r[i] % h(i, i) != 0) return std::nullopt;
        x[i] = r[i] / h(i, i);
        if (x[i] == 0) continue;
        for (int j = i; j < n; ++j) r[j] = sub_checked(r[j], mul_checked(x[i], h(j, i)));
    }
    return x;
}

std::optional<Vec> solve_mod(const IMat& a, const Vec& moduli, const Vec& b) {
    const int k = a.rows(), m = a.cols();
    IMat big = a.hcat(IMat::diag(moduli));
    HnfResult hr = hnf(big, true);
    auto y = solve_lower(hr.h, b);
    if (!y) return std::nullopt;
    Vec full(m + k, 0);
    for (int i = 0; i < k; ++i) full[i] = (*y)[i];
    Vec sol = hr.v * full;
    sol.resize(m);
    return sol;
}

IMat kernel_basis(const IMat& a) {
    const int k = a.rows(), m = a.cols();
    HnfResult hr = hnf(a, true);
    return hr.v.block_columns(k, m - k);
}

i64 det(const IMat& a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("det of non-square matrix");
    if (n == 0) return 1;
    std::vector<i128> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i * n + j] = a(i, j);
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k * n + k] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i * n + k] != 0) {
                    s = i;
                    break;
                }
            if (s < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[s * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
        prev = m[k * n + k];
    }
    i128 d = m[(n - 1) * n + (n - 1)] * sign;
    if (d > INT64_MAX || d < INT64_MIN) throw OverflowError("determinant overflow");
    return static_cast<i64>(d);
}

IMat adjugate(const IMat& a) {
    const int n = a.rows();
    IMat adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IMat minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = a(r, c);
                }
                ++rr;
            }
            i64 c = det(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

int rank_mod_p(std::vector<Vec> rows, i64 p) {
    int rank = 0;
    if (rows.empty()) return 0;
    const int n = static_cast<int>(rows[0].size());
    for (auto& r : rows)
        for (auto& x : r) x = mod(x, p);
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        i64 inv = inv_mod(rows[rank][col], p);
        for (auto& x : rows[rank]) x = mulmod(x, inv, p);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            i64 f = rows[i][col];
            for (int j = 0; j < n; ++j) rows[i][j] = mod(rows[i][j] - mulmod(f, rows[rank][j], p), p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace esys
