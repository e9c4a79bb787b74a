#pragma once

// Dense integer matrices with Hermite and Smith normal forms.
//
// Hermite forms are column style: A * V = [H | 0] with H square, lower
// triangular, positive diagonal, and every entry left of a pivot reduced
// into [0, pivot).

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "esys/arith.hpp"

namespace esys {

using Vec = std::vector<i64>;

class IMat {
public:
    IMat() = default;
    IMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static IMat identity(int n);
    static IMat diag(const Vec& d);
    // Matrix whose columns are the given vectors (all of length rows).
    static IMat from_columns(int rows, const std::vector<Vec>& cols);

    int rows() const { return r_; }
    int cols() const { return c_; }

    i64& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    i64 operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    Vec column(int j) const;
    void set_column(int j, const Vec& v);
    Vec row(int i) const;

    IMat operator*(const IMat& o) const;
    Vec operator*(const Vec& v) const;
    IMat transpose() const;
    // Horizontal concatenation [this | o].
    IMat hcat(const IMat& o) const;
    IMat block_columns(int first, int count) const;

    bool operator==(const IMat& o) const = default;
    auto operator<=>(const IMat& o) const {
        if (auto c = r_ <=> o.r_; c != 0) return c;
        if (auto c = c_ <=> o.c_; c != 0) return c;
        return a_ <=> o.a_;
    }

    const Vec& data() const { return a_; }
    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    Vec a_;
};

struct HnfResult {
    IMat h;  // rows x rows, lower triangular
    IMat v;  // unimodular, cols x cols; empty unless requested
};

// Column-style Hermite normal form of a full-row-rank matrix.
// Throws std::invalid_argument when the rows are dependent.
HnfResult hnf(const IMat& a, bool want_transform = false);

struct SnfResult {
    Vec diag;   // length min(rows, cols); s_1 | s_2 | ..., zeros last
    IMat u;     // rows x rows unimodular with u * a * v = diag
    IMat u_inv;
};

// Smith normal form; only the row transform (and its inverse) is tracked.
SnfResult snf(const IMat& a);

// Solve h * x = b for lower-triangular h with nonzero diagonal; nullopt if
// the solution is not integral.
std::optional<Vec> solve_lower(const IMat& h, const Vec& b);

// Find x with a * x = b (mod moduli) row-wise; nullopt when unsolvable.
std::optional<Vec> solve_mod(const IMat& a, const Vec& moduli, const Vec& b);

// Integer kernel basis of a full-row-rank matrix (columns of the result).
IMat kernel_basis(const IMat& a);

i64 det(const IMat& a);
IMat adjugate(const IMat& a);

// Rank of a set of vectors over F_p.
int rank_mod_p(std::vector<Vec> rows, i64 p);

}  // namespace esys
