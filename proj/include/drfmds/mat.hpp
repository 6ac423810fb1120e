#pragma once

// Dense exact matrices over a Field. Everything here is sized for the tiny
// shapes the codes need (2x2 blocks, 2x4 repair matrices, 4x4 decode
// systems); one Gaussian elimination routine serves rank, rref, solve and
// inverse. Pivoting picks the first nonzero entry scanning top to bottom.

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "drfmds/errors.hpp"
#include "drfmds/gf.hpp"

namespace drfmds {

class Mat {
public:
    Mat(const Field& f, unsigned rows, unsigned cols)
        : field_(&f), rows_(rows), cols_(cols), e_(std::size_t(rows) * cols, 0) {
        if (rows == 0 || cols == 0) throw ValidationError("DimensionMismatch: empty matrix");
    }

    static Mat identity(const Field& f, unsigned n) {
        Mat m(f, n, n);
        for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat of(const Field& f, unsigned rows, unsigned cols, std::initializer_list<Elem> vals) {
        Mat m(f, rows, cols);
        if (vals.size() != m.e_.size()) throw ValidationError("DimensionMismatch: initializer size");
        std::size_t i = 0;
        for (Elem v : vals) m.e_[i++] = v;
        return m;
    }

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    const Field& field() const { return *field_; }

    Elem operator()(unsigned r, unsigned c) const { return e_[std::size_t(r) * cols_ + c]; }
    Elem& operator()(unsigned r, unsigned c) { return e_[std::size_t(r) * cols_ + c]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && *a.field_ == *b.field_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    const Field* field_;
    unsigned rows_, cols_;
    std::vector<Elem> e_;
};

namespace detail {
inline void require_same_field(const Mat& a, const Mat& b) {
    if (a.field() != b.field()) throw ValidationError("FieldMismatch");
}
}  // namespace detail

inline Mat operator*(const Mat& a, const Mat& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.rows())
        throw ValidationError("DimensionMismatch: " + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()));
    const Field& f = a.field();
    Mat c(f, a.rows(), b.cols());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned k = 0; k < a.cols(); ++k) {
            Elem aik = a(i, k);
            if (aik == 0) continue;
            for (unsigned j = 0; j < b.cols(); ++j)
                c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
    return c;
}

inline Mat operator+(const Mat& a, const Mat& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("DimensionMismatch");
    Mat c = a;
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
    return c;
}

inline Mat operator-(const Mat& a, const Mat& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("DimensionMismatch");
    Mat c = a;
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
    return c;
}

inline Mat scaled(const Mat& a, Elem s) {
    Mat c = a;
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(s, a(i, j));
    return c;
}

inline Mat vstack(const Mat& top, const Mat& bottom) {
    detail::require_same_field(top, bottom);
    if (top.cols() != bottom.cols()) throw ValidationError("DimensionMismatch: vstack");
    Mat c(top.field(), top.rows() + bottom.rows(), top.cols());
    for (unsigned i = 0; i < top.rows(); ++i)
        for (unsigned j = 0; j < top.cols(); ++j) c(i, j) = top(i, j);
    for (unsigned i = 0; i < bottom.rows(); ++i)
        for (unsigned j = 0; j < bottom.cols(); ++j) c(top.rows() + i, j) = bottom(i, j);
    return c;
}

// Count of columns containing at least one nonzero entry (the access
// footprint of a helper product).
inline unsigned nonzero_cols(const Mat& m) {
    unsigned count = 0;
    for (unsigned j = 0; j < m.cols(); ++j)
        for (unsigned i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) {
                ++count;
                break;
            }
    return count;
}

// Reduced row-echelon form. Canonical: two matrices span the same row space
// iff their rref forms are identical.
inline Mat rref(const Mat& m) {
    const Field& f = m.field();
    Mat a = m;
    unsigned pivot_row = 0;
    for (unsigned col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        unsigned sel = pivot_row;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != pivot_row)
            for (unsigned j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(pivot_row, j));
        Elem piv_inv = f.inv(a(pivot_row, col));
        for (unsigned j = 0; j < a.cols(); ++j) a(pivot_row, j) = f.mul(piv_inv, a(pivot_row, j));
        for (unsigned i = 0; i < a.rows(); ++i) {
            if (i == pivot_row || a(i, col) == 0) continue;
            Elem factor = a(i, col);
            for (unsigned j = 0; j < a.cols(); ++j)
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(pivot_row, j)));
        }
        ++pivot_row;
    }
    return a;
}

inline unsigned rank(const Mat& m) {
    Mat r = rref(m);
    unsigned rk = 0;
    for (unsigned i = 0; i < r.rows(); ++i)
        for (unsigned j = 0; j < r.cols(); ++j)
            if (r(i, j) != 0) {
                ++rk;
                break;
            }
    return rk;
}

inline Elem det2(const Mat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ValidationError("DimensionMismatch: det2 needs 2x2");
    const Field& f = m.field();
    return f.sub(f.mul(m(0, 0), m(1, 1)), f.mul(m(0, 1), m(1, 0)));
}

// Solves a*x = b for square nonsingular a via Gauss-Jordan on [a | b].
inline Mat solve(const Mat& a, const Mat& b) {
    detail::require_same_field(a, b);
    if (a.rows() != a.cols()) throw ValidationError("DimensionMismatch: solve needs square a");
    if (a.rows() != b.rows()) throw ValidationError("DimensionMismatch: a.rows != b.rows");
    const Field& f = a.field();
    const unsigned n = a.rows();
    Mat aug(f, n, n + b.cols());
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (unsigned j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    aug = rref(aug);
    for (unsigned i = 0; i < n; ++i)
        if (aug(i, i) != 1) throw ValidationError("SingularMatrix");
    Mat x(f, n, b.cols());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

inline Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.field(), a.rows())); }

}  // namespace drfmds
