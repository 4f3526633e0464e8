#pragma once

#include <optional>
#include <vector>

#include "sextic/num.hpp"

namespace sextic {

/// Dense integer matrix, row-major.
struct IMat {
    int rows = 0;
    int cols = 0;
    IVec data;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, Int(0)) {}

    Int& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static IMat identity(int n);
    IMat transposed() const;
    bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && data == o.data; }
};

/// Dense rational matrix, row-major.
struct QMat {
    int rows = 0;
    int cols = 0;
    QVec data;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static QMat from_int(const IMat& m);
    QMat transposed() const;
};

IMat mat_mul(const IMat& a, const IMat& b);
QMat mat_mul(const QMat& a, const QMat& b);
IVec mat_vec(const IMat& a, const IVec& v);
QVec mat_vec(const QMat& a, const QVec& v);

Int det(const IMat& m);

/// Inverse of a nonsingular integer matrix over Q.
QMat inverse(const IMat& m);

/// Column-style Hermite normal form: column operations only, zero columns
/// dropped, pivots positive, entries right of a pivot reduced mod the pivot.
/// Columns of the result are a canonical basis of the column span.
IMat hnf_columns(const IMat& m);

/// Solve H*x = v over Z where H is a hnf_columns() result. Returns the
/// coordinate vector when v lies in the column span, nullopt otherwise.
std::optional<IVec> solve_hnf(const IMat& h, const IVec& v);

/// Smith normal form. Returns the diagonal (nonnegative, d1 | d2 | ...),
/// padded with zeros up to min(rows, cols). If uinv is nonnull it receives a
/// unimodular matrix with m = uinv * diag * (something unimodular); columns of
/// uinv picked at diagonal position i generate the quotient coker(m).
IVec smith_normal_form(const IMat& m, IMat* uinv = nullptr);

/// Invariant factors (> 1) of the cokernel Z^rows / col-span(m).
/// Requires the span to have full rank `rows` (finite quotient).
IVec cokernel_invariants(const IMat& m);

}  // namespace sextic
