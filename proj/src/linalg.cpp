#include "sextic/linalg.hpp"

#include "sextic/errors.hpp"

namespace sextic {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::transposed() const {
    IMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat QMat::from_int(const IMat& m) {
    QMat q(m.rows, m.cols);
    for (size_t k = 0; k < m.data.size(); ++k) q.data[k] = Rat(m.data[k]);
    return q;
}

QMat QMat::transposed() const {
    QMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    if (a.cols != b.rows) throw domain_error("mat_mul: shape mismatch");
    IMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    if (a.cols != b.rows) throw domain_error("mat_mul: shape mismatch");
    QMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IVec mat_vec(const IMat& a, const IVec& v) {
    if (a.cols != static_cast<int>(v.size())) throw domain_error("mat_vec: shape mismatch");
    IVec r(a.rows, Int(0));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

QVec mat_vec(const QMat& a, const QVec& v) {
    if (a.cols != static_cast<int>(v.size())) throw domain_error("mat_vec: shape mismatch");
    QVec r(a.rows, Rat(0));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

Int det(const IMat& m) {
    if (m.rows != m.cols) throw domain_error("det: not square");
    int n = m.rows;
    if (n == 0) return Int(1);
    // Bareiss fraction-free elimination.
    IMat a = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = t / prev;
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

QMat inverse(const IMat& m) {
    if (m.rows != m.cols) throw domain_error("inverse: not square");
    int n = m.rows;
    QMat a = QMat::from_int(m);
    QMat inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (a.at(i, col) != 0) { p = i; break; }
        if (p < 0) throw domain_error("inverse: singular matrix");
        if (p != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(col, j), a.at(p, j));
                std::swap(inv.at(col, j), inv.at(p, j));
            }
        Rat piv = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= piv;
            inv.at(col, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Rat f = a.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

namespace {

void col_swap(IMat& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

// col_a := col_a * x + col_b * y ; col_b := col_a * z + col_b * w  (atomic).
void col_combine(IMat& m, int a, int b, const Int& x, const Int& y, const Int& z, const Int& w) {
    for (int i = 0; i < m.rows; ++i) {
        Int va = m.at(i, a), vb = m.at(i, b);
        m.at(i, a) = va * x + vb * y;
        m.at(i, b) = va * z + vb * w;
    }
}

void col_addmul(IMat& m, int dst, int src, const Int& f) {
    if (f == 0) return;
    for (int i = 0; i < m.rows; ++i) m.at(i, dst) += f * m.at(i, src);
}

}  // namespace

IMat hnf_columns(const IMat& input) {
    IMat m = input;
    int pivot_col = 0;
    std::vector<int> pivot_rows;
    for (int row = 0; row < m.rows && pivot_col < m.cols; ++row) {
        // Clear row entries right of pivot_col via gcd column ops.
        for (int j = pivot_col + 1; j < m.cols; ++j) {
            if (m.at(row, j) == 0) continue;
            if (m.at(row, pivot_col) == 0) {
                col_swap(m, pivot_col, j);
                continue;
            }
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                       m.at(row, pivot_col).get_mpz_t(), m.at(row, j).get_mpz_t());
            Int u = m.at(row, pivot_col) / g, v = m.at(row, j) / g;
            // New pivot column gets gcd; other column gets 0 in this row.
            col_combine(m, pivot_col, j, x, y, -v, u);
        }
        if (m.at(row, pivot_col) == 0) continue;
        if (m.at(row, pivot_col) < 0)
            for (int i = 0; i < m.rows; ++i) m.at(i, pivot_col) = -m.at(i, pivot_col);
        // Reduce earlier columns' entries in this row mod the pivot.
        for (int j = 0; j < pivot_col; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(row, j).get_mpz_t(), m.at(row, pivot_col).get_mpz_t());
            col_addmul(m, j, pivot_col, -q);
        }
        pivot_rows.push_back(row);
        ++pivot_col;
    }
    IMat out(m.rows, pivot_col);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < pivot_col; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

std::optional<IVec> solve_hnf(const IMat& h, const IVec& v) {
    if (static_cast<int>(v.size()) != h.rows) throw domain_error("solve_hnf: size mismatch");
    // Pivot row of each column = first nonzero row.
    IVec rem = v;
    IVec x(h.cols, Int(0));
    int col = 0;
    for (int row = 0; row < h.rows; ++row) {
        int pc = -1;
        if (col < h.cols) {
            int pr = -1;
            for (int i = 0; i < h.rows; ++i)
                if (h.at(i, col) != 0) { pr = i; break; }
            if (pr == row) pc = col;
        }
        if (pc < 0) {
            if (rem[row] != 0) return std::nullopt;
            continue;
        }
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[row].get_mpz_t(), h.at(row, pc).get_mpz_t());
        if (r != 0) return std::nullopt;
        x[pc] = q;
        for (int i = row; i < h.rows; ++i) rem[i] -= q * h.at(i, pc);
        ++col;
    }
    for (int i = 0; i < h.rows; ++i)
        if (rem[i] != 0) return std::nullopt;
    return x;
}

IVec smith_normal_form(const IMat& input, IMat* uinv) {
    IMat a = input;
    int n = a.rows, m = a.cols;
    IMat ui = IMat::identity(n);  // tracks inverse row ops: input = ui * a (as row ops go)
    auto row_swap = [&](int i, int j) {
        for (int k = 0; k < m; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (int k = 0; k < n; ++k) std::swap(ui.at(k, i), ui.at(k, j));
    };
    auto row_addmul = [&](int dst, int src, const Int& f) {
        if (f == 0) return;
        for (int k = 0; k < m; ++k) a.at(dst, k) += f * a.at(src, k);
        // inverse op on columns of ui: col_src -= f * col_dst
        for (int k = 0; k < n; ++k) ui.at(k, src) -= f * ui.at(k, dst);
    };
    auto row_neg = [&](int i) {
        for (int k = 0; k < m; ++k) a.at(i, k) = -a.at(i, k);
        for (int k = 0; k < n; ++k) ui.at(k, i) = -ui.at(k, i);
    };
    auto row_combine = [&](int i, int j, const Int& x, const Int& y, const Int& z, const Int& w) {
        // rows: r_i' = x r_i + y r_j ; r_j' = z r_i + w r_j with xw - yz = ±1
        for (int k = 0; k < m; ++k) {
            Int vi = a.at(i, k), vj = a.at(j, k);
            a.at(i, k) = x * vi + y * vj;
            a.at(j, k) = z * vi + w * vj;
        }
        // ui gets the inverse applied to columns i, j: inverse of [[x,y],[z,w]] is ±[[w,-y],[-z,x]]
        Int d = x * w - y * z;  // ±1
        for (int k = 0; k < n; ++k) {
            Int ci = ui.at(k, i), cj = ui.at(k, j);
            ui.at(k, i) = (w * ci - z * cj) / d;
            ui.at(k, j) = (-y * ci + x * cj) / d;
        }
    };

    int rank = std::min(n, m);
    auto diagonalize = [&]() {
        for (int t = 0; t < rank; ++t) {
            int pi = -1, pj = -1;
            for (int i = t; i < n && pi < 0; ++i)
                for (int j = t; j < m; ++j)
                    if (a.at(i, j) != 0) { pi = i; pj = j; break; }
            if (pi < 0) break;
            if (pi != t) row_swap(pi, t);
            if (pj != t)
                for (int i = 0; i < n; ++i) std::swap(a.at(i, pj), a.at(i, t));
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = t + 1; i < n; ++i) {
                    if (a.at(i, t) == 0) continue;
                    Int q = a.at(i, t) / a.at(t, t);
                    row_addmul(i, t, -q);
                    if (a.at(i, t) != 0) {
                        Int g, x, y;
                        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                                   a.at(t, t).get_mpz_t(), a.at(i, t).get_mpz_t());
                        Int u = a.at(t, t) / g, v = a.at(i, t) / g;
                        row_combine(t, i, x, y, -v, u);
                    }
                    dirty = true;
                }
                for (int j = t + 1; j < m; ++j) {
                    if (a.at(t, j) == 0) continue;
                    Int q = a.at(t, j) / a.at(t, t);
                    for (int i = 0; i < n; ++i) a.at(i, j) -= q * a.at(i, t);
                    if (a.at(t, j) != 0) {
                        Int g, x, y;
                        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                                   a.at(t, t).get_mpz_t(), a.at(t, j).get_mpz_t());
                        Int u = a.at(t, t) / g, v = a.at(t, j) / g;
                        for (int i = 0; i < n; ++i) {
                            Int vi = a.at(i, t), vj = a.at(i, j);
                            a.at(i, t) = x * vi + y * vj;
                            a.at(i, j) = -v * vi + u * vj;
                        }
                    }
                    dirty = true;
                }
            }
            if (a.at(t, t) < 0) row_neg(t);
        }
    };
    diagonalize();
    // Enforce d_t | d_s by the column-add trick, re-diagonalizing each time.
    while (true) {
        int vt = -1, vs = -1;
        for (int t = 0; t < rank && vt < 0; ++t) {
            if (a.at(t, t) == 0) continue;
            for (int s = t + 1; s < rank; ++s)
                if (a.at(s, s) % a.at(t, t) != 0) { vt = t; vs = s; break; }
        }
        if (vt < 0) break;
        for (int i = 0; i < n; ++i) a.at(i, vt) += a.at(i, vs);
        diagonalize();
    }
    IVec d(rank, Int(0));
    for (int t = 0; t < rank; ++t) d[t] = a.at(t, t);
    if (uinv) *uinv = ui;
    return d;
}

IVec cokernel_invariants(const IMat& m) {
    IVec d = smith_normal_form(m);
    if (static_cast<int>(d.size()) < m.rows)
        throw domain_error("cokernel_invariants: column span not full rank");
    for (int i = 0; i < m.rows; ++i)
        if (d[i] == 0) throw domain_error("cokernel_invariants: infinite quotient");
    IVec inv;
    for (int i = 0; i < m.rows; ++i)
        if (d[i] > 1) inv.push_back(d[i]);
    return inv;
}

}  // namespace sextic
