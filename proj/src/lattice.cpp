#include "sextic/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "sextic/errors.hpp"

namespace sextic {

EvenLattice::EvenLattice(IMat g, std::vector<std::string> labels)
    : rank(g.rows), gram(std::move(g)), basis_labels(std::move(labels)) {
    if (gram.rows != gram.cols) throw domain_error("EvenLattice: gram not square");
    for (int i = 0; i < rank; ++i) {
        if (gram.at(i, i) % 2 != 0) throw domain_error("EvenLattice: odd diagonal entry");
        for (int j = 0; j < rank; ++j)
            if (gram.at(i, j) != gram.at(j, i)) throw domain_error("EvenLattice: gram not symmetric");
    }
    if (rank > 0 && det(gram) == 0) throw domain_error("EvenLattice: singular gram");
    if (basis_labels.empty()) {
        for (int i = 0; i < rank; ++i) basis_labels.push_back("e" + std::to_string(i + 1));
    }
}

Rat EvenLattice::pair_primal(const QVec& x, const QVec& y) const {
    if (static_cast<int>(x.size()) != rank || static_cast<int>(y.size()) != rank)
        throw domain_error("pair_primal: size mismatch");
    Rat s(0);
    for (int i = 0; i < rank; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < rank; ++j)
            if (gram.at(i, j) != 0) s += x[i] * y[j] * Rat(gram.at(i, j));
    }
    return s;
}

Rat EvenLattice::norm_primal(const QVec& x) const { return pair_primal(x, x); }

const QMat& EvenLattice::gram_inverse() const {
    if (!inv_ready_) {
        inv_ = inverse(gram);
        inv_ready_ = true;
    }
    return inv_;
}

QVec EvenLattice::primal_to_dual(const QVec& x) const {
    QVec d(rank, Rat(0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            if (gram.at(i, j) != 0) d[i] += Rat(gram.at(i, j)) * x[j];
    return d;
}

QVec EvenLattice::dual_to_primal(const QVec& d) const {
    return mat_vec(gram_inverse(), d);
}

Rat EvenLattice::pair_dual(const QVec& x, const QVec& y) const {
    const QMat& inv = gram_inverse();
    Rat s(0);
    for (int i = 0; i < rank; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < rank; ++j)
            if (inv.at(i, j) != 0) s += x[i] * y[j] * inv.at(i, j);
    }
    return s;
}

QVector::QVector(const EvenLattice* h, CoordBasis b, QVec c) : host(h), basis(b), coords(std::move(c)) {
    if (!host) throw domain_error("QVector: null host");
    if (static_cast<int>(coords.size()) != host->rank) throw domain_error("QVector: size mismatch");
}

QVector QVector::operator+(const QVector& o) const {
    if (host != o.host || basis != o.basis) throw domain_error("QVector: cross-basis arithmetic");
    QVec c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] + o.coords[i];
    return QVector(host, basis, std::move(c));
}

QVector QVector::operator-(const QVector& o) const {
    if (host != o.host || basis != o.basis) throw domain_error("QVector: cross-basis arithmetic");
    QVec c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] - o.coords[i];
    return QVector(host, basis, std::move(c));
}

QVector QVector::scaled(const Rat& f) const {
    QVec c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] * f;
    return QVector(host, basis, std::move(c));
}

Rat QVector::pair(const QVector& o) const {
    if (host != o.host) throw domain_error("QVector: cross-host pairing");
    if (basis == CoordBasis::primal && o.basis == CoordBasis::primal)
        return host->pair_primal(coords, o.coords);
    if (basis == CoordBasis::dual && o.basis == CoordBasis::dual)
        return host->pair_dual(coords, o.coords);
    // Mixed: (x, y) = x_primal . y_dual
    const QVec& p = basis == CoordBasis::primal ? coords : o.coords;
    const QVec& d = basis == CoordBasis::primal ? o.coords : coords;
    Rat s(0);
    for (size_t i = 0; i < p.size(); ++i) s += p[i] * d[i];
    return s;
}

Rat QVector::norm() const { return pair(*this); }

QVector QVector::to_basis(CoordBasis b) const {
    if (b == basis) return *this;
    if (b == CoordBasis::dual) return QVector(host, b, host->primal_to_dual(coords));
    return QVector(host, b, host->dual_to_primal(coords));
}

bool QVector::operator==(const QVector& o) const {
    return host == o.host && basis == o.basis && coords == o.coords;
}

bool is_negative_definite(const IMat& gram) {
    if (gram.rows != gram.cols) return false;
    int n = gram.rows;
    // Leading principal minors of -G must all be positive.
    for (int k = 1; k <= n; ++k) {
        IMat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = -gram.at(i, j);
        if (det(sub) <= 0) return false;
    }
    return true;
}

Sublattice Sublattice::from_generators(int ambient_dim, const std::vector<QVec>& gens) {
    Sublattice s;
    s.ambient_dim = ambient_dim;
    Int d(1);
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != ambient_dim)
            throw domain_error("Sublattice: generator size mismatch");
        for (const auto& q : g) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    }
    IMat m(ambient_dim, static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < ambient_dim; ++i) {
            Rat scaled = gens[j][i] * Rat(d);
            m.at(i, static_cast<int>(j)) = scaled.get_num();
        }
    IMat h = hnf_columns(m);
    // Normalize so that gcd(denominator, matrix content) = 1.
    Int content(0);
    for (const auto& v : h.data) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    if (content > 1) {
        Int g;
        mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), d.get_mpz_t());
        if (g > 1) {
            for (auto& v : h.data) v /= g;
            d /= g;
        }
    }
    s.basis = h;
    s.denom = d;
    return s;
}

bool Sublattice::contains(const QVec& v) const { return member_coords(v).has_value(); }

std::optional<IVec> Sublattice::member_coords(const QVec& v) const {
    if (static_cast<int>(v.size()) != ambient_dim) throw domain_error("Sublattice: size mismatch");
    IVec w(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
        Rat scaled = v[i] * Rat(denom);
        if (!is_integer(scaled)) return std::nullopt;
        w[i] = scaled.get_num();
    }
    return solve_hnf(basis, w);
}

QVec Sublattice::basis_vector(int j) const {
    QVec v(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) v[i] = Rat(basis.at(i, j)) / Rat(denom);
    return v;
}

std::vector<QVec> Sublattice::basis_vectors() const {
    std::vector<QVec> out;
    for (int j = 0; j < basis.cols; ++j) out.push_back(basis_vector(j));
    return out;
}

bool Sublattice::operator==(const Sublattice& o) const {
    return ambient_dim == o.ambient_dim && denom == o.denom && basis == o.basis;
}

bool in_root_monoid(const EvenLattice& e, const QVec& v_primal) {
    if (static_cast<int>(v_primal.size()) != e.rank) throw domain_error("in_root_monoid: size mismatch");
    for (const auto& c : v_primal)
        if (!is_integer(c) || c < 0) return false;
    return true;
}

bool in_root_monoid(const std::vector<QVec>& fund_system, const QVec& v) {
    if (fund_system.empty()) {
        for (const auto& c : v)
            if (c != 0) throw domain_error("in_root_monoid: vector outside span");
        return true;
    }
    size_t dim = v.size();
    // Solve fund_system * x = v by rational elimination.
    int k = static_cast<int>(fund_system.size());
    QMat a(static_cast<int>(dim), k + 1);
    for (int j = 0; j < k; ++j)
        for (size_t i = 0; i < dim; ++i) a.at(static_cast<int>(i), j) = fund_system[j][i];
    for (size_t i = 0; i < dim; ++i) a.at(static_cast<int>(i), k) = v[i];
    int row = 0;
    std::vector<int> pivot_of_col(k, -1);
    for (int col = 0; col < k && row < a.rows; ++col) {
        int p = -1;
        for (int i = row; i < a.rows; ++i)
            if (a.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j <= k; ++j) std::swap(a.at(row, j), a.at(p, j));
        Rat piv = a.at(row, col);
        for (int j = 0; j <= k; ++j) a.at(row, j) /= piv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == row) continue;
            Rat f = a.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j <= k; ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (int i = row; i < a.rows; ++i)
        if (a.at(i, k) != 0) throw domain_error("in_root_monoid: vector outside span");
    for (int col = 0; col < k; ++col) {
        if (pivot_of_col[col] < 0) continue;
        const Rat& c = a.at(pivot_of_col[col], k);
        if (!is_integer(c) || c < 0) return false;
    }
    return true;
}

namespace {

// Exact LDL^T factorization of a positive-definite rational matrix.
struct Cholesky {
    int n;
    QMat l;    // unit lower triangular
    QVec d;    // positive diagonal
};

Cholesky ldlt(const IMat& neg_gram) {
    int n = neg_gram.rows;
    Cholesky c{n, QMat(n, n), QVec(n, Rat(0))};
    QMat a = QMat::from_int(neg_gram);
    for (int j = 0; j < n; ++j) {
        Rat dj = a.at(j, j);
        for (int k = 0; k < j; ++k) dj -= c.l.at(j, k) * c.l.at(j, k) * c.d[k];
        if (dj <= 0) throw domain_error("lattice not negative definite");
        c.d[j] = dj;
        c.l.at(j, j) = 1;
        for (int i = j + 1; i < n; ++i) {
            Rat v = a.at(i, j);
            for (int k = 0; k < j; ++k) v -= c.l.at(i, k) * c.l.at(j, k) * c.d[k];
            c.l.at(i, j) = v / dj;
        }
    }
    return c;
}

// Largest integer k with (k - center)^2 <= q and k >= center, extended to
// floor(center + sqrt(q)); q >= 0.
Int floor_center_plus_sqrt(const Rat& center, const Rat& q) {
    Int k = rat_floor(center);
    while (true) {
        Rat diff = Rat(k + 1) - center;
        if (diff <= 0 || diff * diff <= q) ++k;
        else break;
    }
    return k;
}

Int ceil_center_minus_sqrt(const Rat& center, const Rat& q) {
    Int k = rat_ceil(center);
    while (true) {
        Rat diff = center - Rat(k - 1);
        if (diff <= 0 || diff * diff <= q) --k;
        else break;
    }
    return k;
}

}  // namespace

std::vector<std::pair<QVec, Rat>> vectors_in_coset_norm_range(const IMat& gram, const QVec& coset,
                                                              const Rat& lo, const Rat& hi) {
    int n = gram.rows;
    if (hi > 0) throw domain_error("vectors_in_coset_norm_range: hi must be <= 0");
    std::vector<std::pair<QVec, Rat>> out;
    if (n == 0) {
        if (lo <= 0 && 0 <= hi) out.push_back({QVec{}, Rat(0)});
        return out;
    }
    IMat neg(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg.at(i, j) = -gram.at(i, j);
    Cholesky ch = ldlt(neg);
    Rat budget = -lo;  // enumerate y with y^T A y <= budget, A = -gram
    QVec y(n, Rat(0));
    // Work from coordinate n-1 down to 0; partial[j] = sum_{k > j} d_k (...)^2.
    std::vector<Rat> centers(n, Rat(0));
    QVec x(n, Rat(0));  // actual coordinates y_j = coset_j + integer
    std::function<void(int, const Rat&)> rec = [&](int j, const Rat& used) {
        if (j < 0) {
            Rat norm = -used;
            if (norm >= lo && norm <= hi) out.push_back({x, norm});
            return;
        }
        // center c_j = -sum_{i > j} L_ij x_i
        Rat c(0);
        for (int i = j + 1; i < n; ++i)
            if (ch.l.at(i, j) != 0) c -= ch.l.at(i, j) * x[i];
        Rat room = (budget - used) / ch.d[j];
        Int klo = ceil_center_minus_sqrt(c - coset[j], room);
        Int khi = floor_center_plus_sqrt(c - coset[j], room);
        for (Int k = klo; k <= khi; ++k) {
            x[j] = coset[j] + Rat(k);
            Rat t = x[j] - c;
            Rat used2 = used + ch.d[j] * t * t;
            if (used2 > budget) continue;
            rec(j - 1, used2);
        }
        x[j] = 0;
    };
    rec(n - 1, Rat(0));
    std::sort(out.begin(), out.end(),
              [](const std::pair<QVec, Rat>& a, const std::pair<QVec, Rat>& b) {
                  return a.first < b.first;
              });
    return out;
}

std::vector<QVec> vectors_in_coset_with_norm(const EvenLattice& l, const QVec& coset_primal,
                                             const Rat& norm) {
    if (l.rank > 0 && !is_negative_definite(l.gram))
        throw domain_error("vectors_in_coset_with_norm: lattice not negative definite");
    if (norm > 0) throw domain_error("vectors_in_coset_with_norm: norm must be <= 0");
    auto pairs = vectors_in_coset_norm_range(l.gram, coset_primal, norm, norm);
    std::vector<QVec> out;
    out.reserve(pairs.size());
    for (auto& p : pairs) out.push_back(std::move(p.first));
    return out;
}

std::vector<QVec> vectors_in_coset_with_norm_naive(const EvenLattice& l, const QVec& coset_primal,
                                                   const Rat& norm) {
    if (l.rank > 0 && !is_negative_definite(l.gram))
        throw domain_error("vectors_in_coset_with_norm_naive: lattice not negative definite");
    int n = l.rank;
    std::vector<QVec> out;
    if (n == 0) {
        if (norm == 0) out.push_back(QVec{});
        return out;
    }
    // Box bound: x_i^2 <= |norm| * (A^{-1})_{ii} with A = -gram.
    IMat neg(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg.at(i, j) = -l.gram.at(i, j);
    QMat ainv = inverse(neg);
    Rat budget = -norm;
    std::vector<Int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Rat q = budget * ainv.at(i, i);
        lo[i] = ceil_center_minus_sqrt(-coset_primal[i], q);
        hi[i] = floor_center_plus_sqrt(-coset_primal[i], q);
    }
    QVec x(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (l.norm_primal(x) == norm) out.push_back(x);
            return;
        }
        for (Int k = lo[i]; k <= hi[i]; ++k) {
            x[i] = coset_primal[i] + Rat(k);
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IVec> fundamental_system_from_form(const EvenLattice& l, const QVec& t) {
    if (static_cast<int>(t.size()) != l.rank)
        throw domain_error("fundamental_system_from_form: form size mismatch");
    auto roots = vectors_in_coset_with_norm(l, QVec(l.rank, Rat(0)), Rat(-2));
    auto form = [&](const QVec& v) {
        Rat s(0);
        for (int i = 0; i < l.rank; ++i) s += t[i] * v[i];
        return s;
    };
    std::vector<IVec> positive;
    for (const auto& r : roots) {
        Rat f = form(r);
        if (f == 0) {
            std::string name = "(";
            for (int i = 0; i < l.rank; ++i) name += (i ? "," : "") + rat_to_string(r[i]);
            name += ")";
            throw domain_error("fundamental_system_from_form: form vanishes on root " + name);
        }
        if (f > 0) {
            IVec iv(l.rank);
            for (int i = 0; i < l.rank; ++i) iv[i] = r[i].get_num();
            positive.push_back(std::move(iv));
        }
    }
    std::map<IVec, bool> pos_set;
    for (const auto& p : positive) pos_set[p] = true;
    std::vector<IVec> fund;
    for (const auto& d : positive) {
        bool decomposable = false;
        for (const auto& d1 : positive) {
            IVec diff(l.rank);
            for (int i = 0; i < l.rank; ++i) diff[i] = d[i] - d1[i];
            bool zero = true;
            for (const auto& v : diff)
                if (v != 0) { zero = false; break; }
            if (zero) continue;
            if (pos_set.count(diff)) { decomposable = true; break; }
        }
        if (!decomposable) fund.push_back(d);
    }
    std::sort(fund.begin(), fund.end());
    return fund;
}

bool is_primitive_sublattice(const Sublattice& m, const Sublattice& l) {
    if (m.ambient_dim != l.ambient_dim) throw domain_error("is_primitive_sublattice: ambient mismatch");
    int k = m.rank();
    IMat coords(l.rank(), k);
    for (int j = 0; j < k; ++j) {
        auto c = l.member_coords(m.basis_vector(j));
        if (!c) throw domain_error("is_primitive_sublattice: M not contained in L");
        for (int i = 0; i < l.rank(); ++i) coords.at(i, j) = (*c)[i];
    }
    IVec d = smith_normal_form(coords);
    for (const auto& v : d)
        if (v != 0 && v != 1) return false;
    return true;
}

}  // namespace sextic
