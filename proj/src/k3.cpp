#include "sextic/k3.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sextic/errors.hpp"

namespace sextic {

namespace {

std::pair<int, int> sig_rec(const QMat& m) {
    int n = m.rows;
    if (n == 0) return {0, 0};
    int piv = -1;
    for (int i = 0; i < n; ++i)
        if (m.at(i, i) != 0) { piv = i; break; }
    auto minor_without = [&](const std::vector<int>& drop, auto entry) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
        QMat s(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
        for (size_t a = 0; a < keep.size(); ++a)
            for (size_t b = 0; b < keep.size(); ++b)
                s.at(static_cast<int>(a), static_cast<int>(b)) = entry(keep[a], keep[b]);
        return s;
    };
    if (piv >= 0) {
        int i = piv;
        QMat s = minor_without({i}, [&](int k, int l) -> Rat {
            return m.at(k, l) - m.at(k, i) * m.at(i, l) / m.at(i, i);
        });
        auto [p, q] = sig_rec(s);
        return m.at(i, i) > 0 ? std::make_pair(p + 1, q) : std::make_pair(p, q + 1);
    }
    int a = -1, b = -1;
    for (int i = 0; i < n && a < 0; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m.at(i, j) != 0) { a = i; b = j; break; }
    if (a < 0) throw domain_error("symmetric_signature: degenerate form");
    Rat c = m.at(a, b);
    QMat s = minor_without({a, b}, [&](int k, int l) -> Rat {
        return m.at(k, l) - (m.at(k, b) * m.at(a, l) + m.at(k, a) * m.at(b, l)) / c;
    });
    auto [p, q] = sig_rec(s);
    return {p + 1, q + 1};
}

}  // namespace

std::pair<int, int> symmetric_signature(const QMat& m) { return sig_rec(m); }

namespace {

// unit numerator of q-value over exactly p^scale (from JordanBlock fields)
long legendre_of(const Int& a, const Int& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

}  // namespace

bool exists_even_lattice(const GenusSpec& spec) {
    if (spec.p_plus < 0 || spec.p_minus < 0) return false;
    int n = spec.p_plus + spec.p_minus;
    const FiniteQuadraticForm& f = spec.form;
    Int total = f.order();
    if (total == 1) return ((spec.p_plus - spec.p_minus) % 8 + 8) % 8 == 0;
    auto primes = f.prime_support();
    for (const Int& p : primes)
        if (f.length_at(p) > n) return false;
    int sig = signature_mod8(f);
    if (((spec.p_plus - spec.p_minus) % 8 + 8) % 8 != sig) return false;
    for (const Int& p : primes) {
        if (f.length_at(p) != n) continue;
        auto blocks = jordan_decomposition(f, p);
        if (p == 2) {
            bool has_odd_scale1 = false;
            for (const auto& b : blocks)
                if (b.rank == 1 && b.scale == 1) has_odd_scale1 = true;
            if (has_odd_scale1) continue;
            Int d(1);
            for (const auto& b : blocks) {
                if (b.rank == 1) d *= b.qx;
                else d *= (b.qx * b.qy - 1);
            }
            Int u = total;
            while (u % 2 == 0) u /= 2;
            long um = Int((u % 8) + 8).get_si() % 8;
            long dm = Int((d % 8) + 8).get_si() % 8;
            if (um != dm && um != (8 - dm) % 8) return false;
        } else {
            long chi = 1;
            for (const auto& b : blocks) chi *= legendre_of(b.qx, p);
            Int v(1);
            Int u = total;
            while (u % p == 0) { u /= p; v *= p; }
            Int target = (spec.p_minus % 2 == 1) ? Int(-u) : u;
            if (legendre_of(target, p) != chi) return false;
        }
    }
    return true;
}

bool embeds_in_k3(const EvenLattice& lam) {
    auto [pos, neg] = symmetric_signature(QMat::from_int(lam.gram));
    if (pos != 1) throw domain_error("embeds_in_k3: signature must be (1, mu)");
    if (neg > 19) throw domain_error("embeds_in_k3: rank exceeds 20");
    GenusSpec spec;
    spec.p_plus = 2;
    spec.p_minus = 19 - neg;
    spec.form = disc_form(lam).negated();
    return exists_even_lattice(spec);
}

bool root_condition(const EvenLattice& e_lat, const std::vector<GlueClassView>& classes) {
    for (const auto& c : classes) {
        if (c.h_half) continue;
        // nonzero class with integral h-part: any (-2)-vector in its coset is
        // a root outside <E>.
        if (!vectors_in_coset_with_norm(e_lat, c.e_part, Rat(-2)).empty()) return false;
    }
    return true;
}

bool isotropic_condition(const EvenLattice& e_lat, const std::vector<GlueClassView>& classes) {
    for (const auto& c : classes) {
        if (!c.h_half) continue;
        // x = h/2 + xi with xi^2 = -1/2 gives x^2 = 0, (x,h) = 1.
        if (!vectors_in_coset_with_norm(e_lat, c.e_part, make_rat(-1, 2)).empty()) return false;
    }
    return true;
}

std::optional<IMat> search_witness_lattice(const GenusSpec& spec, int bound) {
    int n = spec.p_plus + spec.p_minus;
    if (n == 0) return spec.form.order() == 1 ? std::optional<IMat>(IMat(0, 0)) : std::nullopt;
    // Enumerate symmetric matrices with even diagonal in [-2b, 2b] and
    // off-diagonal in [-b, b].
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) slots.emplace_back(i, j);
    IMat g(n, n);
    Int want_det_abs = spec.form.order();
    std::optional<IMat> found;
    std::function<bool(size_t)> rec = [&](size_t s) -> bool {
        if (s == slots.size()) {
            Int d = det(g);
            if (d == 0) return false;
            if ((d < 0 ? -d : d) != want_det_abs) return false;
            auto [pos, neg] = symmetric_signature(QMat::from_int(g));
            if (pos != spec.p_plus || neg != spec.p_minus) return false;
            if (!forms_isomorphic(disc_form(EvenLattice(g)), spec.form)) return false;
            found = g;
            return true;
        }
        auto [i, j] = slots[s];
        if (i == j) {
            for (int v = -bound; v <= bound; ++v) {
                g.at(i, i) = 2 * v;
                if (rec(s + 1)) return true;
            }
        } else {
            for (int v = -bound; v <= bound; ++v) {
                g.at(i, j) = v;
                g.at(j, i) = v;
                if (rec(s + 1)) return true;
            }
        }
        return false;
    };
    rec(0);
    return found;
}

bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    if (a.order() != b.order()) return false;
    // enumerate all elements of b, bucketed by (order, q)
    size_t ka = a.ngens(), kb = b.ngens();
    std::vector<IVec> belems;
    {
        IVec t(kb, Int(0));
        std::function<void(size_t)> gen = [&](size_t i) {
            if (i == kb) { belems.push_back(t); return; }
            for (Int v(0); v < b.orders[i]; ++v) { t[i] = v; gen(i + 1); }
            t[i] = 0;
        };
        gen(0);
    }
    // map generators of a to elements of b preserving order, q and b-values
    std::vector<IVec> images;
    std::function<bool(size_t)> rec = [&](size_t gi) -> bool {
        if (gi == ka) {
            // surjectivity: generated subgroup has full order
            const std::vector<IVec>& gens = images;
            std::set<IVec> elems;
            elems.insert(IVec(kb, Int(0)));
            std::vector<IVec> frontier = {IVec(kb, Int(0))};
            while (!frontier.empty()) {
                std::vector<IVec> next;
                for (const auto& e : frontier)
                    for (const auto& g : gens) {
                        IVec s(kb);
                        for (size_t x = 0; x < kb; ++x) {
                            s[x] = e[x] + g[x];
                            mpz_fdiv_r(s[x].get_mpz_t(), s[x].get_mpz_t(), b.orders[x].get_mpz_t());
                        }
                        if (elems.insert(s).second) next.push_back(s);
                    }
                frontier = std::move(next);
            }
            return Int(static_cast<long>(elems.size())) == b.order();
        }
        for (const auto& cand : belems) {
            if (b.element_order(cand) != a.orders[gi]) continue;
            if (b.q_of(cand) != mod_interval(a.qvals[gi], Rat(2))) continue;
            bool ok = true;
            for (size_t pj = 0; pj < gi && ok; ++pj)
                if (b.b_of(images[pj], cand) !=
                    mod_interval(a.bvals.at(static_cast<int>(pj), static_cast<int>(gi)), Rat(1)))
                    ok = false;
            if (!ok) continue;
            images.push_back(cand);
            if (rec(gi + 1)) return true;
            images.pop_back();
        }
        return false;
    };
    return rec(0);
}

}  // namespace sextic
