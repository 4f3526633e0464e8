#include "sextic/discform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sextic/errors.hpp"

namespace sextic {

Int FiniteQuadraticForm::order() const {
    Int n(1);
    for (const auto& o : orders) n *= o;
    return n;
}

Rat FiniteQuadraticForm::q_of(const IVec& t) const {
    Rat s(0);
    for (size_t i = 0; i < orders.size(); ++i) {
        if (t[i] == 0) continue;
        s += Rat(t[i] * t[i]) * qvals[i];
        for (size_t j = i + 1; j < orders.size(); ++j)
            if (t[j] != 0) s += Rat(2 * t[i] * t[j]) * bvals.at(static_cast<int>(i), static_cast<int>(j));
    }
    return mod_interval(s, Rat(2));
}

Rat FiniteQuadraticForm::b_of(const IVec& s, const IVec& t) const {
    Rat v(0);
    for (size_t i = 0; i < orders.size(); ++i) {
        if (s[i] == 0) continue;
        for (size_t j = 0; j < orders.size(); ++j) {
            if (t[j] == 0) continue;
            if (i == j) {
                // b(g,g) = q(g) mod Z
                v += Rat(s[i] * t[j]) * qvals[i];
            } else {
                v += Rat(s[i] * t[j]) * bvals.at(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return mod_interval(v, Rat(1));
}

Int FiniteQuadraticForm::element_order(const IVec& t) const {
    Int n(1);
    for (size_t i = 0; i < orders.size(); ++i) {
        if (t[i] == 0) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), t[i].get_mpz_t(), orders[i].get_mpz_t());
        Int oi = orders[i] / g;
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), oi.get_mpz_t());
    }
    return n;
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
    FiniteQuadraticForm f = *this;
    for (auto& q : f.qvals) q = mod_interval(-q, Rat(2));
    for (auto& b : f.bvals.data) b = mod_interval(-b, Rat(1));
    return f;
}

int FiniteQuadraticForm::length_at(const Int& p) const {
    int n = 0;
    for (const auto& o : orders)
        if (o % p == 0) ++n;
    return n;
}

std::vector<Int> FiniteQuadraticForm::prime_support() const {
    std::set<Int> ps;
    for (auto o : orders) {
        Int m = o;
        for (Int p(2); p * p <= m; ++p)
            while (m % p == 0) { ps.insert(p); m /= p; }
        if (m > 1) ps.insert(m);
    }
    return std::vector<Int>(ps.begin(), ps.end());
}

std::vector<std::pair<IVec, Int>> FiniteQuadraticForm::primary_part(const Int& p) const {
    std::vector<std::pair<IVec, Int>> out;
    for (size_t i = 0; i < orders.size(); ++i) {
        Int o = orders[i];
        Int pk(1);
        while (o % p == 0) { pk *= p; o /= p; }
        if (pk == 1) continue;
        // o is now the prime-to-p cofactor; o * g_i generates the p-part.
        IVec g(orders.size(), Int(0));
        g[i] = o;
        out.emplace_back(std::move(g), pk);
    }
    return out;
}

FiniteQuadraticForm disc_form(const EvenLattice& l) {
    IMat uinv;
    IVec d = smith_normal_form(l.gram, &uinv);
    FiniteQuadraticForm f;
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
        if (d[i] == 0) throw domain_error("disc_form: degenerate lattice");
        if (d[i] > 1) keep.push_back(i);
    }
    for (int i : keep) f.orders.push_back(d[i]);
    for (int i : keep) {
        IVec gen(l.rank);
        for (int r = 0; r < l.rank; ++r) gen[r] = uinv.at(r, i);
        f.gens_dual.push_back(std::move(gen));
    }
    int k = static_cast<int>(keep.size());
    f.qvals.resize(k);
    f.bvals = QMat(k, k);
    const QMat& ginv = l.gram_inverse();
    auto pair_dual = [&](const IVec& a, const IVec& b) {
        Rat s(0);
        for (int i = 0; i < l.rank; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < l.rank; ++j)
                if (b[j] != 0 && ginv.at(i, j) != 0) s += Rat(a[i] * b[j]) * ginv.at(i, j);
        }
        return s;
    };
    for (int i = 0; i < k; ++i) {
        f.qvals[i] = mod_interval(pair_dual(f.gens_dual[i], f.gens_dual[i]), Rat(2));
        for (int j = 0; j < k; ++j)
            f.bvals.at(i, j) = mod_interval(pair_dual(f.gens_dual[i], f.gens_dual[j]), Rat(1));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Cyclotomic integers Z[x]/Phi_m and exact Gauss-sum signatures.

namespace {

std::vector<Int> poly_divide_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    int dn = static_cast<int>(rem.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<Int> quo(dn - dd + 1, Int(0));
    for (int i = dn; i >= dd; --i) {
        if (rem[i] == 0) continue;
        Int c = rem[i] / den[dd];
        quo[i - dd] = c;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    return quo;
}

std::vector<Int> cyclotomic_poly(int m) {
    // x^m - 1 divided by Phi_d for proper divisors d.
    std::vector<Int> p(m + 1, Int(0));
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto phd = cyclotomic_poly(d);
        p = poly_divide_exact(p, phd);
    }
    return p;
}

struct CycloRing {
    int m;
    std::vector<Int> phi;     // Phi_m coefficients
    int deg;                  // degree of Phi_m
    std::vector<IVec> xpow;   // x^j mod Phi_m for j in [0, m)

    explicit CycloRing(int modulus) : m(modulus) {
        phi = cyclotomic_poly(m);
        deg = static_cast<int>(phi.size()) - 1;
        xpow.assign(m, IVec(deg, Int(0)));
        IVec cur(deg, Int(0));
        cur[0] = 1;
        xpow[0] = cur;
        for (int j = 1; j < m; ++j) {
            // multiply by x
            IVec nxt(deg, Int(0));
            Int lead = cur[deg - 1];
            for (int i = deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            if (lead != 0)
                for (int i = 0; i < deg; ++i) nxt[i] -= lead * phi[i];
            cur = nxt;
            xpow[j] = cur;
        }
    }

    IVec zero() const { return IVec(deg, Int(0)); }
    IVec root(long k) const {  // zeta_m^k
        long r = ((k % m) + m) % m;
        return xpow[static_cast<size_t>(r)];
    }
    void add_root(IVec& acc, long k) const {
        long r = ((k % m) + m) % m;
        const IVec& t = xpow[static_cast<size_t>(r)];
        for (int i = 0; i < deg; ++i) acc[i] += t[i];
    }
    IVec add(const IVec& a, const IVec& b) const {
        IVec c(deg);
        for (int i = 0; i < deg; ++i) c[i] = a[i] + b[i];
        return c;
    }
    IVec mul(const IVec& a, const IVec& b) const {
        std::vector<Int> prod(2 * deg - 1, Int(0));
        for (int i = 0; i < deg; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < deg; ++j)
                if (b[j] != 0) prod[i + j] += a[i] * b[j];
        }
        for (int t = 2 * deg - 2; t >= deg; --t) {
            if (prod[t] == 0) continue;
            Int c = prod[t];
            prod[t] = 0;
            for (int i = 0; i < deg; ++i) prod[t - deg + i] -= c * phi[i];
        }
        IVec out(deg);
        for (int i = 0; i < deg; ++i) out[i] = prod[i];
        return out;
    }
    IVec scale(const IVec& a, const Int& c) const {
        IVec out(deg);
        for (int i = 0; i < deg; ++i) out[i] = a[i] * c;
        return out;
    }
    bool equal(const IVec& a, const IVec& b) const { return a == b; }
};

// Signature mod 8 of a p^k-scale constituent via its exact Gauss sum.
// The sum runs over the block group; phases are q-values in Q/2Z.
int block_signature(const JordanBlock& blk) {
    long pk = 1;
    long p = static_cast<long>(blk.p.get_si());
    for (int i = 0; i < blk.scale; ++i) pk *= p;
    // modulus for phases e^{i pi q} with q in (1/pk)Z/2Z -> roots of order 2*pk
    long m = 2 * pk;
    auto lcm_long = [](long a, long b) {
        long g = std::__gcd(a, b);
        return a / g * b;
    };
    m = lcm_long(m, 8);
    if (p != 2 && blk.scale % 2 == 1) m = lcm_long(m, p);  // need sqrt(p)
    CycloRing ring(static_cast<int>(m));

    IVec gauss = ring.zero();
    Int count(0);
    if (blk.rank == 1) {
        for (long t = 0; t < pk; ++t) {
            // q(t g) = qx t^2 / pk mod 2 ; phase exponent = q * m / 2
            long num = static_cast<long>(((blk.qx.get_si() % (2 * pk)) * ((t * t) % (2 * pk))) % (2 * pk));
            ring.add_root(gauss, num * (m / 2) / pk);
        }
        count = pk;
    } else {
        for (long s = 0; s < pk; ++s)
            for (long t = 0; t < pk; ++t) {
                long num = (blk.qx.get_si() % (2 * pk)) * ((s * s) % (2 * pk)) +
                           (blk.qy.get_si() % (2 * pk)) * ((t * t) % (2 * pk)) +
                           2 * (blk.bb.get_si() % (2 * pk)) * ((s * t) % (2 * pk));
                num %= 2 * pk;
                if (num < 0) num += 2 * pk;
                ring.add_root(gauss, num * (m / 2) / pk);
            }
        count = Int(pk) * Int(pk);
    }
    // sqrt(count) as a cyclotomic integer
    Int c = count;
    Int intpart(1);
    std::vector<long> odd_primes;
    int twos = 0;
    {
        Int cc = c;
        Int two(2);
        while (cc % 2 == 0) { ++twos; cc /= 2; }
        // remaining odd part is p^j for our blocks
        long pp = p == 2 ? 0 : p;
        int j = 0;
        if (pp != 0)
            while (cc % Int(pp) == 0) { ++j; cc /= Int(pp); }
        if (cc != 1) throw consistency_error("block_signature: unexpected block order");
        intpart = Int(1);
        for (int i = 0; i < twos / 2; ++i) intpart *= 2;
        if (pp != 0)
            for (int i = 0; i < j / 2; ++i) intpart *= Int(pp);
        if (twos % 2 == 1) odd_primes.push_back(2);
        if (pp != 0 && j % 2 == 1) odd_primes.push_back(pp);
    }
    IVec sqrt_c = ring.zero();
    sqrt_c[0] = intpart;
    for (long q : odd_primes) {
        IVec s = ring.zero();
        if (q == 2) {
            // sqrt(2) = zeta8 + zeta8^{-1}
            ring.add_root(s, m / 8);
            ring.add_root(s, -(m / 8));
        } else {
            // quadratic Gauss sum: sum zeta_q^{t^2} = sqrt(q) or i sqrt(q)
            for (long t = 0; t < q; ++t) ring.add_root(s, (t * t % q) * (m / q));
            if (q % 4 == 3) {
                // multiply by -i to get sqrt(q)
                IVec minus_i = ring.root(-(m / 4));
                s = ring.mul(s, minus_i);
            }
        }
        sqrt_c = ring.mul(sqrt_c, s);
    }
    for (int sig = 0; sig < 8; ++sig) {
        IVec target = ring.mul(sqrt_c, ring.root(static_cast<long>(sig) * (m / 8)));
        if (ring.equal(gauss, target)) return sig;
    }
    throw consistency_error("block_signature: Gauss sum does not match any signature");
}

}  // namespace

int signature_mod8(const FiniteQuadraticForm& f) {
    int sig = 0;
    for (const Int& p : f.prime_support()) {
        for (const auto& blk : jordan_decomposition(f, p)) sig += block_signature(blk);
    }
    return ((sig % 8) + 8) % 8;
}

// ---------------------------------------------------------------------------
// Jordan decomposition.

namespace {

struct PElem {
    IVec tuple;  // ambient tuple coordinates
    Int order;   // p-power order
};

}  // namespace

std::vector<JordanBlock> jordan_decomposition(const FiniteQuadraticForm& f, const Int& p) {
    std::vector<PElem> gens;
    for (auto& [g, pk] : f.primary_part(p)) gens.push_back({g, pk});
    std::vector<JordanBlock> blocks;
    auto add_tuples = [&](const IVec& a, const IVec& b, const Int& ca, const Int& cb) {
        IVec r(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] = ca * a[i] + cb * b[i];
            Int m = f.orders[i];
            mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), m.get_mpz_t());
        }
        return r;
    };
    while (!gens.empty()) {
        // locate maximal order
        Int maxo(1);
        for (const auto& g : gens) if (g.order > maxo) maxo = g.order;
        if (maxo == 1) break;
        int k = 0;
        { Int t = maxo; while (t > 1) { t /= p; ++k; } }
        // prefer a rank-1 split: an element of order maxo with q of full denominator
        int pick = -1;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].order != maxo) continue;
            // full denominator: q = a / p^k with p not dividing a
            Rat scaled = f.q_of(gens[i].tuple) * Rat(maxo);
            if (is_integer(scaled) && scaled.get_num() % p != 0) { pick = static_cast<int>(i); break; }
        }
        if (pick < 0 && p != 2) {
            // p odd: massage some max-order element to get full q-denominator
            int xi = -1;
            for (size_t i = 0; i < gens.size(); ++i)
                if (gens[i].order == maxo) { xi = static_cast<int>(i); break; }
            for (size_t j = 0; j < gens.size() && pick < 0; ++j) {
                if (static_cast<int>(j) == xi) continue;
                Rat bb = f.b_of(gens[xi].tuple, gens[j].tuple);
                Rat scaled = bb * Rat(maxo);
                if (!(is_integer(scaled) && scaled.get_num() % p != 0)) continue;
                for (long t = 1; t < 3 && pick < 0; ++t) {
                    IVec cand = add_tuples(gens[xi].tuple, gens[j].tuple, Int(1), Int(t));
                    if (f.element_order(cand) != maxo) continue;
                    Rat qq = f.q_of(cand) * Rat(maxo);
                    if (is_integer(qq) && qq.get_num() % p != 0) {
                        gens[xi].tuple = cand;
                        pick = xi;
                    }
                }
            }
            if (pick < 0) throw consistency_error("jordan_decomposition: no odd-p pivot found");
        }
        if (pick >= 0) {
            PElem x = gens[static_cast<size_t>(pick)];
            gens.erase(gens.begin() + pick);
            Rat qx = f.q_of(x.tuple);
            JordanBlock blk;
            blk.p = p;
            blk.scale = k;
            blk.rank = 1;
            blk.qx = Rat(qx * Rat(maxo)).get_num();
            blocks.push_back(blk);
            // complement: z -> z - lambda x with lambda = b(x,z)/b(x,x) mod maxo
            Rat bxx = f.b_of(x.tuple, x.tuple);
            Int a = Rat(bxx * Rat(maxo)).get_num();  // unit mod p
            Int ainv;
            if (mpz_invert(ainv.get_mpz_t(), a.get_mpz_t(), maxo.get_mpz_t()) == 0)
                throw consistency_error("jordan_decomposition: pivot not invertible");
            for (auto& z : gens) {
                Rat bxz = f.b_of(x.tuple, z.tuple);
                Int c = Rat(bxz * Rat(maxo)).get_num();
                Int lambda = (c * ainv) % maxo;
                z.tuple = add_tuples(z.tuple, x.tuple, Int(1), -lambda);
                z.order = f.element_order(z.tuple);
            }
        } else {
            // p = 2, even type: need a rank-2 block
            int xi = -1;
            for (size_t i = 0; i < gens.size(); ++i)
                if (gens[i].order == maxo) { xi = static_cast<int>(i); break; }
            int yi = -1;
            for (size_t j = 0; j < gens.size(); ++j) {
                if (static_cast<int>(j) == xi) continue;
                Rat bb = f.b_of(gens[static_cast<size_t>(xi)].tuple, gens[j].tuple);
                Rat scaled = bb * Rat(maxo);
                if (is_integer(scaled) && scaled.get_num() % 2 != 0) { yi = static_cast<int>(j); break; }
            }
            if (yi < 0) throw consistency_error("jordan_decomposition: even-type pivot pair not found");
            PElem x = gens[static_cast<size_t>(xi)];
            PElem y = gens[static_cast<size_t>(yi)];
            gens.erase(gens.begin() + std::max(xi, yi));
            gens.erase(gens.begin() + std::min(xi, yi));
            JordanBlock blk;
            blk.p = p;
            blk.scale = k;
            blk.rank = 2;
            blk.qx = Rat(f.q_of(x.tuple) * Rat(maxo)).get_num();
            blk.qy = Rat(f.q_of(y.tuple) * Rat(maxo)).get_num();
            blk.bb = Rat(f.b_of(x.tuple, y.tuple) * Rat(maxo)).get_num();
            blocks.push_back(blk);
            // Gram of the pair scaled by maxo, inverted mod maxo.
            Int g11 = Rat(f.b_of(x.tuple, x.tuple) * Rat(maxo)).get_num() % maxo;
            Int g12 = blk.bb % maxo;
            Int g22 = Rat(f.b_of(y.tuple, y.tuple) * Rat(maxo)).get_num() % maxo;
            Int dt = (g11 * g22 - g12 * g12) % maxo;
            if (dt < 0) dt += maxo;
            Int dtinv;
            if (mpz_invert(dtinv.get_mpz_t(), dt.get_mpz_t(), maxo.get_mpz_t()) == 0)
                throw consistency_error("jordan_decomposition: rank-2 pivot not invertible");
            for (auto& z : gens) {
                Int bxz = Rat(f.b_of(x.tuple, z.tuple) * Rat(maxo)).get_num() % maxo;
                Int byz = Rat(f.b_of(y.tuple, z.tuple) * Rat(maxo)).get_num() % maxo;
                // (lambda, mu) = G^{-1} (bxz, byz) mod maxo
                Int lambda = (dtinv * (g22 * bxz - g12 * byz)) % maxo;
                Int mu = (dtinv * (g11 * byz - g12 * bxz)) % maxo;
                IVec t1 = add_tuples(z.tuple, x.tuple, Int(1), -lambda);
                z.tuple = add_tuples(t1, y.tuple, Int(1), -mu);
                z.order = f.element_order(z.tuple);
            }
        }
        // drop dead generators
        for (size_t i = gens.size(); i-- > 0;)
            if (gens[i].order == 1) gens.erase(gens.begin() + i);
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// Subgroups, overlattices, quotients.

namespace {

// Invariant factors of a finite abelian group presented as an element list,
// from the sizes of its p^j-torsion layers.
IVec abelian_invariants(const std::vector<IVec>& elements, const FiniteQuadraticForm& f) {
    Int n(static_cast<long>(elements.size()));
    std::map<Int, std::vector<int>> layers;
    Int m = n;
    for (Int p(2); p <= m; ++p) {
        if (m % p != 0) continue;
        Int ppart(1);
        {
            Int t = n;
            while (t % p == 0) { ppart *= p; t /= p; }
        }
        std::vector<long> cnt;
        Int pj(1);
        while (true) {
            pj *= p;
            long c = 0;
            for (const auto& e : elements) {
                Int o = f.element_order(e);
                Int rem;
                mpz_fdiv_r(rem.get_mpz_t(), pj.get_mpz_t(), o.get_mpz_t());
                if (rem == 0) ++c;
            }
            cnt.push_back(c);
            if (Int(c) == ppart) break;
        }
        std::vector<int> dims;  // dims[j] = number of cyclic factors of order >= p^{j+1}
        long prev = 1;
        long pl = p.get_si();
        for (long c : cnt) {
            long ratio = c / prev;
            int lg = 0;
            while (ratio > 1) { ratio /= pl; ++lg; }
            dims.push_back(lg);
            prev = c;
        }
        layers[p] = dims;
        while (m % p == 0) m /= p;
    }
    size_t maxfac = 0;
    for (auto& [p, dims] : layers)
        for (int d : dims) maxfac = std::max(maxfac, static_cast<size_t>(d));
    std::vector<Int> factors(maxfac, Int(1));
    for (auto& [p, dims] : layers)
        for (size_t j = 0; j < dims.size(); ++j)
            for (int t = 0; t < dims[j]; ++t) factors[static_cast<size_t>(t)] *= p;
    std::sort(factors.begin(), factors.end());
    IVec inv;
    for (const auto& v : factors)
        if (v > 1) inv.push_back(v);
    return inv;
}

}  // namespace

std::optional<IsotropicSubgroup> make_isotropic_subgroup(const FiniteQuadraticForm& f,
                                                         const std::vector<IVec>& gens,
                                                         IVec* offender) {
    size_t k = f.ngens();
    auto reduce = [&](IVec t) {
        for (size_t i = 0; i < k; ++i) {
            mpz_fdiv_r(t[i].get_mpz_t(), t[i].get_mpz_t(), f.orders[i].get_mpz_t());
        }
        return t;
    };
    std::set<IVec> elems;
    elems.insert(IVec(k, Int(0)));
    std::vector<IVec> frontier = {IVec(k, Int(0))};
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                IVec s(k);
                for (size_t i = 0; i < k; ++i) s[i] = e[i] + g[i];
                s = reduce(std::move(s));
                if (elems.insert(s).second) next.push_back(s);
            }
        frontier = std::move(next);
    }
    IsotropicSubgroup h;
    for (const auto& e : elems) {
        if (f.q_of(e) != 0) {
            if (offender) *offender = e;
            return std::nullopt;
        }
        h.elements.push_back(e);
    }
    std::sort(h.elements.begin(), h.elements.end());
    h.order_value = Int(static_cast<long>(h.elements.size()));
    for (const auto& g : gens) {
        IVec r = reduce(g);
        bool zero = std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
        if (!zero) h.generators.push_back(r);
    }
    h.structure = abelian_invariants(h.elements, f);
    return h;
}

Overlattice overlattice(const EvenLattice& sigma, const FiniteQuadraticForm& disc,
                        const IsotropicSubgroup& h) {
    // Preimage of H in the dual: sigma basis vectors (dual coords = Gram
    // columns) together with lifts of the subgroup generators.
    std::vector<QVec> gens;
    for (int j = 0; j < sigma.rank; ++j) {
        QVec col(sigma.rank);
        for (int i = 0; i < sigma.rank; ++i) col[i] = Rat(sigma.gram.at(i, j));
        gens.push_back(std::move(col));
    }
    for (const auto& g : h.generators) {
        QVec v(sigma.rank, Rat(0));
        for (size_t i = 0; i < disc.ngens(); ++i) {
            if (g[i] == 0) continue;
            for (int r = 0; r < sigma.rank; ++r) v[r] += Rat(g[i] * disc.gens_dual[i][r]);
        }
        gens.push_back(std::move(v));
    }
    Overlattice out;
    out.in_dual = Sublattice::from_generators(sigma.rank, gens);
    int n = out.in_dual.rank();
    if (n != sigma.rank) throw consistency_error("overlattice: rank drop");
    IMat gram(n, n);
    const QMat& ginv = sigma.gram_inverse();
    std::vector<QVec> bas = out.in_dual.basis_vectors();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s(0);
            for (int a = 0; a < sigma.rank; ++a) {
                if (bas[i][a] == 0) continue;
                for (int b = 0; b < sigma.rank; ++b)
                    if (bas[j][b] != 0 && ginv.at(a, b) != 0) s += bas[i][a] * bas[j][b] * ginv.at(a, b);
            }
            if (!is_integer(s)) throw consistency_error("overlattice: non-integral Gram");
            gram.at(i, j) = s.get_num();
        }
    for (int i = 0; i < n; ++i)
        if (gram.at(i, i) % 2 != 0) throw consistency_error("overlattice: odd diagonal");
    out.abstract = EvenLattice(gram);
    return out;
}

IVec quotient_structure(const Sublattice& lam, const Sublattice& theta) {
    if (lam.ambient_dim != theta.ambient_dim)
        throw domain_error("quotient_structure: ambient mismatch");
    if (theta.rank() != lam.rank())
        throw domain_error("quotient_structure: infinite quotient (rank drop)");
    int k = theta.rank();
    IMat coords(lam.rank(), k);
    for (int j = 0; j < k; ++j) {
        auto c = lam.member_coords(theta.basis_vector(j));
        if (!c) throw domain_error("quotient_structure: theta not contained in lam");
        for (int i = 0; i < lam.rank(); ++i) coords.at(i, j) = (*c)[i];
    }
    return cokernel_invariants(coords);
}

}  // namespace sextic
