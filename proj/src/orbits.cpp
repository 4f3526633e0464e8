#include "sextic/orbits.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "sextic/errors.hpp"
#include "sextic/linalg.hpp"

namespace sextic {

IVec apply_tuple_map(const TupleMap& map, const IVec& t, const IVec& orders) {
    size_t k = orders.size();
    IVec r(k, Int(0));
    for (size_t i = 0; i < k; ++i) {
        Int s(0);
        for (size_t j = 0; j < k; ++j)
            if (map.m[i][j] != 0 && t[j] != 0) s += Int(map.m[i][j]) * t[j];
        mpz_fdiv_r(r[i].get_mpz_t(), s.get_mpz_t(), orders[i].get_mpz_t());
    }
    return r;
}

namespace {

// Canonical key of a subgroup given by generator tuples: column HNF of
// [gens | diag(orders)], flattened.
IVec subgroup_key(const std::vector<IVec>& gens, const IVec& orders) {
    int k = static_cast<int>(orders.size());
    IMat m(k, static_cast<int>(gens.size()) + k);
    for (size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < k; ++i) m.at(i, static_cast<int>(j)) = gens[j][i];
    for (int i = 0; i < k; ++i) m.at(i, static_cast<int>(gens.size()) + i) = orders[i];
    IMat h = hnf_columns(m);
    IVec key;
    key.push_back(Int(h.cols));
    for (const auto& v : h.data) key.push_back(v);
    return key;
}

std::vector<IVec> subgroup_elements(const std::vector<IVec>& gens, const IVec& orders) {
    size_t k = orders.size();
    std::set<IVec> elems;
    elems.insert(IVec(k, Int(0)));
    std::vector<IVec> frontier = {IVec(k, Int(0))};
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                IVec s(k);
                for (size_t i = 0; i < k; ++i) {
                    s[i] = e[i] + g[i];
                    mpz_fdiv_r(s[i].get_mpz_t(), s[i].get_mpz_t(), orders[i].get_mpz_t());
                }
                if (elems.insert(s).second) next.push_back(s);
            }
        frontier = std::move(next);
    }
    return std::vector<IVec>(elems.begin(), elems.end());
}

}  // namespace

std::vector<IsotropicSubgroup> isotropic_subgroups_all(const FiniteQuadraticForm& f) {
    size_t k = f.ngens();
    // Enumerate isotropic elements.
    std::vector<IVec> iso;
    IVec t(k, Int(0));
    std::function<void(size_t)> gen = [&](size_t i) {
        if (i == k) {
            if (f.q_of(t) == 0) iso.push_back(t);
            return;
        }
        for (Int v(0); v < f.orders[i]; ++v) {
            t[i] = v;
            gen(i + 1);
        }
        t[i] = 0;
    };
    gen(0);

    std::map<IVec, std::vector<IVec>> seen;  // key -> generators
    IVec zero_key = subgroup_key({}, f.orders);
    seen[zero_key] = {};
    std::vector<std::vector<IVec>> frontier = {{}};
    while (!frontier.empty()) {
        std::vector<std::vector<IVec>> next;
        for (const auto& gens : frontier) {
            for (const auto& z : iso) {
                bool zero = std::all_of(z.begin(), z.end(), [](const Int& v) { return v == 0; });
                if (zero) continue;
                bool ok = f.q_of(z) == 0;
                for (const auto& g : gens)
                    if (!ok || f.b_of(z, g) != 0) { ok = false; break; }
                if (!ok) continue;
                auto gens2 = gens;
                gens2.push_back(z);
                IVec key = subgroup_key(gens2, f.orders);
                if (seen.count(key)) continue;
                seen[key] = gens2;
                next.push_back(gens2);
            }
        }
        frontier = std::move(next);
    }
    std::vector<IsotropicSubgroup> out;
    for (auto& [key, gens] : seen) {
        auto h = make_isotropic_subgroup(f, gens);
        if (!h) throw consistency_error("isotropic_subgroups_all: non-isotropic closure");
        out.push_back(std::move(*h));
    }
    std::sort(out.begin(), out.end(), [](const IsotropicSubgroup& a, const IsotropicSubgroup& b) {
        if (a.order_value != b.order_value) return a.order_value < b.order_value;
        return a.elements < b.elements;
    });
    return out;
}

namespace {

void check_form_preserving(const FiniteQuadraticForm& f, const TupleMap& map) {
    size_t k = f.ngens();
    for (size_t i = 0; i < k; ++i) {
        IVec gi(k, Int(0));
        gi[i] = 1;
        IVec mi = apply_tuple_map(map, gi, f.orders);
        if (f.q_of(mi) != f.qvals[i] || f.element_order(mi) != f.orders[i])
            throw domain_error("isotropic_orbits: action does not preserve the form");
        for (size_t j = 0; j < k; ++j) {
            IVec gj(k, Int(0));
            gj[j] = 1;
            IVec mj = apply_tuple_map(map, gj, f.orders);
            if (f.b_of(mi, mj) != mod_interval(f.bvals.at(static_cast<int>(i), static_cast<int>(j)), Rat(1)))
                throw domain_error("isotropic_orbits: action does not preserve b");
        }
    }
}

}  // namespace

std::vector<IsotropicSubgroup> isotropic_orbits(const FiniteQuadraticForm& f,
                                                const std::vector<TupleMap>& maps) {
    for (const auto& m : maps) check_form_preserving(f, m);
    auto all = isotropic_subgroups_all(f);
    std::map<IVec, size_t> index_of;
    for (size_t i = 0; i < all.size(); ++i)
        index_of[subgroup_key(all[i].generators, f.orders)] = i;
    // union-find
    std::vector<size_t> parent(all.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };
    for (size_t i = 0; i < all.size(); ++i) {
        for (const auto& m : maps) {
            std::vector<IVec> img;
            for (const auto& g : all[i].generators) img.push_back(apply_tuple_map(m, g, f.orders));
            auto it = index_of.find(subgroup_key(img, f.orders));
            if (it == index_of.end())
                throw consistency_error("isotropic_orbits: image subgroup not found");
            unite(i, it->second);
        }
    }
    std::vector<IsotropicSubgroup> reps;
    for (size_t i = 0; i < all.size(); ++i)
        if (find(i) == i) reps.push_back(all[i]);
    return reps;
}

size_t orbit_size(const FiniteQuadraticForm& f, const IsotropicSubgroup& h,
                  const std::vector<TupleMap>& maps) {
    std::set<IVec> keys;
    std::vector<std::vector<IVec>> frontier = {h.generators};
    keys.insert(subgroup_key(h.generators, f.orders));
    while (!frontier.empty()) {
        std::vector<std::vector<IVec>> next;
        for (const auto& gens : frontier)
            for (const auto& m : maps) {
                std::vector<IVec> img;
                for (const auto& g : gens) img.push_back(apply_tuple_map(m, g, f.orders));
                IVec key = subgroup_key(img, f.orders);
                if (keys.insert(key).second) next.push_back(img);
            }
        frontier = std::move(next);
    }
    return keys.size();
}

// ---------------------------------------------------------------------------
// Structured scalable enumeration.

long StructuredDisc::q_scaled(const std::vector<long>& t) const {
    long mod = 4 * lcm_orders;
    long s = 0;
    for (size_t i = 0; i < orders.size(); ++i) {
        if (t[i] == 0) continue;
        s = (s + (t[i] * t[i]) % mod * (q_num[i] % mod)) % mod;
        for (size_t j = i + 1; j < orders.size(); ++j)
            if (t[j] != 0 && b_num[i][j] != 0)
                s = (s + 2 * ((t[i] * t[j]) % mod) % mod * (2 * b_num[i][j] % mod)) % mod;
    }
    return ((s % mod) + mod) % mod;
}

long StructuredDisc::b_scaled(const std::vector<long>& s, const std::vector<long>& t) const {
    long mod = lcm_orders;
    long acc = 0;
    long modq = 4 * lcm_orders;
    for (size_t i = 0; i < orders.size(); ++i) {
        if (s[i] == 0) continue;
        for (size_t j = 0; j < orders.size(); ++j) {
            if (t[j] == 0) continue;
            long bij;
            if (i == j) {
                // b(g,g) = q(g) mod 1: q_num is 2D*q mod 4D -> D*b = q_num/2 mod D
                bij = (q_num[i] / 2) % mod;
            } else {
                bij = b_num[i][j] % mod;
            }
            if (bij == 0) continue;
            acc = (acc + ((s[i] * t[j]) % mod) * bij) % mod;
        }
    }
    (void)modq;
    return ((acc % mod) + mod) % mod;
}

namespace {

using Row = std::vector<long>;

Row reduce_row(const StructuredDisc& sd, Row r) {
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] %= sd.orders[i];
        if (r[i] < 0) r[i] += sd.orders[i];
    }
    return r;
}

Row add_rows(const StructuredDisc& sd, const Row& a, const Row& b) {
    Row r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
        if (r[i] >= sd.orders[i]) r[i] -= sd.orders[i];
    }
    return r;
}

long order_of_row(const StructuredDisc& sd, const Row& t) {
    long n = 1;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        long g = std::__gcd(t[i], sd.orders[i]);
        long oi = sd.orders[i] / g;
        n = n / std::__gcd(n, oi) * oi;
    }
    return n;
}

// canonical local value of one component's slots under its local autos
std::vector<long> local_canonical(const StructuredDisc& sd, int type_id, std::vector<long> vals,
                                  const std::vector<long>& local_orders) {
    std::vector<long> best = vals;
    const auto& autos = sd.local_autos.at(type_id);
    for (const auto& a : autos) {
        std::vector<long> w(vals.size(), 0);
        for (size_t i = 0; i < vals.size(); ++i) {
            long s = 0;
            for (size_t j = 0; j < vals.size(); ++j) s += a[i][j] * vals[j];
            s %= local_orders[i];
            if (s < 0) s += local_orders[i];
            w[i] = s;
        }
        if (w < best) best = w;
    }
    return best;
}

// Invariant of one element under the structured action.
std::vector<long> element_invariant(const StructuredDisc& sd, const Row& t) {
    std::vector<long> inv;
    inv.push_back(sd.h_slot >= 0 ? t[sd.h_slot] : 0);
    inv.push_back(sd.q_scaled(t));
    inv.push_back(order_of_row(sd, t));
    // per-component canonicalized local values grouped by type
    std::vector<std::vector<long>> locals;
    for (const auto& c : sd.comps) {
        std::vector<long> vals, lorders;
        for (int s : c.slots) {
            vals.push_back(t[s]);
            lorders.push_back(sd.orders[s]);
        }
        auto canon = local_canonical(sd, c.type_id, vals, lorders);
        std::vector<long> entry;
        entry.push_back(c.type_id);
        for (long v : canon) entry.push_back(v);
        locals.push_back(std::move(entry));
    }
    std::sort(locals.begin(), locals.end());
    for (auto& l : locals) {
        inv.push_back(-1);
        for (long v : l) inv.push_back(v);
    }
    return inv;
}

std::vector<long> subgroup_invariant(const StructuredDisc& sd,
                                     const std::vector<Row>& elements) {
    std::vector<std::vector<long>> per_el;
    for (const auto& e : elements) per_el.push_back(element_invariant(sd, e));
    std::sort(per_el.begin(), per_el.end());
    std::vector<long> key;
    key.push_back(static_cast<long>(elements.size()));
    for (auto& v : per_el) {
        key.push_back(-7777);
        for (long x : v) key.push_back(x);
    }
    return key;
}

}  // namespace

namespace {

constexpr uint64_t kHashMul = 0x9e3779b97f4a7c15ull;

inline uint64_t mix(uint64_t h, uint64_t v) {
    h ^= v + kHashMul + (h << 6) + (h >> 2);
    return h * 1099511628211ull;
}

// exact final check: does some full assignment (already validated by hashes)
// really map h1 onto h2? guards against hash collisions.
bool exact_match(const StructuredDisc& sd, const std::vector<Row>& h1, const std::vector<Row>& h2,
                 const std::vector<size_t>& src_of, const std::vector<size_t>& auto_of) {
    size_t nel = h1.size();
    size_t ncomp = sd.comps.size();
    std::vector<Row> mapped(nel, Row(h1.empty() ? 0 : h1[0].size(), 0));
    for (size_t r = 0; r < nel; ++r) {
        if (sd.h_slot >= 0) mapped[r][static_cast<size_t>(sd.h_slot)] = h1[r][static_cast<size_t>(sd.h_slot)];
        for (size_t tc = 0; tc < ncomp; ++tc) {
            const auto& tslots = sd.comps[tc].slots;
            const auto& sslots = sd.comps[src_of[tc]].slots;
            const auto& a = sd.local_autos.at(sd.comps[tc].type_id)[auto_of[tc]];
            for (size_t i = 0; i < tslots.size(); ++i) {
                long v = 0;
                for (size_t j = 0; j < tslots.size(); ++j)
                    v += a[i][j] * h1[r][static_cast<size_t>(sslots[j])];
                long o = sd.orders[static_cast<size_t>(tslots[i])];
                v %= o;
                if (v < 0) v += o;
                mapped[r][static_cast<size_t>(tslots[i])] = v;
            }
        }
    }
    std::sort(mapped.begin(), mapped.end());
    std::vector<Row> sorted2 = h2;
    std::sort(sorted2.begin(), sorted2.end());
    return mapped == sorted2;
}

}  // namespace

bool structured_isomorphic(const StructuredDisc& sd, const std::vector<Row>& h1,
                           const std::vector<Row>& h2, const std::vector<Row>* extra1,
                           const std::vector<Row>* extra2) {
    if (h1.size() != h2.size()) return false;
    if ((extra1 == nullptr) != (extra2 == nullptr)) return false;
    if (extra1 && extra1->size() != extra2->size()) return false;
    size_t nel = h1.size();
    size_t nex = extra1 ? extra1->size() : 0;
    size_t ncomp = sd.comps.size();
    size_t nrows = nel + nex;  // extras appended after subgroup rows

    auto row_of = [&](size_t r) -> const Row& { return r < nel ? h1[r] : (*extra1)[r - nel]; };
    auto trow_of = [&](size_t r) -> const Row& { return r < nel ? h2[r] : (*extra2)[r - nel]; };

    // running hash state per row; depth d covers h-slot plus components 0..d-1
    std::vector<std::vector<uint64_t>> shash(ncomp + 1, std::vector<uint64_t>(nrows));
    std::vector<std::vector<uint64_t>> thash(ncomp + 1, std::vector<uint64_t>(nrows));
    for (size_t r = 0; r < nrows; ++r) {
        uint64_t h0 = r < nel ? 1 : 2;  // keep subgroup and extra rows separate
        uint64_t s0 = h0, t0 = h0;
        if (sd.h_slot >= 0) {
            s0 = mix(s0, static_cast<uint64_t>(row_of(r)[static_cast<size_t>(sd.h_slot)]));
            t0 = mix(t0, static_cast<uint64_t>(trow_of(r)[static_cast<size_t>(sd.h_slot)]));
        }
        shash[0][r] = s0;
        thash[0][r] = t0;
    }
    // precompute target hashes per depth (target columns in component order)
    for (size_t d = 0; d < ncomp; ++d) {
        const auto& tslots = sd.comps[d].slots;
        for (size_t r = 0; r < nrows; ++r) {
            uint64_t h = thash[d][r];
            for (int s : tslots) h = mix(h, static_cast<uint64_t>(trow_of(r)[static_cast<size_t>(s)]));
            thash[d + 1][r] = h;
        }
    }
    std::vector<std::vector<uint64_t>> tsorted(ncomp + 1);
    for (size_t d = 0; d <= ncomp; ++d) {
        tsorted[d] = thash[d];
        std::sort(tsorted[d].begin(), tsorted[d].end());
    }
    {
        std::vector<uint64_t> s0 = shash[0];
        std::sort(s0.begin(), s0.end());
        if (s0 != tsorted[0]) return false;
    }

    std::vector<bool> used(ncomp, false);
    std::vector<size_t> src_of(ncomp), auto_of(ncomp);
    std::vector<uint64_t> scratch(nrows);
    std::function<bool(size_t)> rec = [&](size_t depth) -> bool {
        if (depth == ncomp) {
            if (!exact_match(sd, h1, h2, src_of, auto_of)) return false;
            if (nex) {
                // redo exact check including extras by reusing the hash state:
                // hashes already matched at every depth; verify extras exactly
                std::vector<Row> m1, m2;
                for (size_t r = 0; r < nex; ++r) m1.push_back((*extra1)[r]);
                for (size_t r = 0; r < nex; ++r) m2.push_back((*extra2)[r]);
                // map m1 under the found assignment
                std::vector<Row> mapped(nex, Row(m1[0].size(), 0));
                for (size_t r = 0; r < nex; ++r) {
                    if (sd.h_slot >= 0)
                        mapped[r][static_cast<size_t>(sd.h_slot)] = m1[r][static_cast<size_t>(sd.h_slot)];
                    for (size_t tc = 0; tc < ncomp; ++tc) {
                        const auto& tslots = sd.comps[tc].slots;
                        const auto& sslots = sd.comps[src_of[tc]].slots;
                        const auto& a = sd.local_autos.at(sd.comps[tc].type_id)[auto_of[tc]];
                        for (size_t i = 0; i < tslots.size(); ++i) {
                            long v = 0;
                            for (size_t j = 0; j < tslots.size(); ++j)
                                v += a[i][j] * m1[r][static_cast<size_t>(sslots[j])];
                            long o = sd.orders[static_cast<size_t>(tslots[i])];
                            v %= o;
                            if (v < 0) v += o;
                            mapped[r][static_cast<size_t>(tslots[i])] = v;
                        }
                    }
                }
                std::sort(mapped.begin(), mapped.end());
                std::sort(m2.begin(), m2.end());
                if (mapped != m2) return false;
            }
            return true;
        }
        const auto& tc = sd.comps[depth];
        size_t tslots = tc.slots.size();
        const auto& autos = sd.local_autos.at(tc.type_id);
        for (size_t sc = 0; sc < ncomp; ++sc) {
            if (used[sc] || sd.comps[sc].type_id != tc.type_id) continue;
            for (size_t ai = 0; ai < autos.size(); ++ai) {
                const auto& a = autos[ai];
                for (size_t r = 0; r < nrows; ++r) {
                    uint64_t h = shash[depth][r];
                    const Row& row = row_of(r);
                    for (size_t i = 0; i < tslots; ++i) {
                        long v = 0;
                        for (size_t j = 0; j < tslots; ++j)
                            v += a[i][j] * row[static_cast<size_t>(sd.comps[sc].slots[j])];
                        long o = sd.orders[static_cast<size_t>(tc.slots[i])];
                        v %= o;
                        if (v < 0) v += o;
                        h = mix(h, static_cast<uint64_t>(v));
                    }
                    shash[depth + 1][r] = h;
                }
                scratch = shash[depth + 1];
                std::sort(scratch.begin(), scratch.end());
                if (scratch != tsorted[depth + 1]) continue;
                used[sc] = true;
                src_of[depth] = sc;
                auto_of[depth] = ai;
                if (rec(depth + 1)) return true;
                used[sc] = false;
            }
        }
        return false;
    };
    return rec(0);
}

namespace {

// Interned view of the isotropic elements: mixed-radix codes, global row
// storage, per-element W-invariant ids. Subgroups become sorted id vectors.
struct IsoUniverse {
    const StructuredDisc& sd;
    size_t k;
    std::vector<long> radix;
    long total = 1;
    std::vector<Row> rows;                    // rows[id] = tuple (id 0 = zero)
    std::unordered_map<long, int> id_of_code; // only isotropic elements
    std::vector<long> code_of_id;
    std::vector<int> inv_id;                  // per element, interned invariant
    std::vector<long> ord;                    // element order in A

    explicit IsoUniverse(const StructuredDisc& d) : sd(d), k(d.orders.size()) {
        radix.resize(k);
        for (size_t i = 0; i < k; ++i) {
            radix[i] = total;
            total *= sd.orders[i];
            if (total > (1L << 40)) throw budget_exhausted("discriminant group too large");
        }
        Row t(k, 0);
        std::map<std::vector<long>, int> inv_intern;
        std::function<void(size_t)> gen = [&](size_t i) {
            if (i == k) {
                if (sd.q_scaled(t) != 0) return;
                long code = 0;
                for (size_t j = 0; j < k; ++j) code += radix[j] * t[j];
                int id = static_cast<int>(rows.size());
                rows.push_back(t);
                id_of_code[code] = id;
                code_of_id.push_back(code);
                auto iv = element_invariant(sd, t);
                auto it = inv_intern.emplace(std::move(iv), static_cast<int>(inv_intern.size()));
                inv_id.push_back(it.first->second);
                ord.push_back(order_of_row(sd, t));
                return;
            }
            for (long v = 0; v < sd.orders[i]; ++v) {
                t[i] = v;
                gen(i + 1);
            }
            t[i] = 0;
        };
        gen(0);
    }

    // id of a + b, or -1 when the sum is not isotropic (cannot happen inside
    // valid closures; used as a guard)
    int add(int a, int b) const {
        long code = 0;
        for (size_t j = 0; j < k; ++j) {
            long v = rows[static_cast<size_t>(a)][j] + rows[static_cast<size_t>(b)][j];
            if (v >= sd.orders[j]) v -= sd.orders[j];
            code += radix[j] * v;
        }
        auto it = id_of_code.find(code);
        return it == id_of_code.end() ? -1 : it->second;
    }
};

}  // namespace

std::vector<SubgroupWitness> enumerate_isotropic_up_to_aut(const StructuredDisc& sd,
                                                           const StructuredEnumOptions& opt) {
    IsoUniverse u(sd);
    size_t niso = u.rows.size();

    struct Record {
        std::vector<int> elements;     // sorted element ids, 0 first
        std::vector<int> generators;   // element ids
        std::vector<int> inv;          // size + sorted invariant ids
        std::vector<uint64_t> strong;  // pairwise profile, computed lazily
        bool viable = false;
    };
    std::vector<Record> records;
    std::unordered_map<size_t, std::vector<size_t>> buckets;
    auto hash_key = [](const std::vector<int>& v) {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    };
    auto invariant_of = [&](const std::vector<int>& elements) {
        std::vector<int> inv;
        inv.reserve(elements.size() + 1);
        inv.push_back(static_cast<int>(elements.size()));
        for (int e : elements) inv.push_back(u.inv_id[static_cast<size_t>(e)]);
        std::sort(inv.begin() + 1, inv.end());
        return inv;
    };
    auto rows_of = [&](const std::vector<int>& elements) {
        std::vector<Row> rs;
        rs.reserve(elements.size());
        for (int e : elements) rs.push_back(u.rows[static_cast<size_t>(e)]);
        return rs;
    };
    // canonical hash of an element pair under the structured action
    auto pair_code = [&](int e, int f) -> uint64_t {
        const Row& re = u.rows[static_cast<size_t>(e)];
        const Row& rf = u.rows[static_cast<size_t>(f)];
        std::vector<uint64_t> per_comp;
        per_comp.reserve(sd.comps.size());
        std::vector<long> vals, best;
        for (const auto& c : sd.comps) {
            size_t ns = c.slots.size();
            const auto& autos = sd.local_autos.at(c.type_id);
            best.clear();
            for (const auto& a : autos) {
                vals.clear();
                for (size_t i = 0; i < ns; ++i) {
                    long v = 0;
                    for (size_t j = 0; j < ns; ++j) v += a[i][j] * re[static_cast<size_t>(c.slots[j])];
                    long o = sd.orders[static_cast<size_t>(c.slots[i])];
                    v %= o;
                    if (v < 0) v += o;
                    vals.push_back(v);
                }
                for (size_t i = 0; i < ns; ++i) {
                    long v = 0;
                    for (size_t j = 0; j < ns; ++j) v += a[i][j] * rf[static_cast<size_t>(c.slots[j])];
                    long o = sd.orders[static_cast<size_t>(c.slots[i])];
                    v %= o;
                    if (v < 0) v += o;
                    vals.push_back(v);
                }
                if (best.empty() || vals < best) best = vals;
            }
            uint64_t h = mix(0x51ull, static_cast<uint64_t>(c.type_id));
            for (long v : best) h = mix(h, static_cast<uint64_t>(v));
            per_comp.push_back(h);
        }
        std::sort(per_comp.begin(), per_comp.end());
        uint64_t h = 0x9eull;
        if (sd.h_slot >= 0) {
            h = mix(h, static_cast<uint64_t>(re[static_cast<size_t>(sd.h_slot)]));
            h = mix(h, static_cast<uint64_t>(rf[static_cast<size_t>(sd.h_slot)]));
        }
        for (uint64_t v : per_comp) h = mix(h, v);
        return h;
    };
    auto strong_of = [&](const std::vector<int>& els) {
        size_t m = els.size();
        std::vector<uint64_t> out(m);
        std::vector<uint64_t> prof(m);
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < m; ++j) prof[j] = pair_code(els[i], els[j]);
            std::sort(prof.begin(), prof.end());
            uint64_t h = mix(0x33ull, static_cast<uint64_t>(u.inv_id[static_cast<size_t>(els[i])]));
            for (uint64_t v : prof) h = mix(h, v);
            out[i] = h;
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto find_or_insert = [&](std::vector<int>&& elements,
                              std::vector<int>&& gens) -> std::pair<bool, size_t> {
        auto inv = invariant_of(elements);
        size_t hk = hash_key(inv);
        auto& vec = buckets[hk];
        std::vector<uint64_t> strong;
        bool strong_ready = false;
        for (size_t idx : vec) {
            if (records[idx].inv != inv) continue;
            if (!strong_ready) {
                strong = strong_of(elements);
                strong_ready = true;
            }
            if (records[idx].strong.empty()) records[idx].strong = strong_of(records[idx].elements);
            if (records[idx].strong != strong) continue;
            if (structured_isomorphic(sd, rows_of(elements), rows_of(records[idx].elements)))
                return {false, idx};
        }
        records.push_back({std::move(elements), std::move(gens), std::move(inv), std::move(strong), false});
        vec.push_back(records.size() - 1);
        return {true, records.size() - 1};
    };
    auto witness_of = [&](const Record& r) {
        SubgroupWitness w;
        w.elements = rows_of(r.elements);
        for (int g : r.generators) w.generators.push_back(u.rows[static_cast<size_t>(g)]);
        return w;
    };

    {
        auto [fresh, idx] = find_or_insert({0}, {});
        records[idx].viable = !opt.viable || opt.viable(witness_of(records[idx]));
    }
    std::vector<size_t> frontier = {0};
    size_t nodes = 0;
    std::vector<int> elems;
    while (!frontier.empty()) {
        std::vector<size_t> next;
        for (size_t hidx : frontier) {
            std::vector<int> base_elements = records[hidx].elements;
            std::vector<int> base_gens = records[hidx].generators;
            long base_size = static_cast<long>(base_elements.size());
            for (int z = 1; z < static_cast<int>(niso); ++z) {
                // orthogonality against generators
                bool ortho = true;
                for (int g : base_gens)
                    if (sd.b_scaled(u.rows[static_cast<size_t>(z)], u.rows[static_cast<size_t>(g)]) != 0) {
                        ortho = false;
                        break;
                    }
                if (!ortho) continue;
                if (std::binary_search(base_elements.begin(), base_elements.end(), z)) continue;
                long zord = u.ord[static_cast<size_t>(z)];
                if (base_size * base_size * 4 > u.total) continue;  // |H'|^2 <= |A| is impossible
                // closure {h + t z}
                elems.clear();
                bool ok = true;
                int acc = 0;  // t * z
                for (long t = 0; t < zord && ok; ++t) {
                    for (int e : base_elements) {
                        int s = u.add(e, acc);
                        if (s < 0) { ok = false; break; }  // non-isotropic sum: b(z,e) odd
                        elems.push_back(s);
                    }
                    if (t + 1 < zord) {
                        acc = u.add(acc, z);
                        if (acc < 0) { ok = false; break; }
                    }
                }
                if (!ok) continue;
                std::sort(elems.begin(), elems.end());
                elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
                if (static_cast<long>(elems.size()) * static_cast<long>(elems.size()) > u.total)
                    continue;
                ++nodes;
                if (opt.max_nodes && nodes > opt.max_nodes)
                    throw budget_exhausted("subgroup enumeration budget exceeded");
                std::vector<int> gens = base_gens;
                gens.push_back(z);
                auto [fresh, idx] = find_or_insert(std::vector<int>(elems), std::move(gens));
                if (!fresh) continue;
                records[idx].viable = !opt.viable || opt.viable(witness_of(records[idx]));
                if (records[idx].viable) next.push_back(idx);
            }
        }
        frontier = std::move(next);
    }
    std::vector<SubgroupWitness> out;
    for (auto& r : records)
        if (r.viable) out.push_back(witness_of(r));
    return out;
}

}  // namespace sextic
