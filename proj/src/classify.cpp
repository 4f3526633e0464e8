#include "sextic/classify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "sextic/errors.hpp"

namespace sextic {

namespace {

std::mutex setting_mutex;
std::map<ADEType, std::shared_ptr<const TypeSetting>> setting_cache;

// tuple coefficients (over the component's slots) of a local dual vector,
// found by brute force over coefficient combinations.
std::vector<long> local_class_of(const IMat& comp_gram, const QMat& comp_ginv,
                                 const std::vector<IVec>& slot_duals,
                                 const std::vector<long>& slot_orders, const IVec& dual) {
    int rank = comp_gram.rows;
    size_t ns = slot_duals.size();
    std::vector<long> t(ns, 0);
    while (true) {
        // test: dual - sum t_s slot_duals[s] in Gram * Z^rank
        QVec diff(rank);
        for (int i = 0; i < rank; ++i) {
            Int v = dual[i];
            for (size_t s = 0; s < ns; ++s) v -= Int(t[s]) * slot_duals[s][i];
            diff[static_cast<size_t>(i)] = Rat(v);
        }
        QVec primal = mat_vec(comp_ginv, diff);
        bool integral = std::all_of(primal.begin(), primal.end(), is_integer);
        if (integral) return t;
        // next tuple
        size_t s = 0;
        while (s < ns) {
            if (++t[s] < slot_orders[s]) break;
            t[s] = 0;
            ++s;
        }
        if (s == ns) throw consistency_error("local_class_of: class not found");
    }
}

}  // namespace

std::vector<long> TypeSetting::tuple_of_dual(const IVec& dual) const {
    std::vector<long> t(disc.orders.size(), 0);
    for (int c = 0; c < ncomps(); ++c) {
        const auto& slots = disc.comps[static_cast<size_t>(c)].slots;
        if (slots.empty()) continue;
        int off = comp_offsets[static_cast<size_t>(c)];
        int rank = comp(c).n;
        for (int i = 0; i < rank; ++i) {
            Int v = dual[static_cast<size_t>(off + i)];
            if (v == 0) continue;
            const auto& coeffs = dual_class_coeffs[static_cast<size_t>(c)][static_cast<size_t>(i)];
            for (size_t s = 0; s < slots.size(); ++s) {
                long o = disc.orders[static_cast<size_t>(slots[s])];
                long add = static_cast<long>(Int((v % o + o) % o).get_si());
                t[static_cast<size_t>(slots[s])] =
                    (t[static_cast<size_t>(slots[s])] + coeffs[s] * add) % o;
            }
        }
    }
    if (disc.h_slot >= 0) {
        Int v = dual[static_cast<size_t>(n - 1)];
        long o = disc.orders[static_cast<size_t>(disc.h_slot)];
        t[static_cast<size_t>(disc.h_slot)] = static_cast<long>(Int((v % o + o) % o).get_si());
    }
    return t;
}

IVec TypeSetting::dual_of_tuple(const std::vector<long>& t) const {
    IVec d(static_cast<size_t>(n), Int(0));
    for (size_t s = 0; s < t.size(); ++s) {
        if (t[s] == 0) continue;
        for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] += Int(t[s]) * slot_gens_dual[s][static_cast<size_t>(i)];
    }
    return d;
}

IVec TypeSetting::apply_iota(const IVec& dual) const {
    IVec out(dual.size());
    for (size_t i = 0; i < dual.size(); ++i) out[i] = dual[iota[i]];
    return out;
}

std::shared_ptr<const TypeSetting> make_setting(const ADEType& r) {
    {
        std::lock_guard<std::mutex> lock(setting_mutex);
        auto it = setting_cache.find(r);
        if (it != setting_cache.end()) return it->second;
    }
    auto s = std::make_shared<TypeSetting>();
    s->r = r;
    s->mu = r.mu();
    s->n = s->mu + 1;
    if (s->mu > 0) s->e_lat = EvenLattice(ade_gram(r));
    IMat sg(s->n, s->n);
    for (int i = 0; i < s->mu; ++i)
        for (int j = 0; j < s->mu; ++j) sg.at(i, j) = s->mu > 0 ? s->e_lat.gram.at(i, j) : Int(0);
    sg.at(s->n - 1, s->n - 1) = 2;
    std::vector<std::string> labels;
    {
        int off = 0;
        for (const auto& c : r.components) {
            s->comp_offsets.push_back(off);
            for (int i = 1; i <= c.n; ++i) labels.push_back(c.name() + ".e" + std::to_string(i));
            off += c.n;
        }
        labels.push_back("h");
    }
    s->sigma = EvenLattice(sg, labels);
    auto invE = ade_involution(r);
    s->iota.resize(static_cast<size_t>(s->n));
    for (int i = 0; i < s->mu; ++i) s->iota[static_cast<size_t>(i)] = invE[static_cast<size_t>(i)];
    s->iota[static_cast<size_t>(s->n - 1)] = s->n - 1;

    // type ids for interchangeable components
    std::vector<ADEComponent> distinct;
    auto type_id_of = [&](const ADEComponent& c) {
        for (size_t i = 0; i < distinct.size(); ++i)
            if (distinct[i] == c) return static_cast<int>(i);
        distinct.push_back(c);
        return static_cast<int>(distinct.size() - 1);
    };

    // slots per component
    long lcm = 1;
    for (int c = 0; c < s->ncomps(); ++c) {
        const ADEComponent& comp = s->comp(c);
        int off = s->comp_offsets[static_cast<size_t>(c)];
        std::vector<int> gen_local;  // local 1-based indices of slot generators
        std::vector<long> orders;
        switch (comp.family) {
            case ADEFamily::A:
                gen_local = {comp.n};
                orders = {comp.n + 1};
                break;
            case ADEFamily::D:
                if (comp.n % 2 == 0) { gen_local = {1, 2}; orders = {2, 2}; }
                else { gen_local = {1}; orders = {4}; }
                break;
            case ADEFamily::E:
                if (comp.n == 6) { gen_local = {6}; orders = {3}; }
                else if (comp.n == 7) { gen_local = {7}; orders = {2}; }
                break;
        }
        StructuredDisc::Component sc;
        sc.type_id = type_id_of(comp);
        for (size_t g = 0; g < gen_local.size(); ++g) {
            sc.slots.push_back(static_cast<int>(s->disc.orders.size()));
            s->disc.orders.push_back(orders[g]);
            IVec gd(static_cast<size_t>(s->n), Int(0));
            gd[static_cast<size_t>(off + gen_local[g] - 1)] = 1;
            s->slot_gens_dual.push_back(std::move(gd));
            lcm = lcm / std::__gcd(lcm, orders[g]) * orders[g];
        }
        s->disc.comps.push_back(std::move(sc));
    }
    s->disc.h_slot = static_cast<int>(s->disc.orders.size());
    s->disc.orders.push_back(2);
    lcm = lcm / std::__gcd(lcm, 2L) * 2;
    {
        IVec gd(static_cast<size_t>(s->n), Int(0));
        gd[static_cast<size_t>(s->n - 1)] = 1;
        s->slot_gens_dual.push_back(std::move(gd));
    }
    s->disc.lcm_orders = lcm;

    // q and b tables on slots
    size_t k = s->disc.orders.size();
    s->disc.q_num.assign(k, 0);
    s->disc.b_num.assign(k, std::vector<long>(k, 0));
    const QMat& ginv = s->sigma.gram_inverse();
    auto pair_dual_slots = [&](size_t a, size_t b) {
        Rat v(0);
        for (int i = 0; i < s->n; ++i) {
            if (s->slot_gens_dual[a][static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < s->n; ++j)
                if (s->slot_gens_dual[b][static_cast<size_t>(j)] != 0)
                    v += Rat(s->slot_gens_dual[a][static_cast<size_t>(i)] *
                             s->slot_gens_dual[b][static_cast<size_t>(j)]) *
                         ginv.at(i, j);
        }
        return v;
    };
    for (size_t a = 0; a < k; ++a) {
        Rat q = mod_interval(pair_dual_slots(a, a), Rat(2));
        Rat scaled = q * Rat(2 * lcm);
        if (!is_integer(scaled)) throw consistency_error("make_setting: q scaling");
        s->disc.q_num[a] = static_cast<long>(scaled.get_num().get_si());
        for (size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            Rat bv = mod_interval(pair_dual_slots(a, b), Rat(1));
            Rat bs = bv * Rat(lcm);
            if (!is_integer(bs)) throw consistency_error("make_setting: b scaling");
            s->disc.b_num[a][b] = static_cast<long>(bs.get_num().get_si());
        }
    }

    // FiniteQuadraticForm view of the same data
    s->sigma_disc.orders.assign(s->disc.orders.begin(), s->disc.orders.end());
    {
        IVec ords;
        for (long o : s->disc.orders) ords.push_back(Int(o));
        s->sigma_disc.orders = ords;
    }
    s->sigma_disc.gens_dual = s->slot_gens_dual;
    s->sigma_disc.qvals.resize(k);
    s->sigma_disc.bvals = QMat(static_cast<int>(k), static_cast<int>(k));
    for (size_t a = 0; a < k; ++a) {
        s->sigma_disc.qvals[a] = mod_interval(pair_dual_slots(a, a), Rat(2));
        for (size_t b = 0; b < k; ++b)
            s->sigma_disc.bvals.at(static_cast<int>(a), static_cast<int>(b)) =
                mod_interval(pair_dual_slots(a, b), Rat(1));
    }
    {
        Int total(1);
        for (const auto& o : s->sigma_disc.orders) total *= o;
        Int d = det(s->sigma.gram);
        if (total != (d < 0 ? -d : d))
            throw consistency_error("make_setting: discriminant group order mismatch");
    }

    // dual class coefficients per component basis vector
    for (int c = 0; c < s->ncomps(); ++c) {
        const ADEComponent& comp = s->comp(c);
        IMat cg = component_gram(comp);
        QMat cginv = inverse(cg);
        const auto& slots = s->disc.comps[static_cast<size_t>(c)].slots;
        std::vector<IVec> slot_duals;  // local dual coords of slot generators
        std::vector<long> slot_orders;
        int off = s->comp_offsets[static_cast<size_t>(c)];
        for (int sl : slots) {
            IVec loc(static_cast<size_t>(comp.n), Int(0));
            for (int i = 0; i < comp.n; ++i)
                loc[static_cast<size_t>(i)] = s->slot_gens_dual[static_cast<size_t>(sl)][static_cast<size_t>(off + i)];
            slot_duals.push_back(std::move(loc));
            slot_orders.push_back(s->disc.orders[static_cast<size_t>(sl)]);
        }
        std::vector<std::vector<long>> coeffs;
        for (int i = 0; i < comp.n; ++i) {
            IVec unit(static_cast<size_t>(comp.n), Int(0));
            unit[static_cast<size_t>(i)] = 1;
            coeffs.push_back(local_class_of(cg, cginv, slot_duals, slot_orders, unit));
        }
        s->dual_class_coeffs.push_back(std::move(coeffs));
    }

    // local automorphism groups per type id
    for (int c = 0; c < s->ncomps(); ++c) {
        int tid = s->disc.comps[static_cast<size_t>(c)].type_id;
        if (s->disc.local_autos.count(tid)) continue;
        const ADEComponent& comp = s->comp(c);
        const auto& slots = s->disc.comps[static_cast<size_t>(c)].slots;
        size_t ns = slots.size();
        std::vector<long> lorders;
        for (int sl : slots) lorders.push_back(s->disc.orders[static_cast<size_t>(sl)]);
        std::vector<std::vector<std::vector<long>>> group;
        std::vector<std::vector<long>> ident(ns, std::vector<long>(ns, 0));
        for (size_t i = 0; i < ns; ++i) ident[i][i] = 1;
        group.push_back(ident);
        // generator matrices from diagram automorphisms
        std::vector<std::vector<std::vector<long>>> gens_m;
        for (const auto& perm : component_diagram_autos(comp)) {
            std::vector<std::vector<long>> m(ns, std::vector<long>(ns, 0));
            for (size_t sidx = 0; sidx < ns; ++sidx) {
                // image of slot generator sidx: permuted dual basis vector
                // slot gen sidx corresponds to e_{g} with local index g
                int local_index = -1;
                int off = s->comp_offsets[static_cast<size_t>(c)];
                for (int i = 0; i < comp.n; ++i)
                    if (s->slot_gens_dual[static_cast<size_t>(slots[sidx])][static_cast<size_t>(off + i)] == 1)
                        local_index = i;
                int image_index = perm[static_cast<size_t>(local_index)];
                const auto& coeff = s->dual_class_coeffs[static_cast<size_t>(c)][static_cast<size_t>(image_index)];
                for (size_t i = 0; i < ns; ++i) m[i][sidx] = coeff[i];
            }
            gens_m.push_back(std::move(m));
        }
        // closure
        auto mul = [&](const std::vector<std::vector<long>>& a, const std::vector<std::vector<long>>& b) {
            std::vector<std::vector<long>> c2(ns, std::vector<long>(ns, 0));
            for (size_t i = 0; i < ns; ++i)
                for (size_t j = 0; j < ns; ++j) {
                    long v = 0;
                    for (size_t t = 0; t < ns; ++t) v += a[i][t] * b[t][j];
                    v %= lorders[i];
                    if (v < 0) v += lorders[i];
                    c2[i][j] = v;
                }
            return c2;
        };
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t gi = 0; gi < group.size(); ++gi)
                for (const auto& g : gens_m) {
                    auto prod = mul(g, group[gi]);
                    if (std::find(group.begin(), group.end(), prod) == group.end()) {
                        group.push_back(prod);
                        grew = true;
                    }
                }
        }
        s->disc.local_autos[tid] = std::move(group);
    }

    std::shared_ptr<const TypeSetting> out = s;
    std::lock_guard<std::mutex> lock(setting_mutex);
    setting_cache[r] = out;
    return out;
}

bool v_smooth(const TypeSetting& s, const IVec& dual) {
    for (int c = 0; c < s.ncomps(); ++c) {
        int off = s.comp_offsets[static_cast<size_t>(c)];
        int rank = s.comp(c).n;
        int nonzero = 0;
        for (int i = 0; i < rank; ++i) {
            const Int& v = dual[static_cast<size_t>(off + i)];
            if (v == 0) continue;
            if (v != 1) return false;
            ++nonzero;
        }
        if (nonzero > 1) return false;
    }
    return true;
}

Int class_order(const TypeSetting& s, const IVec& dual) {
    // order of x mod Sigma: lcm of denominators of the primal coordinates
    QVec d(dual.size());
    for (size_t i = 0; i < dual.size(); ++i) d[i] = Rat(dual[i]);
    QVec primal = mat_vec(s.sigma.gram_inverse(), d);
    Int o(1);
    for (const auto& q : primal) mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), q.get_den().get_mpz_t());
    return o;
}

// ---------------------------------------------------------------------------
// Per-component coset data, memoized globally.

namespace {

struct CompKey {
    ADEComponent comp;
    std::vector<long> cls;
    bool operator<(const CompKey& o) const {
        if (!(comp == o.comp)) return comp < o.comp;
        return cls < o.cls;
    }
};

std::mutex memo_mutex;
// achievable norms >= -2 of coset vectors (nonzero classes): distinct values
std::map<CompKey, std::vector<Rat>> norm_memo;
// v-smooth options: local dual index (0-based) and its norm, for e_i^dual with
// the given class; plus whether 0 is allowed (class 0)
std::map<CompKey, std::vector<std::pair<int, Rat>>> vsmooth_memo;
// coset vectors with norm >= -9/2 and all local dual coords >= 0, as
// (local dual coords, norm)
std::map<CompKey, std::vector<std::pair<IVec, Rat>>> nef_memo;

QVec local_class_rep_primal(const TypeSetting& s, int c, const std::vector<long>& cls) {
    const ADEComponent& comp = s.comp(c);
    const auto& slots = s.disc.comps[static_cast<size_t>(c)].slots;
    int off = s.comp_offsets[static_cast<size_t>(c)];
    QVec dual(static_cast<size_t>(comp.n), Rat(0));
    for (size_t sidx = 0; sidx < slots.size(); ++sidx) {
        if (cls[sidx] == 0) continue;
        for (int i = 0; i < comp.n; ++i)
            dual[static_cast<size_t>(i)] +=
                Rat(cls[sidx]) * Rat(s.slot_gens_dual[static_cast<size_t>(slots[sidx])][static_cast<size_t>(off + i)]);
    }
    IMat cg = component_gram(comp);
    QMat cginv = inverse(cg);
    return mat_vec(cginv, dual);
}

const std::vector<Rat>& achievable_norms(const TypeSetting& s, int c, const std::vector<long>& cls) {
    CompKey key{s.comp(c), cls};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = norm_memo.find(key);
        if (it != norm_memo.end()) return it->second;
    }
    QVec rep = local_class_rep_primal(s, c, cls);
    IMat cg = component_gram(s.comp(c));
    auto vecs = vectors_in_coset_norm_range(cg, rep, Rat(-2), Rat(0));
    std::set<Rat> norms;
    for (auto& [v, nm] : vecs)
        if (nm != 0) norms.insert(nm);
    std::vector<Rat> out(norms.begin(), norms.end());
    std::lock_guard<std::mutex> lock(memo_mutex);
    return norm_memo.emplace(key, std::move(out)).first->second;
}

const std::vector<std::pair<int, Rat>>& vsmooth_options(const TypeSetting& s, int c,
                                                        const std::vector<long>& cls) {
    CompKey key{s.comp(c), cls};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = vsmooth_memo.find(key);
        if (it != vsmooth_memo.end()) return it->second;
    }
    const ADEComponent& comp = s.comp(c);
    IMat cg = component_gram(comp);
    QMat cginv = inverse(cg);
    std::vector<std::pair<int, Rat>> opts;
    for (int i = 0; i < comp.n; ++i) {
        // class of e_i^dual must equal cls
        const auto& coeff = s.dual_class_coeffs[static_cast<size_t>(c)][static_cast<size_t>(i)];
        const auto& slots = s.disc.comps[static_cast<size_t>(c)].slots;
        bool match = true;
        for (size_t sidx = 0; sidx < slots.size(); ++sidx) {
            long o = s.disc.orders[static_cast<size_t>(slots[sidx])];
            if (((coeff[sidx] % o) + o) % o != ((cls[sidx] % o) + o) % o) { match = false; break; }
        }
        if (match) opts.emplace_back(i, cginv.at(i, i));
    }
    std::lock_guard<std::mutex> lock(memo_mutex);
    return vsmooth_memo.emplace(key, std::move(opts)).first->second;
}

const std::vector<std::pair<IVec, Rat>>& nef_options(const TypeSetting& s, int c,
                                                     const std::vector<long>& cls) {
    CompKey key{s.comp(c), cls};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = nef_memo.find(key);
        if (it != nef_memo.end()) return it->second;
    }
    const ADEComponent& comp = s.comp(c);
    IMat cg = component_gram(comp);
    QVec rep = local_class_rep_primal(s, c, cls);
    auto vecs = vectors_in_coset_norm_range(cg, rep, make_rat(-9, 2), Rat(0));
    std::vector<std::pair<IVec, Rat>> out;
    for (auto& [v, nm] : vecs) {
        // local dual coords = G v must be all >= 0 (and integral)
        bool ok = true;
        IVec dual(static_cast<size_t>(comp.n), Int(0));
        for (int i = 0; i < comp.n && ok; ++i) {
            Rat d(0);
            for (int j = 0; j < comp.n; ++j) d += Rat(cg.at(i, j)) * v[static_cast<size_t>(j)];
            if (!is_integer(d) || d < 0) ok = false;
            else dual[static_cast<size_t>(i)] = d.get_num();
        }
        if (ok) out.emplace_back(std::move(dual), nm);
    }
    std::lock_guard<std::mutex> lock(memo_mutex);
    return nef_memo.emplace(key, std::move(out)).first->second;
}

// subset-sum over support components: can local norms sum exactly to target?
bool support_sum_exists(const TypeSetting& s, const std::vector<std::vector<long>>& classes_per_comp,
                        const Rat& target) {
    std::vector<const std::vector<Rat>*> lists;
    for (int c = 0; c < s.ncomps(); ++c) {
        bool zero = std::all_of(classes_per_comp[static_cast<size_t>(c)].begin(),
                                classes_per_comp[static_cast<size_t>(c)].end(),
                                [](long v) { return v == 0; });
        if (zero) continue;
        const auto& norms = achievable_norms(s, c, classes_per_comp[static_cast<size_t>(c)]);
        if (norms.empty()) return false;  // this component cannot contribute >= -2
        lists.push_back(&norms);
    }
    if (lists.empty()) return target == 0;
    // bounds
    std::vector<Rat> max_suffix(lists.size() + 1, Rat(0)), min_suffix(lists.size() + 1, Rat(0));
    for (size_t i = lists.size(); i-- > 0;) {
        max_suffix[i] = max_suffix[i + 1] + lists[i]->back();
        min_suffix[i] = min_suffix[i + 1] + lists[i]->front();
    }
    std::function<bool(size_t, const Rat&)> rec = [&](size_t i, const Rat& rem) -> bool {
        if (i == lists.size()) return rem == 0;
        if (rem < min_suffix[i] || rem > max_suffix[i]) return false;
        for (const Rat& v : *lists[i])
            if (rec(i + 1, rem - v)) return true;
        return false;
    };
    return rec(0, target);
}

std::vector<std::vector<long>> split_tuple(const TypeSetting& s, const std::vector<long>& t) {
    std::vector<std::vector<long>> per(static_cast<size_t>(s.ncomps()));
    for (int c = 0; c < s.ncomps(); ++c)
        for (int sl : s.disc.comps[static_cast<size_t>(c)].slots)
            per[static_cast<size_t>(c)].push_back(t[static_cast<size_t>(sl)]);
    return per;
}

}  // namespace

// ---------------------------------------------------------------------------
// Class-set enumeration.

namespace {

// All v-smooth x with given glue class (tuple), h-pairing value, and E-part
// norm sum; returns dual coordinate vectors.
std::vector<IVec> vsmooth_class_vectors(const TypeSetting& s, const std::vector<long>& tuple,
                                        int h_pairing, const Rat& e_norm) {
    auto per = split_tuple(s, tuple);
    std::vector<const std::vector<std::pair<int, Rat>>*> opts;
    std::vector<bool> zero_class(static_cast<size_t>(s.ncomps()));
    for (int c = 0; c < s.ncomps(); ++c) {
        zero_class[static_cast<size_t>(c)] =
            std::all_of(per[static_cast<size_t>(c)].begin(), per[static_cast<size_t>(c)].end(),
                        [](long v) { return v == 0; });
        opts.push_back(&vsmooth_options(s, c, per[static_cast<size_t>(c)]));
    }
    // suffix bounds: max contribution is 0 for zero classes (choose 0), else
    // max over options; min = min over options (or 0 / -inf style).
    int nc = s.ncomps();
    std::vector<Rat> max_suffix(static_cast<size_t>(nc + 1), Rat(0));
    std::vector<Rat> min_suffix(static_cast<size_t>(nc + 1), Rat(0));
    std::vector<IVec> out;
    for (int c = nc; c-- > 0;) {
        Rat mx(-1000), mn(1000);
        if (zero_class[static_cast<size_t>(c)]) mx = 0, mn = 0;
        for (const auto& [i, nrm] : *opts[static_cast<size_t>(c)]) {
            if (nrm > mx) mx = nrm;
            if (nrm < mn) mn = nrm;
        }
        if (!zero_class[static_cast<size_t>(c)] && opts[static_cast<size_t>(c)]->empty()) return out;
        max_suffix[static_cast<size_t>(c)] = max_suffix[static_cast<size_t>(c) + 1] + mx;
        min_suffix[static_cast<size_t>(c)] = min_suffix[static_cast<size_t>(c) + 1] + mn;
    }
    IVec dual(static_cast<size_t>(s.n), Int(0));
    dual[static_cast<size_t>(s.n - 1)] = h_pairing;
    std::function<void(int, const Rat&)> rec = [&](int c, const Rat& rem) {
        if (c == nc) {
            if (rem == 0) out.push_back(dual);
            return;
        }
        if (rem < min_suffix[static_cast<size_t>(c)] || rem > max_suffix[static_cast<size_t>(c)]) return;
        int off = s.comp_offsets[static_cast<size_t>(c)];
        if (zero_class[static_cast<size_t>(c)]) rec(c + 1, rem);
        for (const auto& [i, nrm] : *opts[static_cast<size_t>(c)]) {
            dual[static_cast<size_t>(off + i)] = 1;
            rec(c + 1, rem - nrm);
            dual[static_cast<size_t>(off + i)] = 0;
        }
    };
    rec(0, e_norm);
    std::sort(out.begin(), out.end());
    return out;
}

// All x with glue class tuple, (x,h)=3, x^2=0, x nonnegative against E.
std::vector<IVec> cubic_class_vectors(const TypeSetting& s, const std::vector<long>& tuple) {
    auto per = split_tuple(s, tuple);
    std::vector<const std::vector<std::pair<IVec, Rat>>*> opts;
    for (int c = 0; c < s.ncomps(); ++c) opts.push_back(&nef_options(s, c, per[static_cast<size_t>(c)]));
    int nc = s.ncomps();
    std::vector<Rat> max_suffix(static_cast<size_t>(nc + 1), Rat(0));
    std::vector<Rat> min_suffix(static_cast<size_t>(nc + 1), Rat(0));
    std::vector<IVec> out;
    for (int c = nc; c-- > 0;) {
        if (opts[static_cast<size_t>(c)]->empty()) return out;
        Rat mx(-1000), mn(1000);
        for (const auto& [v, nrm] : *opts[static_cast<size_t>(c)]) {
            if (nrm > mx) mx = nrm;
            if (nrm < mn) mn = nrm;
        }
        max_suffix[static_cast<size_t>(c)] = max_suffix[static_cast<size_t>(c) + 1] + mx;
        min_suffix[static_cast<size_t>(c)] = min_suffix[static_cast<size_t>(c) + 1] + mn;
    }
    IVec dual(static_cast<size_t>(s.n), Int(0));
    dual[static_cast<size_t>(s.n - 1)] = 3;
    Rat target = make_rat(-9, 2);
    std::function<void(int, const Rat&)> rec = [&](int c, const Rat& rem) {
        if (c == nc) {
            if (rem == 0) out.push_back(dual);
            return;
        }
        if (rem < min_suffix[static_cast<size_t>(c)] || rem > max_suffix[static_cast<size_t>(c)]) return;
        int off = s.comp_offsets[static_cast<size_t>(c)];
        int rank = s.comp(c).n;
        for (const auto& [dv, nrm] : *opts[static_cast<size_t>(c)]) {
            for (int i = 0; i < rank; ++i) dual[static_cast<size_t>(off + i)] = dv[static_cast<size_t>(i)];
            rec(c + 1, rem - nrm);
        }
        for (int i = 0; i < rank; ++i) dual[static_cast<size_t>(off + i)] = 0;
    };
    rec(0, target);
    std::sort(out.begin(), out.end());
    return out;
}

Rat pair_dual_vec(const TypeSetting& s, const IVec& a, const IVec& b) {
    const QMat& ginv = s.sigma.gram_inverse();
    Rat v(0);
    for (int i = 0; i < s.n; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < s.n; ++j)
            if (b[static_cast<size_t>(j)] != 0 && ginv.at(i, j) != 0)
                v += Rat(a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) * ginv.at(i, j);
    }
    return v;
}

// is (x - l1 - l2) a nonnegative integer combination of E?
bool difference_in_root_monoid(const TypeSetting& s, const IVec& x, const IVec& l1, const IVec& l2) {
    QVec d(static_cast<size_t>(s.n));
    for (int i = 0; i < s.n; ++i)
        d[static_cast<size_t>(i)] = Rat(x[static_cast<size_t>(i)] - l1[static_cast<size_t>(i)] - l2[static_cast<size_t>(i)]);
    if (d[static_cast<size_t>(s.n - 1)] != 0) return false;
    QVec primal = mat_vec(s.sigma.gram_inverse(), d);
    for (int i = 0; i < s.mu; ++i) {
        const Rat& c = primal[static_cast<size_t>(i)];
        if (!is_integer(c) || c < 0) return false;
    }
    return true;
}

std::string fingerprint_of(const TypeSetting& s, const std::vector<int>& degs,
                           const std::vector<std::pair<int, IVec>>& rows);

}  // namespace

namespace {

// Urabe-style vector conditions on the glue classes, shared by the
// enumeration prune and the public builder.
bool passes_vector_conditions(const TypeSetting& s, const std::vector<std::vector<long>>& tuples) {
    for (const auto& el : tuples) {
        bool zero = std::all_of(el.begin(), el.end(), [](long v) { return v == 0; });
        if (zero) continue;
        auto per = split_tuple(s, el);
        bool hbit = el[static_cast<size_t>(s.disc.h_slot)] == 1;
        if (hbit) {
            if (support_sum_exists(s, per, make_rat(-1, 2))) return false;
        } else {
            if (support_sum_exists(s, per, Rat(-2))) return false;
        }
    }
    return true;
}

LatticeType build_core(std::shared_ptr<const TypeSetting> sp, const std::vector<IVec>& glue_gens) {
    const TypeSetting& s = *sp;
    LatticeType t;
    t.r = s.r;
    t.setting = sp;
    t.glue_gens = glue_gens;
    IVec offender;
    auto sub = make_isotropic_subgroup(s.sigma_disc, glue_gens, &offender);
    if (!sub) {
        std::string msg = "glue subgroup not isotropic; offending class (";
        for (size_t i = 0; i < offender.size(); ++i)
            msg += (i ? "," : "") + offender[i].get_str();
        msg += ") has q = " + rat_to_string(s.sigma_disc.q_of(offender));
        throw domain_error(msg);
    }
    for (const auto& e : sub->elements) {
        std::vector<long> tl;
        for (const auto& v : e) tl.push_back(static_cast<long>(v.get_si()));
        t.glue_tuples.push_back(std::move(tl));
    }
    auto ol = overlattice(s.sigma, s.sigma_disc, *sub);
    t.lambda = ol.in_dual;
    t.lambda_gram = ol.abstract;
    t.g_structure = sub->structure;
    // involution stability
    for (const auto& g : glue_gens) {
        IVec gd = s.dual_of_tuple([&] {
            std::vector<long> tl;
            for (const auto& v : g) tl.push_back(static_cast<long>(v.get_si()));
            return tl;
        }());
        QVec q(gd.size());
        IVec gi = s.apply_iota(gd);
        for (size_t i = 0; i < gd.size(); ++i) q[i] = Rat(gi[i]);
        if (!t.lambda.contains(q)) throw consistency_error("build_core: involution does not preserve the overlattice");
    }
    return t;
}

void finalize_lattice_type(LatticeType& t) {
    const TypeSetting& s = *t.setting;
    // class sets
    auto& sets = t.sets;
    for (const auto& tuple : t.glue_tuples) {
        bool hbit = s.disc.h_slot >= 0 && tuple[static_cast<size_t>(s.disc.h_slot)] == 1;
        bool zero = std::all_of(tuple.begin(), tuple.end(), [](long v) { return v == 0; });
        if (hbit) {
            for (auto& x : vsmooth_class_vectors(s, tuple, 1, make_rat(-5, 2))) {
                if (s.apply_iota(x) == x) sets.line_b.push_back(x);
                else sets.line_l.push_back(x);
            }
        } else if (!zero) {
            for (auto& x : vsmooth_class_vectors(s, tuple, 2, Rat(-4))) {
                // conic candidates (class nonzero => x not in Sigma)
                sets.conic_b.push_back(x);  // provisional; split after pruning
            }
        }
    }
    // prune conics dominated by line pairs, then split by involution
    {
        std::vector<IVec> lines;
        lines.insert(lines.end(), sets.line_b.begin(), sets.line_b.end());
        lines.insert(lines.end(), sets.line_l.begin(), sets.line_l.end());
        std::vector<IVec> kept;
        for (const auto& x : sets.conic_b) {
            bool dominated = false;
            for (size_t a = 0; a < lines.size() && !dominated; ++a)
                for (size_t b = a; b < lines.size() && !dominated; ++b)
                    if (difference_in_root_monoid(s, x, lines[a], lines[b])) dominated = true;
            if (!dominated) kept.push_back(x);
        }
        sets.conic_b.clear();
        for (auto& x : kept) {
            if (s.apply_iota(x) == x) sets.conic_b.push_back(x);
            else sets.conic_l.push_back(x);
        }
    }
    // cubics
    {
        std::vector<IVec> lines;
        lines.insert(lines.end(), sets.line_b.begin(), sets.line_b.end());
        lines.insert(lines.end(), sets.line_l.begin(), sets.line_l.end());
        for (const auto& tuple : t.glue_tuples) {
            bool hbit = s.disc.h_slot >= 0 && tuple[static_cast<size_t>(s.disc.h_slot)] == 1;
            if (!hbit) continue;
            for (auto& x : cubic_class_vectors(s, tuple)) {
                bool nef = true;
                for (const auto& l : lines)
                    if (pair_dual_vec(s, x, l) < 0) { nef = false; break; }
                if (!nef) continue;
                if (s.apply_iota(x) == x) sets.cubic_b.push_back(x);
                else sets.cubic_l.push_back(x);
            }
        }
    }
    for (auto* v : {&sets.line_b, &sets.line_l, &sets.conic_b, &sets.conic_l, &sets.cubic_b, &sets.cubic_l})
        std::sort(v->begin(), v->end());

    // groups G, Theta, F and the generation identities
    auto dual_to_qvec = [](const IVec& v) {
        QVec q(v.size());
        for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
        return q;
    };
    std::vector<QVec> sigma_gens;
    for (int j = 0; j < s.n; ++j) {
        QVec col(static_cast<size_t>(s.n));
        for (int i = 0; i < s.n; ++i) col[static_cast<size_t>(i)] = Rat(s.sigma.gram.at(i, j));
        sigma_gens.push_back(std::move(col));
    }
    Sublattice sigma_sub = Sublattice::from_generators(s.n, sigma_gens);
    std::vector<QVec> theta_gens = sigma_gens;
    if (!sets.line_b.empty() || !sets.conic_b.empty()) {
        for (const auto& x : sets.line_b) theta_gens.push_back(dual_to_qvec(x));
        for (const auto& x : sets.conic_b) theta_gens.push_back(dual_to_qvec(x));
    } else {
        for (const auto& x : sets.cubic_b) theta_gens.push_back(dual_to_qvec(x));
    }
    Sublattice theta = Sublattice::from_generators(s.n, theta_gens);
    IVec f_structure = quotient_structure(t.lambda, theta);

    {
        // consistency: F generated by lift classes (Computation rules)
        auto span_with = [&](std::initializer_list<const std::vector<IVec>*> extra) {
            std::vector<QVec> gens = theta_gens;
            for (const auto* se : extra)
                for (const auto& x : *se) gens.push_back(dual_to_qvec(x));
            return Sublattice::from_generators(s.n, gens);
        };
        bool has_lift12 = !sets.line_l.empty() || !sets.conic_l.empty();
        if (has_lift12) {
            if (f_structure.empty())
                throw consistency_error("lift classes present but F trivial");
            if (!(span_with({&sets.line_l, &sets.conic_l}) == t.lambda))
                throw consistency_error("overlattice not generated by Theta and degree<=2 lifts");
        } else if (!f_structure.empty()) {
            if (sets.cubic_l.size() != 2)
                throw consistency_error("F nontrivial without lifts but cubic lift pair missing");
            if (!(span_with({&sets.cubic_l}) == t.lambda))
                throw consistency_error("overlattice not generated by Theta and cubic lifts");
            if (!(t.g_structure.size() == 1 && t.g_structure[0] == 4))
                throw consistency_error("cubic-lift case must have G cyclic of order 4");
        }
        if (!(span_with({&sets.line_l, &sets.conic_l, &sets.cubic_l}) == t.lambda))
            throw consistency_error("generation identity over all lift classes fails");
    }

    // profile
    SexticProfile& pr = t.profile;
    pr.g_structure = t.g_structure;
    pr.f_structure = f_structure;
    if (sets.line_l.size() % 2 != 0 || sets.conic_l.size() % 2 != 0)
        throw consistency_error("lift class sets must have even size");
    pr.z1 = static_cast<int>(sets.line_l.size() / 2);
    pr.z2 = static_cast<int>(sets.conic_l.size() / 2);
    int d1 = static_cast<int>(sets.line_b.size());
    int d2 = static_cast<int>(sets.conic_b.size());
    bool two_cubics = d1 == 0 && d2 == 0 && !sets.cubic_b.empty();
    if (two_cubics) {
        pr.degs = {3, 3};
    } else {
        for (int i = 0; i < d1; ++i) pr.degs.push_back(1);
        for (int i = 0; i < d2; ++i) pr.degs.push_back(2);
        int residual = 6 - d1 - 2 * d2;
        if (residual == 1 || residual == 2 || residual < 0)
            throw consistency_error("degree budget produced an impossible residual component");
        if (residual > 0) pr.degs.push_back(residual);
        std::sort(pr.degs.begin(), pr.degs.end());
    }
    auto add_classes = [&](const std::vector<IVec>& v, const std::string& role) {
        for (const auto& x : v) {
            ProfileClass pc;
            pc.dual = x;
            pc.role = role;
            pc.class_order = class_order(s, x);
            for (int c = 0; c < s.ncomps(); ++c) {
                int off = s.comp_offsets[static_cast<size_t>(c)];
                int rank = s.comp(c).n;
                int tau = 0;
                bool smooth = true;
                int nonzero = 0;
                for (int i = 0; i < rank; ++i) {
                    const Int& vv = x[static_cast<size_t>(off + i)];
                    if (vv == 0) continue;
                    if (vv != 1) { smooth = false; break; }
                    ++nonzero;
                    tau = i + 1;
                }
                if (!smooth || nonzero > 1) pc.tau.push_back(-1);
                else pc.tau.push_back(tau);
            }
            pr.classes.push_back(std::move(pc));
        }
    };
    add_classes(sets.line_b, "line-component");
    add_classes(sets.line_l, "line-lift");
    add_classes(sets.conic_b, "conic-component");
    add_classes(sets.conic_l, "conic-lift");
    add_classes(sets.cubic_b, "cubic-component");
    add_classes(sets.cubic_l, "cubic-lift");

    // fingerprint rows: component classes with their degree
    std::vector<std::pair<int, IVec>> rows;
    for (const auto& x : sets.line_b) rows.emplace_back(1, x);
    for (const auto& x : sets.conic_b) rows.emplace_back(2, x);
    if (two_cubics)
        for (const auto& x : sets.cubic_b) rows.emplace_back(3, x);
    t.fingerprint = fingerprint_of(s, pr.degs, rows);
}

}  // namespace

LatticeType build_lattice_type(std::shared_ptr<const TypeSetting> sp,
                               const std::vector<IVec>& glue_gens) {
    LatticeType t = build_core(sp, glue_gens);
    if (!passes_vector_conditions(*sp, t.glue_tuples))
        throw domain_error("glue does not define sextic lattice data (extra roots or isotropic vectors)");
    if (!embeds_in_k3(t.lambda_gram))
        throw domain_error("overlattice does not embed primitively into the K3 lattice");
    finalize_lattice_type(t);
    return t;
}

// ---------------------------------------------------------------------------
// Fingerprints.

namespace {

std::string fingerprint_of(const TypeSetting& s, const std::vector<int>& degs,
                           const std::vector<std::pair<int, IVec>>& rows) {
    // entry encoding per (row, point): local dual coordinates of the row
    // class at that point, canonicalized later by diagram automorphisms.
    int np = s.ncomps();
    size_t nr = rows.size();
    // collect per-point automorphism lists (as local basis permutations)
    std::vector<std::vector<std::vector<int>>> pautos(static_cast<size_t>(np));
    for (int c = 0; c < np; ++c) {
        std::vector<std::vector<int>> group;
        std::vector<int> ident(static_cast<size_t>(s.comp(c).n));
        for (int i = 0; i < s.comp(c).n; ++i) ident[static_cast<size_t>(i)] = i;
        group.push_back(ident);
        auto gens = component_diagram_autos(s.comp(c));
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t gi = 0; gi < group.size(); ++gi)
                for (const auto& g : gens) {
                    std::vector<int> prod(group[gi].size());
                    for (size_t i = 0; i < prod.size(); ++i)
                        prod[i] = g[static_cast<size_t>(group[gi][i])];
                    if (std::find(group.begin(), group.end(), prod) == group.end()) {
                        group.push_back(prod);
                        grew = true;
                    }
                }
        }
        pautos[static_cast<size_t>(c)] = std::move(group);
    }
    // iterate over all per-point automorphism combinations and row orders
    // (rows permutable within equal degree); for fixed rows, columns within
    // equal component types are sorted, giving an exact canonical form.
    std::vector<int> row_order(nr);
    for (size_t i = 0; i < nr; ++i) row_order[static_cast<size_t>(i)] = static_cast<int>(i);
    std::string best;
    size_t combos = 1;
    for (int c = 0; c < np; ++c) {
        combos *= pautos[static_cast<size_t>(c)].size();
        if (combos > 2000000) throw budget_exhausted("fingerprint canonicalization too large");
    }
    std::vector<size_t> choice(static_cast<size_t>(np), 0);
    auto render = [&]() {
        // build column entries for each point
        std::vector<std::pair<std::string, std::string>> cols;  // (type name, content)
        for (int c = 0; c < np; ++c) {
            const auto& perm = pautos[static_cast<size_t>(c)][choice[static_cast<size_t>(c)]];
            int off = s.comp_offsets[static_cast<size_t>(c)];
            int rank = s.comp(c).n;
            std::string content;
            for (int ri : row_order) {
                const IVec& x = rows[static_cast<size_t>(ri)].second;
                content += "[";
                // permuted local dual coords
                for (int i = 0; i < rank; ++i) {
                    const Int& v = x[static_cast<size_t>(off + perm[static_cast<size_t>(i)])];
                    content += v.get_str() + ",";
                }
                content += "]";
            }
            cols.emplace_back(s.comp(c).name(), content);
        }
        std::sort(cols.begin(), cols.end());
        std::string out;
        for (size_t i = 0; i < nr; ++i) out += std::to_string(rows[static_cast<size_t>(row_order[i])].first) + ";";
        out += "|";
        for (auto& [t, c] : cols) out += t + "{" + c + "}";
        return out;
    };
    std::function<void(void)> try_rows = [&]() {
        std::string cand = render();
        if (best.empty() || cand < best) best = cand;
    };
    // iterate auto combos
    std::function<void(int)> rec = [&](int c) {
        if (c == np) {
            // iterate row permutations within equal degree groups
            std::vector<int> base(nr);
            for (size_t i = 0; i < nr; ++i) base[i] = static_cast<int>(i);
            std::function<void(size_t)> permrec = [&](size_t start) {
                if (start == nr) { try_rows(); return; }
                size_t end = start;
                while (end < nr && rows[static_cast<size_t>(base[end])].first == rows[static_cast<size_t>(base[start])].first) ++end;
                std::vector<int> grp(base.begin() + static_cast<long>(start), base.begin() + static_cast<long>(end));
                std::sort(grp.begin(), grp.end());
                do {
                    for (size_t i = start; i < end; ++i) row_order[i] = grp[i - start];
                    permrec(end);
                } while (std::next_permutation(grp.begin(), grp.end()));
            };
            permrec(0);
            return;
        }
        for (size_t a = 0; a < pautos[static_cast<size_t>(c)].size(); ++a) {
            choice[static_cast<size_t>(c)] = a;
            rec(c + 1);
        }
    };
    if (nr == 0) {
        // no component-class rows: fingerprint is degs + point types
        std::vector<std::string> pts;
        for (int c = 0; c < np; ++c) pts.push_back(s.comp(c).name());
        std::sort(pts.begin(), pts.end());
        std::string out;
        for (int d : degs) out += std::to_string(d) + ";";
        out += "|";
        for (auto& p : pts) out += p + ",";
        return out;
    }
    rec(0);
    std::string out;
    for (int d : degs) out += std::to_string(d) + ";";
    out += "#" + best;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Type enumeration pipeline.

std::vector<LatticeType> lattice_types(const ADEType& r) {
    if (r.mu() > 19) throw domain_error("lattice_types: total Milnor number exceeds 19");
    auto sp = make_setting(r);
    const TypeSetting& s = *sp;
    StructuredEnumOptions opt;
    opt.viable = [&s](const SubgroupWitness& w) {
        for (const auto& el : w.elements) {
            bool zero = std::all_of(el.begin(), el.end(), [](long v) { return v == 0; });
            if (zero) continue;
            auto per = split_tuple(s, el);
            bool hbit = el[static_cast<size_t>(s.disc.h_slot)] == 1;
            if (hbit) {
                if (support_sum_exists(s, per, make_rat(-1, 2))) return false;
            } else {
                if (support_sum_exists(s, per, Rat(-2))) return false;
            }
        }
        return true;
    };
    auto reps = enumerate_isotropic_up_to_aut(s.disc, opt);
    std::vector<LatticeType> out;
    for (const auto& rep : reps) {
        std::vector<IVec> gens;
        for (const auto& g : rep.generators) {
            IVec gi(g.size());
            for (size_t i = 0; i < g.size(); ++i) gi[i] = g[i];
            gens.push_back(std::move(gi));
        }
        LatticeType t = build_core(sp, gens);
        if (!embeds_in_k3(t.lambda_gram)) continue;
        finalize_lattice_type(t);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [&](const LatticeType& a, const LatticeType& b) {
        if (a.glue_order() != b.glue_order()) return a.glue_order() < b.glue_order();
        if (a.g_structure != b.g_structure) return a.g_structure < b.g_structure;
        return a.glue_tuples < b.glue_tuples;
    });
    return out;
}

std::vector<ADEType> all_ade_types(int max_mu) {
    std::vector<ADEComponent> catalog;
    for (int l = 1; l <= max_mu; ++l) catalog.push_back({ADEFamily::A, l});
    for (int m = 4; m <= max_mu; ++m) catalog.push_back({ADEFamily::D, m});
    for (int n = 6; n <= 8 && n <= max_mu; ++n) catalog.push_back({ADEFamily::E, n});
    std::sort(catalog.begin(), catalog.end());
    std::vector<ADEType> out;
    std::vector<ADEComponent> cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
        ADEType t;
        t.components = cur;
        out.push_back(t);
        for (size_t i = start; i < catalog.size(); ++i) {
            if (catalog[i].rank() > remaining) continue;
            cur.push_back(catalog[i]);
            rec(i, remaining - catalog[i].rank());
            cur.pop_back();
        }
    };
    rec(0, max_mu);
    std::sort(out.begin(), out.end(), [](const ADEType& a, const ADEType& b) {
        if (a.mu() != b.mu()) return a.mu() < b.mu();
        return a.components < b.components;
    });
    return out;
}

EnumerationResult enumerate_all(
    int max_mu, int jobs,
    const std::function<std::optional<std::vector<LatticeType>>(const ADEType&)>& load,
    const std::function<void(const ADEType&, const std::vector<LatticeType>&)>& store) {
    if (max_mu > 19) throw domain_error("enumerate_all: max_mu exceeds 19");
    auto types = all_ade_types(max_mu);
    std::vector<std::vector<LatticeType>> results(types.size());
    std::atomic<size_t> next{0};
    std::vector<std::string> errors(types.size());
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= types.size()) break;
            try {
                std::optional<std::vector<LatticeType>> cached;
                if (load) cached = load(types[i]);
                if (cached) {
                    results[i] = std::move(*cached);
                } else {
                    results[i] = lattice_types(types[i]);
                    if (store) store(types[i], results[i]);
                }
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    int nw = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int w = 1; w < nw; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (size_t i = 0; i < types.size(); ++i)
        if (!errors[i].empty())
            throw consistency_error("enumerate_all at " + types[i].name() + ": " + errors[i]);

    EnumerationResult res;
    res.rows.resize(static_cast<size_t>(max_mu) + 1);
    for (int m = 0; m <= max_mu; ++m) res.rows[static_cast<size_t>(m)].mu = m;
    std::map<std::pair<int, std::string>, std::vector<std::pair<size_t, size_t>>> by_fp;
    for (size_t i = 0; i < types.size(); ++i) {
        int m = types[i].mu();
        res.rows[static_cast<size_t>(m)].lattice_types += static_cast<long>(results[i].size());
        for (size_t j = 0; j < results[i].size(); ++j)
            by_fp[{m, results[i][j].fingerprint}].emplace_back(i, j);
    }
    for (auto& [key, members] : by_fp) {
        res.rows[static_cast<size_t>(key.first)].config_types += 1;
        if (members.size() < 2) continue;
        KPle k;
        k.fingerprint = key.second;
        k.mu = key.first;
        k.r = types[members[0].first];
        std::set<Int> g_orders;
        std::set<std::pair<int, int>> zpairs;
        for (auto& [ti, tj] : members) {
            const LatticeType& t = results[ti][tj];
            KPleMember m;
            m.r = t.r;
            m.z1 = t.profile.z1;
            m.z2 = t.profile.z2;
            m.g_order = t.glue_order();
            m.g_structure = t.g_structure;
            g_orders.insert(m.g_order);
            if (!zpairs.insert({m.z1, m.z2}).second)
                throw consistency_error("lattice types in one configuration share (z1, z2)");
            k.members.push_back(std::move(m));
        }
        k.g_orders_differ = g_orders.size() == k.members.size();
        res.kples.push_back(std::move(k));
    }
    return res;
}

}  // namespace sextic
