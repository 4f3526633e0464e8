#include "sextic/specialize.hpp"

#include <algorithm>
#include <set>

#include "sextic/errors.hpp"

namespace sextic {

QVec GeometricEmbedding::map_dual(const IVec& dual) const {
    QVec q(dual.size());
    for (size_t i = 0; i < dual.size(); ++i) q[i] = Rat(dual[i]);
    return mat_vec(dual_map, q);
}

namespace {

// positive roots of the target root lattice, as primal coordinate vectors in
// the full sigma basis (h coordinate zero)
std::vector<IVec> positive_roots(const TypeSetting& s) {
    std::vector<IVec> out;
    for (int c = 0; c < s.ncomps(); ++c) {
        IMat cg = component_gram(s.comp(c));
        EvenLattice cl(cg);
        int off = s.comp_offsets[static_cast<size_t>(c)];
        auto roots = vectors_in_coset_with_norm(cl, QVec(static_cast<size_t>(s.comp(c).n), Rat(0)), Rat(-2));
        for (const auto& r : roots) {
            bool nonneg = true, nonpos = true;
            for (const auto& v : r) {
                if (v > 0) nonpos = false;
                if (v < 0) nonneg = false;
            }
            if (!nonneg || nonpos) continue;  // keep positive roots only
            IVec g(static_cast<size_t>(s.n), Int(0));
            for (int i = 0; i < s.comp(c).n; ++i) g[static_cast<size_t>(off + i)] = r[static_cast<size_t>(i)].get_num();
            out.push_back(std::move(g));
        }
    }
    return out;
}

Int pair_primal_int(const EvenLattice& l, const IVec& a, const IVec& b) {
    Int s(0);
    for (int i = 0; i < l.rank; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < l.rank; ++j)
            if (b[static_cast<size_t>(j)] != 0 && l.gram.at(i, j) != 0)
                s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] * l.gram.at(i, j);
    }
    return s;
}

GeometricEmbedding assemble_embedding(const LatticeType& src, const LatticeType& dst,
                                      const std::vector<IVec>& images) {
    const TypeSetting& s1 = *src.setting;
    const TypeSetting& s2 = *dst.setting;
    GeometricEmbedding e;
    e.src = src.setting;
    e.dst = dst.setting;
    e.primal_map = IMat(s2.n, s1.n);
    for (int j = 0; j < s1.mu; ++j)
        for (int i = 0; i < s2.n; ++i) e.primal_map.at(i, j) = images[static_cast<size_t>(j)][static_cast<size_t>(i)];
    e.primal_map.at(s2.n - 1, s1.n - 1) = 1;  // h -> h0
    // dual map: G0 * M * G^{-1}
    QMat m = QMat::from_int(e.primal_map);
    QMat g0 = QMat::from_int(s2.sigma.gram);
    e.dual_map = mat_mul(g0, mat_mul(m, s1.sigma.gram_inverse()));
    return e;
}

}  // namespace

void verify_embedding(GeometricEmbedding& e, const LatticeType& src, const LatticeType& dst) {
    const TypeSetting& s1 = *src.setting;
    const TypeSetting& s2 = *dst.setting;
    // isometry: M^T G0 M == G
    {
        QMat m = QMat::from_int(e.primal_map);
        QMat lhs = mat_mul(m.transposed(), mat_mul(QMat::from_int(s2.sigma.gram), m));
        e.isometric = true;
        for (int i = 0; i < s1.n && e.isometric; ++i)
            for (int j = 0; j < s1.n; ++j)
                if (lhs.at(i, j) != Rat(s1.sigma.gram.at(i, j))) { e.isometric = false; break; }
    }
    // h image
    {
        e.h_preserving = true;
        for (int i = 0; i < s2.n; ++i) {
            Int want = (i == s2.n - 1) ? 1 : 0;
            if (e.primal_map.at(i, s1.n - 1) != want) { e.h_preserving = false; break; }
        }
    }
    // root monoid: each source basis root maps into <E0>^+
    {
        e.monoid_condition = true;
        for (int j = 0; j < s1.mu && e.monoid_condition; ++j) {
            if (e.primal_map.at(s2.n - 1, j) != 0) { e.monoid_condition = false; break; }
            for (int i = 0; i < s2.mu; ++i)
                if (e.primal_map.at(i, j) < 0) { e.monoid_condition = false; break; }
        }
    }
    // sigma(Lambda) inside Lambda0 and primitivity
    {
        e.primitive = true;
        int k = src.lambda.rank();
        IMat coords(dst.lambda.rank(), k);
        for (int j = 0; j < k && e.primitive; ++j) {
            QVec img = mat_vec(e.dual_map, src.lambda.basis_vector(j));
            auto c = dst.lambda.member_coords(img);
            if (!c) { e.primitive = false; break; }
            for (int i = 0; i < dst.lambda.rank(); ++i) coords.at(i, j) = (*c)[static_cast<size_t>(i)];
        }
        if (e.primitive) {
            IVec d = smith_normal_form(coords);
            for (const auto& v : d)
                if (v != 0 && v != 1) { e.primitive = false; break; }
        }
    }
}

bool search_geometric_embeddings(const LatticeType& src, const LatticeType& dst,
                                 size_t node_budget,
                                 const std::function<bool(const GeometricEmbedding&)>& on_found) {
    const TypeSetting& s1 = *src.setting;
    const TypeSetting& s2 = *dst.setting;
    if (s1.mu > s2.mu) return true;  // exhausted trivially: no isometric image
    auto cands = positive_roots(s2);
    // cache Gram-products for fast pairings
    std::vector<IVec> gcands;
    for (const auto& r : cands) {
        IVec gr(static_cast<size_t>(s2.n), Int(0));
        for (int i = 0; i < s2.n; ++i) {
            Int v(0);
            for (int j = 0; j < s2.n; ++j)
                if (s2.sigma.gram.at(i, j) != 0 && r[static_cast<size_t>(j)] != 0)
                    v += s2.sigma.gram.at(i, j) * r[static_cast<size_t>(j)];
            gr[static_cast<size_t>(i)] = v;
        }
        gcands.push_back(std::move(gr));
    }
    auto pair_cand = [&](size_t a, const IVec& vec) {
        Int s(0);
        for (int i = 0; i < s2.n; ++i)
            if (vec[static_cast<size_t>(i)] != 0) s += gcands[a][static_cast<size_t>(i)] * vec[static_cast<size_t>(i)];
        return s;
    };
    // source basis processing order: components by decreasing rank
    std::vector<int> order;
    {
        std::vector<int> comps(static_cast<size_t>(s1.ncomps()));
        for (int c = 0; c < s1.ncomps(); ++c) comps[static_cast<size_t>(c)] = c;
        std::sort(comps.begin(), comps.end(), [&](int a, int b) {
            if (s1.comp(a).n != s1.comp(b).n) return s1.comp(a).n > s1.comp(b).n;
            return a < b;
        });
        for (int c : comps)
            for (int i = 0; i < s1.comp(c).n; ++i)
                order.push_back(s1.comp_offsets[static_cast<size_t>(c)] + i);
    }
    // Glue-first search: the images of the glue generators' lifts are pinned
    // before any root image, which propagates pairing constraints into the
    // whole assignment. Candidates are target-overlattice vectors with the
    // right norm and polarization degree.
    struct GlueGen {
        IVec dual;       // lift in source dual coordinates
        QVec primal;     // rational source primal coordinates
        Rat norm;
        Int h_deg;       // pairing with h
    };
    std::vector<GlueGen> glue;
    for (const auto& g : src.glue_gens) {
        GlueGen gg;
        std::vector<long> tl;
        for (const auto& v : g) tl.push_back(static_cast<long>(v.get_si()));
        gg.dual = s1.dual_of_tuple(tl);
        QVec q(gg.dual.size());
        for (size_t i = 0; i < gg.dual.size(); ++i) q[i] = Rat(gg.dual[i]);
        gg.primal = mat_vec(s1.sigma.gram_inverse(), q);
        Rat nrm(0);
        for (size_t i = 0; i < q.size(); ++i) nrm += q[i] * gg.primal[i];
        gg.norm = nrm;
        gg.h_deg = gg.dual[static_cast<size_t>(s1.n - 1)];
        glue.push_back(std::move(gg));
    }
    // candidate images per glue generator: y in Lambda0 with matching norm
    // and h-degree, as dual coordinate vectors
    auto glue_candidates = [&](const GlueGen& gg) {
        std::vector<IVec> out;
        long want_parity = static_cast<long>(Int(gg.h_deg % 2 + 2).get_si()) % 2;
        Rat h_part = Rat(gg.h_deg) * Rat(gg.h_deg) / Rat(2);
        Rat e_norm = gg.norm - h_part;
        if (e_norm > 0) return out;
        for (const auto& tuple : dst.glue_tuples) {
            long hbit = s2.disc.h_slot >= 0 ? tuple[static_cast<size_t>(s2.disc.h_slot)] : 0;
            if (hbit != want_parity) continue;
            // coset representative of the e-part
            QVec rep_dual(static_cast<size_t>(s2.mu), Rat(0));
            for (size_t sl = 0; sl < s2.slot_gens_dual.size(); ++sl) {
                if (static_cast<int>(sl) == s2.disc.h_slot) continue;
                if (tuple[sl] == 0) continue;
                for (int i = 0; i < s2.mu; ++i)
                    rep_dual[static_cast<size_t>(i)] += Rat(tuple[sl] * s2.slot_gens_dual[sl][static_cast<size_t>(i)]);
            }
            QVec rep_primal = s2.e_lat.rank > 0 ? s2.e_lat.dual_to_primal(rep_dual) : QVec{};
            for (auto& [v, nrm] : vectors_in_coset_norm_range(s2.e_lat.gram, rep_primal, e_norm, e_norm)) {
                (void)nrm;
                // assemble dual coordinates of y = (h_deg/2) h + xi
                IVec y(static_cast<size_t>(s2.n), Int(0));
                QVec xd = s2.e_lat.rank > 0 ? s2.e_lat.primal_to_dual(v) : QVec{};
                bool integral = true;
                for (int i = 0; i < s2.mu && integral; ++i) {
                    if (!is_integer(xd[static_cast<size_t>(i)])) integral = false;
                    else y[static_cast<size_t>(i)] = xd[static_cast<size_t>(i)].get_num();
                }
                if (!integral) continue;
                y[static_cast<size_t>(s2.n - 1)] = gg.h_deg;
                out.push_back(std::move(y));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    std::vector<std::vector<IVec>> glue_cands;
    for (const auto& gg : glue) glue_cands.push_back(glue_candidates(gg));

    std::vector<IVec> images(static_cast<size_t>(s1.mu));
    std::vector<IVec> glue_images(glue.size());
    size_t nodes = 0;
    bool stopped = false;
    bool budget_ok = true;
    const QMat& ginv2 = s2.sigma.gram_inverse();
    auto pair_dual2 = [&](const IVec& a, const IVec& b) {
        Rat v(0);
        for (int i = 0; i < s2.n; ++i) {
            if (a[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < s2.n; ++j)
                if (b[static_cast<size_t>(j)] != 0 && ginv2.at(i, j) != 0)
                    v += Rat(a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) * ginv2.at(i, j);
        }
        return v;
    };
    std::function<bool(size_t)> rec_roots = [&](size_t step) -> bool {
        if (stopped) return false;
        if (step == order.size()) {
            GeometricEmbedding e = assemble_embedding(src, dst, images);
            // sigma determined by the root images must reproduce the chosen
            // glue images exactly
            for (size_t j = 0; j < glue.size(); ++j) {
                QVec img = e.map_dual(glue[j].dual);
                bool same = true;
                for (int i = 0; i < s2.n && same; ++i)
                    if (img[static_cast<size_t>(i)] != Rat(glue_images[j][static_cast<size_t>(i)])) same = false;
                if (!same) return true;  // realized under a different glue choice
            }
            verify_embedding(e, src, dst);
            if (e.base_valid())
                if (!on_found(e)) { stopped = true; }
            return !stopped;
        }
        int bi = order[step];
        for (size_t ci = 0; ci < cands.size(); ++ci) {
            if (++nodes > node_budget && node_budget) { budget_ok = false; stopped = true; return false; }
            bool ok = true;
            // pairings with previously assigned roots
            for (size_t prev = 0; prev < step && ok; ++prev) {
                int bj = order[prev];
                Int want = s1.sigma.gram.at(bi, bj);
                if (pair_cand(ci, images[static_cast<size_t>(bj)]) != want) ok = false;
            }
            // pairings with the glue images: (sigma e, y_j) = (e, g_j) = dual coord
            for (size_t j = 0; j < glue.size() && ok; ++j) {
                Rat want = Rat(glue[j].dual[static_cast<size_t>(bi)]);
                Rat got(0);
                const IVec& y = glue_images[j];
                for (int t = 0; t < s2.n; ++t)
                    if (cands[ci][static_cast<size_t>(t)] != 0)
                        got += Rat(cands[ci][static_cast<size_t>(t)] * y[static_cast<size_t>(t)]);
                if (got != want) ok = false;
            }
            if (!ok) continue;
            images[static_cast<size_t>(bi)] = cands[ci];
            if (!rec_roots(step + 1)) return false;
        }
        return true;
    };
    std::function<bool(size_t)> rec_glue = [&](size_t j) -> bool {
        if (stopped) return false;
        if (j == glue.size()) return rec_roots(0);
        for (const auto& y : glue_cands[j]) {
            if (++nodes > node_budget && node_budget) { budget_ok = false; stopped = true; return false; }
            bool ok = true;
            for (size_t prev = 0; prev < j && ok; ++prev) {
                Rat want(0);
                {
                    // (g_prev, g_j) in the source
                    QVec q(glue[j].dual.size());
                    for (size_t i = 0; i < q.size(); ++i) q[i] = Rat(glue[j].dual[i]);
                    for (size_t i = 0; i < q.size(); ++i) want += Rat(glue[prev].primal[i]) * q[i];
                }
                if (pair_dual2(glue_images[prev], y) != want) ok = false;
            }
            if (!ok) continue;
            glue_images[j] = y;
            if (!rec_glue(j + 1)) return false;
        }
        return true;
    };
    rec_glue(0);
    return budget_ok;
}

std::vector<GeometricEmbedding> geometric_embeddings(const LatticeType& src,
                                                     const LatticeType& dst, size_t node_budget,
                                                     bool* complete) {
    std::vector<GeometricEmbedding> out;
    bool full = search_geometric_embeddings(src, dst, node_budget,
                                            [&](const GeometricEmbedding& e) {
                                                out.push_back(e);
                                                return true;
                                            });
    if (complete) *complete = full;
    return out;
}

std::optional<int> respects_marked_classes(const GeometricEmbedding& e, const MarkedPair& s,
                                           const MarkedPair& s0) {
    const TypeSetting& s2 = *e.dst;
    auto in_coset = [&](const IVec& src_class, const IVec& dst_class) {
        QVec img = e.map_dual(src_class);
        QVec diff(img.size());
        for (size_t i = 0; i < img.size(); ++i) diff[i] = img[i] - Rat(dst_class[i]);
        if (diff[static_cast<size_t>(s2.n - 1)] != 0) return false;
        QVec primal = mat_vec(s2.sigma.gram_inverse(), diff);
        for (int i = 0; i < s2.mu; ++i) {
            const Rat& c = primal[static_cast<size_t>(i)];
            if (!is_integer(c) || c < 0) return false;
        }
        if (primal[static_cast<size_t>(s2.n - 1)] != 0) return false;
        return true;
    };
    if (in_coset(s.plus, s0.plus) && in_coset(s.minus, s0.minus)) return 1;
    if (in_coset(s.plus, s0.minus) && in_coset(s.minus, s0.plus)) return -1;
    return std::nullopt;
}

namespace {

struct H1Problem {
    const TypeSetting* s;
    IVec base;                 // dual coords of the base class
    std::vector<int> support;  // basis indices with positive multiplicity
    std::vector<long> mult;
    Rat w_norm;
};

Rat base_norm(const TypeSetting& s, const IVec& base) {
    QVec d(base.size());
    for (size_t i = 0; i < base.size(); ++i) d[i] = Rat(base[i]);
    QVec primal = mat_vec(s.sigma.gram_inverse(), d);
    Rat nrm(0);
    for (size_t i = 0; i < d.size(); ++i) nrm += d[i] * primal[i];
    return nrm;
}

}  // namespace

bool vanishing_h1(const TypeSetting& dst, const IVec& base_dual, const IVec& mult, CurveKind kind) {
    if (static_cast<int>(mult.size()) != dst.mu)
        throw domain_error("vanishing_h1: multiplicity vector size mismatch");
    Rat w2 = kind == CurveKind::root ? Rat(-2) : Rat(0);
    // validate the decomposition
    {
        Rat bn = base_norm(dst, base_dual);
        if (kind == CurveKind::root && bn != -2)
            throw domain_error("vanishing_h1: base class is not a (-2)-class");
        if (kind == CurveKind::elliptic &&
            (bn != 0 || base_dual[static_cast<size_t>(dst.n - 1)] != 3))
            throw domain_error("vanishing_h1: base class is not an elliptic-pencil class");
        for (const auto& m : mult)
            if (m < 0) throw domain_error("vanishing_h1: negative multiplicity");
    }
    std::vector<int> support;
    for (int i = 0; i < dst.mu; ++i)
        if (mult[static_cast<size_t>(i)] > 0) support.push_back(i);
    size_t ns = support.size();
    // pairings
    auto e_pair = [&](int i, int j) { return dst.sigma.gram.at(i, j); };
    auto base_pair = [&](int i) { return base_dual[static_cast<size_t>(i)]; };  // (base, e_i)
    // DFS over n_v then support coordinates
    std::vector<long> n(ns, 0);
    bool violated = false;
    // current u maintained via: u2, and (u, e_j) for each support j
    std::function<void(size_t, bool, Rat, std::vector<Rat>&)> rec =
        [&](size_t idx, bool with_base, Rat u2, std::vector<Rat>& pair_u) {
            if (violated) return;
            if (idx == ns) {
                bool zero = !with_base && std::all_of(n.begin(), n.end(), [](long v) { return v == 0; });
                if (!zero && u2 > w2) violated = true;
                return;
            }
            // bound: best possible gain from remaining coordinates
            Rat gain(0);
            for (size_t j = idx; j < ns; ++j) {
                long r = mult[static_cast<size_t>(support[j])].get_si();
                Rat best(0);
                for (long k2 = 0; k2 <= r; ++k2) {
                    Rat g = Rat(2 * k2) * pair_u[j] + Rat(k2 * k2) * Rat(e_pair(support[j], support[j]));
                    if (g > best) best = g;
                }
                gain += best;
            }
            for (size_t a = idx; a < ns; ++a)
                for (size_t b = a + 1; b < ns; ++b) {
                    Int p = e_pair(support[a], support[b]);
                    if (p > 0)
                        gain += Rat(2 * mult[static_cast<size_t>(support[a])] * mult[static_cast<size_t>(support[b])]) * Rat(p);
                }
            if (u2 + gain <= w2) return;  // nothing in this subtree can violate
            int i = support[idx];
            long r = mult[static_cast<size_t>(i)].get_si();
            for (long k = 0; k <= r && !violated; ++k) {
                Rat u2k = u2 + Rat(2 * k) * pair_u[idx] + Rat(k * k) * Rat(e_pair(i, i));
                n[idx] = k;
                std::vector<Rat> pk = pair_u;
                for (size_t j = 0; j < ns; ++j) pk[j] += Rat(k) * Rat(e_pair(i, support[j]));
                rec(idx + 1, with_base, u2k, pk);
            }
            n[idx] = 0;
        };
    for (int with_base = 0; with_base <= 1 && !violated; ++with_base) {
        Rat u2 = with_base ? base_norm(dst, base_dual) : Rat(0);
        std::vector<Rat> pair_u(ns, Rat(0));
        if (with_base)
            for (size_t j = 0; j < ns; ++j) pair_u[j] = Rat(base_pair(support[j]));
        rec(0, with_base != 0, u2, pair_u);
    }
    return !violated;
}

bool vanishing_h1_naive(const TypeSetting& dst, const IVec& base_dual, const IVec& mult,
                        CurveKind kind) {
    Rat w2 = kind == CurveKind::root ? Rat(-2) : Rat(0);
    std::vector<int> support;
    for (int i = 0; i < dst.mu; ++i)
        if (mult[static_cast<size_t>(i)] > 0) support.push_back(i);
    size_t ns = support.size();
    std::vector<long> n(ns, 0);
    bool ok = true;
    auto norm_of = [&](bool with_base) {
        // u = with_base*base + sum n_j e_{support_j}
        QVec primal(static_cast<size_t>(dst.n), Rat(0));
        if (with_base) {
            QVec d(base_dual.size());
            for (size_t i = 0; i < base_dual.size(); ++i) d[i] = Rat(base_dual[i]);
            primal = mat_vec(dst.sigma.gram_inverse(), d);
        }
        for (size_t j = 0; j < ns; ++j) primal[static_cast<size_t>(support[j])] += Rat(n[j]);
        return dst.sigma.norm_primal(primal);
    };
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (!ok) return;
        if (idx == ns) {
            for (int wb = 0; wb <= 1; ++wb) {
                bool zero = wb == 0 && std::all_of(n.begin(), n.end(), [](long v) { return v == 0; });
                if (zero) continue;
                if (norm_of(wb != 0) > w2) { ok = false; return; }
            }
            return;
        }
        for (long k = 0; k <= mult[static_cast<size_t>(support[idx])].get_si() && ok; ++k) {
            n[idx] = k;
            rec(idx + 1);
        }
        n[idx] = 0;
    };
    rec(0);
    return ok;
}

std::optional<EmbeddingCertificate> certify_specialization(const ExtendedLatticeData& src,
                                                           const ExtendedLatticeData& dst,
                                                           size_t node_budget, bool* complete) {
    std::optional<EmbeddingCertificate> found;
    bool full = search_geometric_embeddings(
        src.type, dst.type, node_budget, [&](const GeometricEmbedding& e) {
            auto sign = respects_marked_classes(e, src.marked, dst.marked);
            if (!sign) return true;
            // decomposition of sigma(plus) over the landing coset
            const TypeSetting& s2 = *e.dst;
            const IVec& base = *sign > 0 ? dst.marked.plus : dst.marked.minus;
            QVec img = e.map_dual(src.marked.plus);
            QVec diff(img.size());
            for (size_t i = 0; i < img.size(); ++i) diff[i] = img[i] - Rat(base[i]);
            QVec primal = mat_vec(s2.sigma.gram_inverse(), diff);
            IVec mult(static_cast<size_t>(s2.mu), Int(0));
            for (int i = 0; i < s2.mu; ++i) mult[static_cast<size_t>(i)] = primal[static_cast<size_t>(i)].get_num();
            Int hdeg = base[static_cast<size_t>(s2.n - 1)];
            CurveKind kind = hdeg == 3 ? CurveKind::elliptic : CurveKind::root;
            bool h1 = vanishing_h1(s2, base, mult, kind);
            if (!h1) return true;
            EmbeddingCertificate cert;
            cert.emb = e;
            cert.marked_sign = *sign;
            cert.marked_ok = true;
            cert.h1_ok = true;
            found = std::move(cert);
            return false;  // stop at the first certificate
        });
    if (complete) *complete = full;
    return found;
}

namespace {

std::vector<std::vector<int>> permutation_closure(const std::vector<std::vector<int>>& gens, int n,
                                                  size_t cap) {
    std::set<std::vector<int>> seen;
    std::vector<int> id(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> frontier = {id};
    seen.insert(id);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                std::vector<int> q(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) q[static_cast<size_t>(i)] = g[static_cast<size_t>(p[static_cast<size_t>(i)])];
                if (seen.insert(q).second) next.push_back(std::move(q));
                if (seen.size() > cap) throw budget_exhausted("automorphism group too large for marked-pair dedup");
            }
        frontier = std::move(next);
    }
    return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

}  // namespace

std::vector<MarkedPair> distinct_marked_pairs(const LatticeType& t,
                                              const std::vector<IVec>& lift_classes) {
    const TypeSetting& s = *t.setting;
    // collect iota-pairs
    std::vector<MarkedPair> pairs;
    std::set<IVec> used;
    for (const auto& x : lift_classes) {
        if (used.count(x)) continue;
        IVec y = s.apply_iota(x);
        used.insert(x);
        used.insert(y);
        MarkedPair p{std::min(x, y), std::max(x, y)};
        pairs.push_back(p);
    }
    // full automorphism group on the E basis (h fixed)
    auto gens = aut_generators(t.r);
    std::vector<std::vector<int>> egroup =
        permutation_closure(gens, s.mu, 200000);
    auto apply_perm = [&](const std::vector<int>& p, const IVec& dual) {
        IVec out(dual.size());
        for (int i = 0; i < s.mu; ++i) out[static_cast<size_t>(i)] = dual[static_cast<size_t>(p[static_cast<size_t>(i)])];
        out[static_cast<size_t>(s.n - 1)] = dual[static_cast<size_t>(s.n - 1)];
        return out;
    };
    // permutations stabilizing Lambda
    std::vector<const std::vector<int>*> stab;
    for (const auto& p : egroup) {
        bool ok = true;
        for (int j = 0; j < t.lambda.rank() && ok; ++j) {
            QVec v = t.lambda.basis_vector(j);
            QVec img(v.size());
            for (int i = 0; i < s.mu; ++i) img[static_cast<size_t>(i)] = v[static_cast<size_t>(p[static_cast<size_t>(i)])];
            img[static_cast<size_t>(s.n - 1)] = v[static_cast<size_t>(s.n - 1)];
            if (!t.lambda.contains(img)) ok = false;
        }
        if (ok) stab.push_back(&p);
    }
    std::vector<MarkedPair> reps;
    std::vector<char> dead(pairs.size(), 0);
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (dead[i]) continue;
        reps.push_back(pairs[i]);
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            if (dead[j]) continue;
            for (const auto* p : stab) {
                IVec a = apply_perm(*p, pairs[i].plus);
                IVec b = apply_perm(*p, pairs[i].minus);
                MarkedPair img{std::min(a, b), std::max(a, b)};
                if (img.plus == pairs[j].plus && img.minus == pairs[j].minus) {
                    dead[j] = 1;
                    break;
                }
            }
        }
    }
    return reps;
}

LineageReport lineage_check(const std::vector<ExtendedLatticeData>& family,
                            const ExtendedLatticeData& originator, size_t node_budget) {
    LineageReport rep;
    int min_mu = originator.type.r.mu();
    auto is_originator = [&](const ExtendedLatticeData& m) {
        return m.type.r == originator.type.r && m.marked.plus == originator.marked.plus &&
               m.marked.minus == originator.marked.minus;
    };
    bool unique = true;
    for (const auto& m : family)
        if (!is_originator(m) && m.type.r.mu() <= min_mu) unique = false;
    rep.originator_minimal_unique = unique;
    for (const auto& m : family) {
        LineageMemberReport mr;
        mr.r = m.type.r;
        mr.class_order = class_order(*m.type.setting, m.marked.plus);
        bool is_orig = is_originator(m);
        mr.is_originator = is_orig;
        if (!is_orig) {
            bool complete = true;
            auto cert = certify_specialization(originator, m, node_budget, &complete);
            mr.certified = cert.has_value();
            mr.search_complete = complete;
        }
        rep.members.push_back(std::move(mr));
    }
    return rep;
}

}  // namespace sextic
