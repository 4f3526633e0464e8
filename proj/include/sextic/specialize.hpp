#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sextic/classify.hpp"

namespace sextic {

/// The two lift classes of a marked splitting curve, in dual coordinates.
struct MarkedPair {
    IVec plus, minus;
};

struct ExtendedLatticeData {
    LatticeType type;
    MarkedPair marked;
};

/// An exact linear map between two polarized root-lattice settings realizing
/// a specialization. `primal_map` sends source basis (E..., h) to target
/// primal coordinates; `dual_map` is the induced map on dual coordinates.
struct GeometricEmbedding {
    std::shared_ptr<const TypeSetting> src, dst;
    IMat primal_map;  // n_dst x n_src
    QMat dual_map;    // n_dst x n_src
    bool isometric = false;
    bool h_preserving = false;
    bool monoid_condition = false;
    bool primitive = false;

    bool base_valid() const { return isometric && h_preserving && monoid_condition && primitive; }
    /// image of a source vector given in dual coordinates
    QVec map_dual(const IVec& dual) const;
};

/// Re-derive all four base flags from scratch (Gram identity, h image, root
/// monoid membership, Smith-form primitivity).
void verify_embedding(GeometricEmbedding& e, const LatticeType& src, const LatticeType& dst);

/// Depth-first search over root-image assignments; calls `on_found` for every
/// base-valid embedding (return false from the callback to stop early).
/// Returns true when the search space was exhausted within the node budget.
bool search_geometric_embeddings(const LatticeType& src, const LatticeType& dst,
                                 size_t node_budget,
                                 const std::function<bool(const GeometricEmbedding&)>& on_found);

/// All base-valid embeddings up to the budget. `complete` reports exhaustion.
std::vector<GeometricEmbedding> geometric_embeddings(const LatticeType& src,
                                                     const LatticeType& dst, size_t node_budget,
                                                     bool* complete = nullptr);

/// sigma(S) lands in S0 + <E0>^+, consistently with the involution: some sign
/// eps has sigma(plus) in minus0/plus0^eps + monoid and sigma(minus) in the
/// opposite coset. Returns the sign (+1/-1) or nullopt.
std::optional<int> respects_marked_classes(const GeometricEmbedding& e, const MarkedPair& s,
                                           const MarkedPair& s0);

enum class CurveKind { root, elliptic };

/// Subcurve-norm condition for w = base + sum mult_e * e: every nonzero
/// subcurve vector u = n_v*base + sum n_e*e (0 <= n_e <= mult_e, n_v in {0,1})
/// has u^2 <= w^2. Branch-and-bound with an upper-bound prune.
bool vanishing_h1(const TypeSetting& dst, const IVec& base_dual, const IVec& mult, CurveKind kind);

/// Exhaustive reference version (used as an oracle in tests).
bool vanishing_h1_naive(const TypeSetting& dst, const IVec& base_dual, const IVec& mult,
                        CurveKind kind);

struct EmbeddingCertificate {
    GeometricEmbedding emb;
    int marked_sign = 0;
    bool marked_ok = false;
    bool h1_ok = false;
};

/// Find one embedding passing the marked-class and vanishing-h1 conditions.
std::optional<EmbeddingCertificate> certify_specialization(const ExtendedLatticeData& src,
                                                           const ExtendedLatticeData& dst,
                                                           size_t node_budget,
                                                           bool* complete = nullptr);

/// Marked pairs {x, iota x} from a set of lift classes, deduplicated under
/// the automorphisms of the lattice data (explicit group closure).
std::vector<MarkedPair> distinct_marked_pairs(const LatticeType& t,
                                              const std::vector<IVec>& lift_classes);

struct LineageMemberReport {
    ADEType r;
    Int class_order;
    bool is_originator = false;
    bool certified = false;
    bool search_complete = true;
};

struct LineageReport {
    bool originator_minimal_unique = false;
    std::vector<LineageMemberReport> members;
    bool all_certified() const {
        for (const auto& m : members)
            if (!m.is_originator && !m.certified) return false;
        return originator_minimal_unique;
    }
};

/// Verify the originator is the unique minimal-rank member and every other
/// member admits at least one certified embedding from it.
LineageReport lineage_check(const std::vector<ExtendedLatticeData>& family,
                            const ExtendedLatticeData& originator, size_t node_budget);

}  // namespace sextic
