#pragma once

#include <functional>
#include <map>
#include <vector>

#include "sextic/discform.hpp"
#include "sextic/num.hpp"

namespace sextic {

/// A linear action on generator tuples of a finite quadratic form:
/// (Mt)[i] = sum_j m[i][j] * t[j] mod orders[i].
struct TupleMap {
    std::vector<std::vector<long>> m;
};

IVec apply_tuple_map(const TupleMap& map, const IVec& t, const IVec& orders);

/// All isotropic subgroups of f, each as canonical generator tuples in HNF
/// form. Exhaustive; intended for small groups and cross-checking.
std::vector<IsotropicSubgroup> isotropic_subgroups_all(const FiniteQuadraticForm& f);

/// Orbit representatives of the isotropic subgroups under the given
/// form-preserving maps (union-find over the exhaustive list). Throws
/// domain_error when a map does not preserve the form.
std::vector<IsotropicSubgroup> isotropic_orbits(const FiniteQuadraticForm& f,
                                                const std::vector<TupleMap>& maps);

/// Expand one subgroup's full orbit under the maps (canonical keys).
size_t orbit_size(const FiniteQuadraticForm& f, const IsotropicSubgroup& h,
                  const std::vector<TupleMap>& maps);

// ---------------------------------------------------------------------------
// Scalable enumeration up to automorphisms for block-structured forms.

/// Discriminant group structured by orthogonal components (the ADE pieces and
/// the polarization slot). Slot values fit machine longs.
struct StructuredDisc {
    std::vector<long> orders;                // per slot
    long lcm_orders = 1;                     // D
    std::vector<std::vector<long>> b_num;    // D * b(g_i, g_j) mod D; zero across components
    std::vector<long> q_num;                 // 2D * q(g_i) mod 4D

    struct Component {
        int type_id;             // equal ids <=> interchangeable components
        std::vector<int> slots;  // slot indices, contiguous
    };
    std::vector<Component> comps;
    int h_slot = -1;

    /// local automorphism groups per type id: each entry a square matrix over
    /// the type's slot count (closure of the induced diagram automorphisms).
    std::map<int, std::vector<std::vector<std::vector<long>>>> local_autos;

    long q_scaled(const std::vector<long>& t) const;  // 2D*q mod 4D
    long b_scaled(const std::vector<long>& s, const std::vector<long>& t) const;  // D*b mod D
};

struct SubgroupWitness {
    std::vector<std::vector<long>> elements;  // sorted tuple rows, 0 first
    std::vector<std::vector<long>> generators;
};

struct StructuredEnumOptions {
    /// Monotone viability: if false for H, every extension of H is skipped.
    std::function<bool(const SubgroupWitness&)> viable;
    size_t max_nodes = 0;  // safeguard; 0 = unlimited
};

/// Orbit representatives (under component permutations x local diagram
/// automorphisms) of all viable isotropic subgroups. Requires `viable` to be
/// invariant under the action and monotone under subgroup inclusion.
std::vector<SubgroupWitness> enumerate_isotropic_up_to_aut(const StructuredDisc& sd,
                                                           const StructuredEnumOptions& opt);

/// Exact isomorphism test under the structured action (used by the
/// enumerator; exposed for marked-class deduplication): does some g with
/// g(H1) = H2 exist, optionally also requiring g(extra1) = extra2 as sets of
/// rows?
bool structured_isomorphic(const StructuredDisc& sd, const std::vector<std::vector<long>>& h1,
                           const std::vector<std::vector<long>>& h2,
                           const std::vector<std::vector<long>>* extra1 = nullptr,
                           const std::vector<std::vector<long>>* extra2 = nullptr);

}  // namespace sextic
