#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sextic/ade.hpp"
#include "sextic/discform.hpp"
#include "sextic/k3.hpp"
#include "sextic/lattice.hpp"
#include "sextic/orbits.hpp"

namespace sextic {

/// Everything fixed by the choice of ADE configuration: the root lattice, the
/// polarized lattice Sigma = <E> + <h> (h last), the structured discriminant
/// group in component coordinates, and the automorphism action.
struct TypeSetting {
    ADEType r;
    int mu = 0;
    int n = 1;  // mu + 1
    EvenLattice e_lat;   // <E>, negative definite (rank mu)
    EvenLattice sigma;   // <E> + <h>
    std::vector<int> comp_offsets;       // offset of each component in the E basis
    std::vector<int> iota;               // involution on 0..n-1 (h fixed)
    StructuredDisc disc;                 // slots: component generators, then h
    std::vector<IVec> slot_gens_dual;    // dual coords (length n) per slot
    FiniteQuadraticForm sigma_disc;      // same data as a FiniteQuadraticForm
    std::vector<std::vector<std::vector<long>>> dual_class_coeffs;
    // dual_class_coeffs[c][i] = tuple coefficients (over component c's slots)
    // of the class of e_i^dual, i local to the component.

    const ADEComponent& comp(int c) const { return r.components[static_cast<size_t>(c)]; }
    int ncomps() const { return static_cast<int>(r.components.size()); }
    /// tuple coords (full slot vector) of the class of an integral dual vector
    std::vector<long> tuple_of_dual(const IVec& dual) const;
    /// dual coords of a tuple (canonical representative)
    IVec dual_of_tuple(const std::vector<long>& t) const;
    /// involution acting on dual coordinate vectors
    IVec apply_iota(const IVec& dual) const;
};

std::shared_ptr<const TypeSetting> make_setting(const ADEType& r);

/// One class in a sextic profile.
struct ProfileClass {
    IVec dual;            // dual coordinates in Sigma^dual
    std::string role;     // line-lift | conic-lift | cubic-lift | line-component | conic-component | cubic-component
    Int class_order = 1;  // order in Lambda / Sigma
    std::vector<int> tau; // per singular point: 1-based index, 0 = off, -1 = not v-smooth
};

struct SexticProfile {
    std::vector<int> degs;
    IVec g_structure;  // invariant factors of G
    IVec f_structure;  // invariant factors of F
    int z1 = 0;
    int z2 = 0;
    std::vector<ProfileClass> classes;
};

/// The class sets of one lattice type, in dual coordinates.
struct ClassSets {
    std::vector<IVec> line_b, line_l;    // (x,h)=1, x^2=-2, v-smooth
    std::vector<IVec> conic_b, conic_l;  // (x,h)=2, x^2=-2, v-smooth, not in Sigma, not line+line
    std::vector<IVec> cubic_b, cubic_l;  // (x,h)=3, x^2=0, nef against E and lines
};

struct LatticeType {
    ADEType r;
    std::shared_ptr<const TypeSetting> setting;
    std::vector<IVec> glue_gens;                 // tuple coordinates
    std::vector<std::vector<long>> glue_tuples;  // all glue classes, 0 first
    Sublattice lambda;        // overlattice in dual coordinates
    EvenLattice lambda_gram;  // Gram in the lambda basis
    IVec g_structure;
    ClassSets sets;
    SexticProfile profile;
    std::string fingerprint;

    Int glue_order() const { return Int(static_cast<long>(glue_tuples.size())); }
};

/// true iff every component of x (dual coords, integral) is 0 or some e_i^dual.
bool v_smooth(const TypeSetting& s, const IVec& dual);

/// Order of x mod Sigma (x integral dual coordinates in Lambda).
Int class_order(const TypeSetting& s, const IVec& dual);

/// Build a lattice type from explicit glue generators (tuple coords);
/// validates isotropy, involution stability and the Urabe conditions are NOT
/// enforced here (callers from enumeration have already checked them).
LatticeType build_lattice_type(std::shared_ptr<const TypeSetting> s,
                               const std::vector<IVec>& glue_gens);

/// Full pipeline for one ADE type: enumerate isotropic subgroups up to the
/// automorphism action, keep those passing the root/isotropic vector
/// conditions and the K3 embedding test, compute profiles. Deterministic
/// canonical order.
std::vector<LatticeType> lattice_types(const ADEType& r);

/// All ADE multisets of total rank in [0, max_mu].
std::vector<ADEType> all_ade_types(int max_mu);

struct KPleMember {
    ADEType r;
    int z1 = 0, z2 = 0;
    Int g_order;
    IVec g_structure;
};
struct KPle {
    std::string fingerprint;
    ADEType r;
    int mu = 0;
    std::vector<KPleMember> members;
    bool g_orders_differ = false;  // pairwise distinct |G|
};
struct EnumerationRow {
    int mu = 0;
    long lattice_types = 0;
    long config_types = 0;
};
struct EnumerationResult {
    std::vector<EnumerationRow> rows;  // one per mu in 0..max_mu
    std::vector<KPle> kples;
};

/// Iterate all ADE types with mu <= max_mu. `per_type` (optional) can supply
/// cached results: it receives R and either returns the types or nullopt to
/// compute here (and is then informed via `store`).
EnumerationResult enumerate_all(
    int max_mu, int jobs,
    const std::function<std::optional<std::vector<LatticeType>>(const ADEType&)>& load = nullptr,
    const std::function<void(const ADEType&, const std::vector<LatticeType>&)>& store = nullptr);

}  // namespace sextic
