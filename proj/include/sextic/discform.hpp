#pragma once

#include <optional>
#include <vector>

#include "sextic/lattice.hpp"
#include "sextic/linalg.hpp"
#include "sextic/num.hpp"

namespace sextic {

/// A finite quadratic form on a group given by generators g_i of the stated
/// orders, with q valued in Q/2Z (stored in [0,2)) and b in Q/Z ([0,1)).
struct FiniteQuadraticForm {
    IVec orders;                  // each > 1
    QVec qvals;                   // q(g_i)
    QMat bvals;                   // b(g_i, g_j)
    std::vector<IVec> gens_dual;  // dual coordinates in the host lattice (may be empty)

    size_t ngens() const { return orders.size(); }
    Int order() const;
    /// q of a tuple-coordinate element, normalized into [0, 2).
    Rat q_of(const IVec& t) const;
    /// b of two tuple elements, normalized into [0, 1).
    Rat b_of(const IVec& s, const IVec& t) const;
    /// order of a tuple element in the group.
    Int element_order(const IVec& t) const;
    FiniteQuadraticForm negated() const;
    /// Number of generators of the p-primary part (minimal).
    int length_at(const Int& p) const;
    std::vector<Int> prime_support() const;
    /// The p-primary part as tuples of the ambient form: generators + orders.
    std::vector<std::pair<IVec, Int>> primary_part(const Int& p) const;
};

/// Discriminant form L^dual / L of a nondegenerate even lattice, with
/// generators reported in dual coordinates (Smith-form splitting).
FiniteQuadraticForm disc_form(const EvenLattice& l);

/// Signature mod 8 via exact Gauss sums in cyclotomic integer arithmetic.
int signature_mod8(const FiniteQuadraticForm& f);

/// One Jordan constituent of a p-primary finite quadratic form.
struct JordanBlock {
    Int p;
    int scale = 0;  // constituent lives at p^scale
    int rank = 1;   // 1, or 2 only for p = 2 even-type blocks
    Int qx, qy;     // q numerators over p^scale (qy used when rank = 2)
    Int bb;         // b numerator over p^scale (rank = 2)
};

/// Orthogonal Jordan decomposition of the p-primary part.
std::vector<JordanBlock> jordan_decomposition(const FiniteQuadraticForm& f, const Int& p);

/// Subgroup of a finite quadratic form, stored as the full sorted element
/// list (tuple coordinates) plus its invariant factors.
struct IsotropicSubgroup {
    std::vector<IVec> elements;   // sorted, includes 0
    std::vector<IVec> generators; // minimal generating tuples
    IVec structure;               // invariant factors (> 1)
    Int order_value = 1;

    Int order() const { return order_value; }
};

/// Build the subgroup generated by `gens` (tuples) and verify q vanishes on
/// every element; returns nullopt with *offender set when not isotropic.
std::optional<IsotropicSubgroup> make_isotropic_subgroup(const FiniteQuadraticForm& f,
                                                         const std::vector<IVec>& gens,
                                                         IVec* offender = nullptr);

/// The even overlattice of `sigma` determined by an isotropic subgroup of its
/// discriminant form: preimage of H in the dual, as a canonical sublattice in
/// dual coordinates, together with its abstract integer Gram.
struct Overlattice {
    Sublattice in_dual;    // ambient = rank of sigma, denominator-cleared HNF basis
    EvenLattice abstract;  // Gram in the HNF basis
};
Overlattice overlattice(const EvenLattice& sigma, const FiniteQuadraticForm& disc,
                        const IsotropicSubgroup& h);

/// Invariant factors (> 1) of lam / theta; throws when theta is not contained
/// in lam or the quotient is infinite.
IVec quotient_structure(const Sublattice& lam, const Sublattice& theta);

}  // namespace sextic
