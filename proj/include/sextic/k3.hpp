#pragma once

#include <vector>

#include "sextic/discform.hpp"
#include "sextic/lattice.hpp"

namespace sextic {

/// Target data for an even-lattice existence question: signature and
/// discriminant quadratic form.
struct GenusSpec {
    int p_plus = 0;
    int p_minus = 0;
    FiniteQuadraticForm form;
};

/// Exact signature (positive, negative inertia) of a symmetric rational
/// matrix; throws on degenerate input.
std::pair<int, int> symmetric_signature(const QMat& m);

/// Whether an even lattice with the given signature and discriminant form
/// exists (signature congruence, per-prime length bounds, and the
/// boundary-case discriminant conditions at each prime).
bool exists_even_lattice(const GenusSpec& spec);

/// Whether an even lattice of signature (1, rank-1) embeds primitively into
/// the even unimodular lattice of signature (3, 19): complement-genus test.
/// Throws domain_error when the signature is not (1, mu) with mu <= 19.
bool embeds_in_k3(const EvenLattice& lam);

/// One nonzero glue class of an overlattice of <h> + <E>, split into its
/// polarization bit and its root-part coset representative.
struct GlueClassView {
    bool h_half = false;  // h-component of the class is h/2 mod Zh
    QVec e_part;          // primal coordinates in E of the root-part rep
};

/// No extra roots: every x in the overlattice with (x,h)=0, x^2=-2 already
/// lies in <E>. `classes` must list ALL nonzero glue classes.
bool root_condition(const EvenLattice& e_lat, const std::vector<GlueClassView>& classes);

/// No vector x with (x,h)=1 and x^2=0 in the overlattice.
bool isotropic_condition(const EvenLattice& e_lat, const std::vector<GlueClassView>& classes);

/// Test-support: search even Gram matrices of the given rank with entries
/// bounded by `bound` whose signature and discriminant form match the spec.
/// Returns a witness Gram when found.
std::optional<IMat> search_witness_lattice(const GenusSpec& spec, int bound);

/// Finite-form isomorphism test (brute force over generator images; intended
/// for small groups in tests and witness validation).
bool forms_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

}  // namespace sextic
