#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sextic/linalg.hpp"
#include "sextic/num.hpp"

namespace sextic {

/// An even lattice given by an exact integer Gram matrix.
struct EvenLattice {
    int rank = 0;
    IMat gram;
    std::vector<std::string> basis_labels;

    EvenLattice() = default;
    EvenLattice(IMat g, std::vector<std::string> labels = {});

    /// (x, y) for primal integer/rational coordinate vectors.
    Rat pair_primal(const QVec& x, const QVec& y) const;
    Rat norm_primal(const QVec& x) const;

    /// Dual coordinates of a primal vector: d = G x, and back: x = G^{-1} d.
    QVec primal_to_dual(const QVec& x) const;
    QVec dual_to_primal(const QVec& d) const;

    /// (x, y) where both vectors are given in dual coordinates.
    Rat pair_dual(const QVec& x, const QVec& y) const;

    const QMat& gram_inverse() const;

  private:
    mutable QMat inv_;
    mutable bool inv_ready_ = false;
};

bool is_negative_definite(const IMat& gram);

enum class CoordBasis { primal, dual };

/// A coordinate vector bound to a host lattice and a basis flag.
/// Arithmetic across different hosts or bases is rejected.
struct QVector {
    const EvenLattice* host = nullptr;
    CoordBasis basis = CoordBasis::primal;
    QVec coords;

    QVector() = default;
    QVector(const EvenLattice* h, CoordBasis b, QVec c);

    QVector operator+(const QVector& o) const;
    QVector operator-(const QVector& o) const;
    QVector scaled(const Rat& f) const;
    Rat pair(const QVector& o) const;  // accepts mixed bases on the same host
    Rat norm() const;
    QVector to_basis(CoordBasis b) const;
    bool operator==(const QVector& o) const;
};

/// A finitely generated submodule of Q^n with a canonical column-HNF basis
/// over a denominator-cleared integer model.
struct Sublattice {
    int ambient_dim = 0;
    IMat basis;  // ambient_dim x rank, column HNF of denom * generators
    Int denom = 1;

    static Sublattice from_generators(int ambient_dim, const std::vector<QVec>& gens);
    int rank() const { return basis.cols; }
    bool contains(const QVec& v) const;
    /// Integer coordinates of v in the canonical basis, when v is a member.
    std::optional<IVec> member_coords(const QVec& v) const;
    QVec basis_vector(int j) const;
    std::vector<QVec> basis_vectors() const;
    bool operator==(const Sublattice& o) const;
};

/// true iff v is a nonnegative-integer combination of the basis of E
/// (v given in primal coordinates of E).
bool in_root_monoid(const EvenLattice& e, const QVec& v_primal);

/// Ambient version: fund_system holds the root basis as ambient vectors; v is
/// an ambient vector. Throws domain_error when v is outside the rational span.
bool in_root_monoid(const std::vector<QVec>& fund_system, const QVec& v);

/// All x in coset + Z^n with lo <= (x, x) <= hi, for a negative-definite
/// Gram. Results as primal rational coordinates with their norms, sorted
/// lexicographically. Requires hi <= 0.
std::vector<std::pair<QVec, Rat>> vectors_in_coset_norm_range(const IMat& gram, const QVec& coset,
                                                              const Rat& lo, const Rat& hi);

/// All x in coset + Z^n with (x, x) = norm, canonical lexicographic order.
std::vector<QVec> vectors_in_coset_with_norm(const EvenLattice& l, const QVec& coset_primal,
                                             const Rat& norm);

/// Brute-force box enumeration used as an independent oracle in tests.
std::vector<QVec> vectors_in_coset_with_norm_naive(const EvenLattice& l, const QVec& coset_primal,
                                                   const Rat& norm);

/// Indecomposable elements of {roots d : t(d) > 0} for a linear form t given
/// by its values on the basis. Throws domain_error when t vanishes on a root.
std::vector<IVec> fundamental_system_from_form(const EvenLattice& l, const QVec& t);

/// true iff L / M is torsion free, decided by the elementary divisors of the
/// inclusion. M's generators must lie in L (integer primal coordinates).
bool is_primitive_sublattice(const Sublattice& m, const Sublattice& l);

}  // namespace sextic
