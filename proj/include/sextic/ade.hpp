#pragma once

#include <string>
#include <vector>

#include "sextic/linalg.hpp"
#include "sextic/num.hpp"

namespace sextic {

enum class ADEFamily { A, D, E };

/// One irreducible component of an ADE configuration, e.g. A7 or D5.
struct ADEComponent {
    ADEFamily family;
    int n;  // subscript; rank of the component

    int rank() const { return n; }
    std::string name() const;
    bool operator==(const ADEComponent& o) const { return family == o.family && n == o.n; }
    bool operator<(const ADEComponent& o) const {
        if (family != o.family) return family < o.family;
        return n < o.n;
    }
};

/// A multiset of irreducible ADE symbols in canonical order (A < D < E, then
/// subscript). The total rank `mu` is the total Milnor number.
struct ADEType {
    std::vector<ADEComponent> components;  // sorted canonically

    int mu() const;
    std::string name() const;  // e.g. "A3+2A7"
    bool operator==(const ADEType& o) const { return components == o.components; }
    bool operator<(const ADEType& o) const { return components < o.components; }
};

/// Parse "A3+2A7" style strings (multiplicity prefix optional).
/// Throws parse_error on malformed terms, D_m with m < 4, or rank > 19.
ADEType parse_ade(const std::string& s);

/// Negative-definite Gram matrix of one component, basis indexed as in the
/// standard Dynkin numbering used throughout: A_l a chain e1-..-el; D_m has
/// e1, e2 both joined to e3 and a chain e3-..-em; E_n a chain e2-..-en with
/// e1 joined to e4.
IMat component_gram(const ADEComponent& c);

/// Block-diagonal Gram of the whole configuration (rank mu x mu).
IMat ade_gram(const ADEType& r);

/// The involution of the basis induced by the deck transformation of the
/// double cover: a permutation p with p[i] = image index (0-based, within the
/// component). A_l reverses; D_{2k}, E7, E8 identity; D_{2k+1} swaps e1,e2;
/// E6 fixes e1 and maps e_i to e_{8-i}.
std::vector<int> component_involution(const ADEComponent& c);

/// Global involution on the mu basis vectors (blockwise).
std::vector<int> ade_involution(const ADEType& r);

/// Whether the multiplicity of e_i^dual in the resolution is even.
/// i is 1-based. Throws domain_error when i is out of range.
bool even_multiplicity(const ADEComponent& c, int i);

/// 1-based dual indices that can carry the class of a smooth local branch of
/// a curve component through this singularity.
std::vector<int> smooth_branch_classes(const ADEComponent& c);

/// Local intersection defect sigma_P for a smooth splitting-curve branch
/// meeting the exceptional curve with index tau (1-based); tau = 0 means the
/// point is off the curve.
Rat sigma_p(const ADEComponent& c, int tau);

/// Diagram-automorphism generators of one component (0-based local
/// permutations): A_l reversal, the full S3 on e1,e2,e4 for D4, the e1/e2
/// swap for other D_m, the E6 flip.
std::vector<std::vector<int>> component_diagram_autos(const ADEComponent& c);

/// Generators of the group of Gram-preserving basis permutations fixing the
/// component partition type: per-component diagram flips plus swaps of
/// identical components. Global 0-based permutations of the mu basis vectors.
std::vector<std::vector<int>> aut_generators(const ADEType& r);

/// Order of the permutation group generated by `gens` (brute-force closure;
/// intended for small ranks / tests).
size_t permutation_group_order(const std::vector<std::vector<int>>& gens, int n);

}  // namespace sextic
