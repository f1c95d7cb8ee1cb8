#pragma once

// Graded fusion rings with a Gamma-action: validation, the rigidity
// hypotheses and ring-level certificate, and equivariantization.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heisidem/grp.hpp"
#include "heisidem/hecke.hpp"
#include "heisidem/metric.hpp"
#include "heisidem/verdict.hpp"

namespace heisidem::fusionring {

struct GradedFusionRing {
    std::vector<std::string> labels;
    std::size_t unit = 0;
    /// Dense N_ij^k at (i * n + j) * n + k.
    std::vector<std::int64_t> N;
    std::vector<std::size_t> dual;
    /// Degree of each simple as an element of gamma.
    std::vector<grp::Element> grading;
    grp::GroupPtr gamma;
    /// action[g][i]: image of simple i under g.
    std::vector<std::vector<std::size_t>> action;

    std::size_t size() const { return labels.size(); }
    std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const { return N[(i * size() + j) * size() + k]; }
    std::int64_t& at(std::size_t i, std::size_t j, std::size_t k) { return N[(i * size() + j) * size() + k]; }
    std::optional<std::size_t> find(const std::string& label) const;

    /// Trivial grading over the trivial group with the trivial action.
    static GradedFusionRing ungraded(std::vector<std::string> labels, std::size_t unit, std::vector<std::int64_t> N,
                                     std::vector<std::size_t> dual);
};

/// Unit laws, non-negativity, associativity, multiplicative grading, dual an
/// involution fixing the unit, and an action by grading-compatible ring
/// automorphisms that fix the unit and commute with the dual.
Verdict validate_ring(const GradedFusionRing& r);

/// Condition (iii): N_{M,M*}^1 = N_{M*,M}^1 = 1 and N_{M,Y}^1 = 0 for Y != M*.
/// Condition (iv): X X* = 1 for every simple X of degree 1.
struct Hypotheses {
    Verdict duality;
    Verdict pointed_trivial_component;
    bool ok() const { return duality.ok && pointed_trivial_component.ok; }
};
Hypotheses check_rigid_hypotheses(const GradedFusionRing& r);

/// N_XY^Z = N_{X*,Z}^Y for all X, Y, Z.
Verdict frobenius_check(const GradedFusionRing& r);

struct CertificateEntry {
    std::size_t simple;
    /// Invertibles X with X M = M.
    std::vector<std::size_t> left_stabilizer;
    /// Invertibles Y with M Y = M.
    std::vector<std::size_t> right_stabilizer;
};

struct Certificate {
    bool issued = false;
    /// Always "ring-level certificate": categorical coherence is not checked.
    std::string kind = "ring-level certificate";
    Verdict refusal;
    std::vector<std::size_t> invertibles;
    std::vector<CertificateEntry> entries;
};

/// Requires validate_ring and check_rigid_hypotheses. For every simple M and
/// invertible X checks N_{M,M*}^X = [X M = M] and N_{M*,M}^X = [M X = M].
Certificate certify_rigidity(const GradedFusionRing& r);

/// Optional 2-cocycle data for equivariantization, keyed by the least label
/// index of an orbit, as omega(g, h) over the elements of the stabilizer
/// (indexed by their position in the stabilizer's sorted member list).
struct CocycleData {
    bool nontrivial_requested = false;
    std::map<std::size_t, std::vector<std::vector<exactnum::QmodZ>>> per_orbit;
};

/// Simples (O, rho) for Gamma-orbits O and characters rho of the stabilizer
/// of the least label in O. Abelian stabilizers only. Supplied cocycles must
/// be cohomologically trivial; std::invalid_argument otherwise and when a
/// non-trivial cocycle is requested without data.
struct Equivariantization {
    GradedFusionRing ring;
    /// For each new simple: its orbit (as the least label index) and the
    /// character index of the stabilizer.
    std::vector<std::size_t> orbit_of;
    std::vector<std::size_t> character_of;
    std::vector<std::size_t> orbit_size;
    std::vector<std::size_t> rep_dimension;
};
Equivariantization equivariantize(const GradedFusionRing& r, const CocycleData& cocycles = {});

/// Fusion table over Gamma-orbits seen through the forgetful functor:
/// M_{O1,O2}^{O3} = sum over simples Z above O3 of N_{(O1,1),(O2,1)}^Z dim(rho_Z).
/// Indexed by orbit position (orbits ordered by least label).
std::vector<std::vector<std::vector<std::int64_t>>> forgetful_table(const Equivariantization& eq);

/// forgetful_table(eq) against the fusion table of a Gamma-invariant Hecke
/// basis. Each invariant function is matched to the orbit of its least term in
/// `basis`, the basis the equivariantized ring was built from.
struct InvariantComparison {
    Verdict verdict;
    /// Orbit position (as in forgetful_table) of each invariant function.
    std::vector<std::size_t> orbit_of_invariant;
};
InvariantComparison compare_with_invariants(const Equivariantization& eq, const hecke::Basis& basis,
                                            const hecke::Basis& invariants, const hecke::FusionTable& invariant_table);

/// Pointed ring of K: N_xy^z = [x + y = z], dual = negation.
GradedFusionRing from_metric_group(const metric::MetricGroup& m);

/// Ring from an integral Hecke fusion table. grading, gamma and action may be
/// left empty for an ungraded ring.
GradedFusionRing from_hecke(const hecke::FusionTable& t, std::vector<std::string> labels,
                            std::vector<grp::Element> grading = {}, grp::GroupPtr gamma = nullptr,
                            std::vector<std::vector<std::size_t>> action = {});

/// Gamma-graded ring of a Hecke basis: labels M[base point], degree = coset
/// of G/H, action by conjugation with coset representatives.
GradedFusionRing from_hecke_basis(const hecke::Basis& basis, const hecke::FusionTable& table);

/// Whether every degree carries at least one simple.
bool grading_faithful(const GradedFusionRing& r);

}  // namespace heisidem::fusionring
