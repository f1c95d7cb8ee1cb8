#pragma once

// Cyclotomic-valued functions on G under convolution: the idempotent e, its
// translates, weak duality, orbit bases of the Hecke subalgebras and their
// fusion tables.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "heisidem/exactnum.hpp"
#include "heisidem/model.hpp"

namespace heisidem::hecke {

using exactnum::Cyclotomic;
using exactnum::Rational;
using model::Element;
using model::ModelDatum;
using model::ModelViolation;

using DatumPtr = std::shared_ptr<const ModelDatum>;

/// A function G -> Q(zeta); only nonzero values are stored, sorted by element.
class EquivFn {
  public:
    explicit EquivFn(DatumPtr datum) : datum_(std::move(datum)) {}
    /// Drops zero values and sorts; values are stored reduced.
    EquivFn(DatumPtr datum, std::vector<std::pair<Element, Cyclotomic>> values);

    static EquivFn delta(DatumPtr datum, Element g, Cyclotomic value = Cyclotomic(1));

    const DatumPtr& datum() const { return datum_; }
    const std::vector<std::pair<Element, Cyclotomic>>& values() const { return values_; }
    Cyclotomic at(Element g) const;
    bool is_zero() const { return values_.empty(); }
    std::vector<Element> support() const;

    EquivFn operator+(const EquivFn& o) const;
    EquivFn operator-(const EquivFn& o) const;
    EquivFn scaled(const Cyclotomic& c) const;

    /// Exact equality of functions on the same datum.
    friend bool operator==(const EquivFn& a, const EquivFn& b);

  private:
    DatumPtr datum_;
    std::vector<std::pair<Element, Cyclotomic>> values_;
};

/// (f * g)(x) = sum_y f(y) g(y^{-1} x). Work is split over supp f when jobs > 1;
/// the result does not depend on jobs.
EquivFn convolve(const EquivFn& f, const EquivFn& g, unsigned jobs = 1);

/// e(n) = chi(n) / |N| on N.
EquivFn idempotent_e(const DatumPtr& d);

enum class Side { left, right };
/// Right: f^g(x) = f(x g^{-1}). Left: (g f)(x) = f(g^{-1} x).
EquivFn translate(const EquivFn& f, Element g, Side side = Side::right);

/// f^v(g) = conj(f(g^{-1})).
EquivFn dual(const EquivFn& f);

/// w -> f(x^{-1} w x).
EquivFn conjugate_by(const EquivFn& f, Element x);

/// sum_x a(x) conj(b(x)).
Cyclotomic inner(const EquivFn& a, const EquivFn& b);

/// f(n g) = chi(n) f(g) for all n, g; also computes e * f == f and throws
/// ModelViolation if the two characterisations disagree.
bool is_in_eD(const EquivFn& f);
/// is_in_eD plus f(h g h^{-1}) = f(g) for h in H.
bool is_in_eDH(const EquivFn& f);
/// is_in_eD plus f(x g x^{-1}) = f(g) for all x in G.
bool is_in_eDG(const EquivFn& f);

/// Basis of a Hecke subalgebra, one function per supported orbit.
struct Basis {
    DatumPtr datum;
    std::vector<EquivFn> elements;
    /// Coset of H containing the base point of each element (the whole support
    /// for eD_H bases).
    std::vector<std::size_t> coset;
    /// Minimum element of each support; the function takes the value 1/|N| there.
    std::vector<Element> base_point;
    /// Number of U-orbits in each support (1 for eD_H bases).
    std::vector<std::size_t> weight;
    /// For every group element, the index of the element whose support
    /// contains it, or -1.
    std::vector<std::int32_t> owner;

    std::size_t size() const { return elements.size(); }
    void push_back(EquivFn f, std::size_t coset, Element base, std::size_t weight);
};

/// Basis of the functions on one coset satisfying N-equivariance and
/// H-conjugation invariance. Orbits whose constraints are inconsistent
/// contribute nothing; their set must coincide with the unsupported orbits
/// (ModelViolation otherwise).
Basis basis_eDH(const DatumPtr& d, std::size_t coset);
/// Concatenation of basis_eDH over every coset, coset by coset.
Basis basis_eDH_all(const DatumPtr& d);
/// Basis of the G-conjugation-invariant part, one element per supported
/// orbit of G x| N acting by (x, n) . g = n x g x^{-1}.
Basis gamma_invariants(const DatumPtr& d);

/// Coefficients of h over a basis with disjoint supports. Returns nothing when
/// h is not in the span.
std::optional<std::vector<Cyclotomic>> decompose(const Basis& basis, const EquivFn& h);

struct FusionTable {
    std::size_t n = 0;
    /// f_i * f_j = sum_k a[i][j][k] f_k (exact scalars).
    std::vector<std::vector<std::vector<Cyclotomic>>> a;
    /// Rescaled multiplicities N_ij^k = |a_ij^k| sqrt(c_k / (c_i c_j)).
    std::vector<std::vector<std::vector<std::int64_t>>> N;
    /// c_i = |N| ||f_i||^2 / weight_i: the norm making the table integral.
    std::vector<Rational> c;
    /// Index j with f_i^v proportional to f_j.
    std::vector<std::size_t> dual;
    std::size_t unit = 0;
};

/// Structure constants of a basis closed under convolution. Throws
/// ModelViolation when a product leaves the span or a rescaled constant is not
/// a non-negative integer.
FusionTable fusion_table(const Basis& basis, unsigned jobs = 1);

/// Permutation of the basis induced by f -> conjugate_by(f, rep) for each
/// coset representative of G/H. Throws ModelViolation when the image of a
/// basis element is not proportional to a basis element.
std::vector<std::vector<std::size_t>> gamma_action(const Basis& basis);

/// K_f = {k in K : f^k is a nonzero multiple of f}.
model::SubgroupRef k_sub_m(const EquivFn& f, const model::SubgroupRef& K);

struct DualDecomposition {
    /// Coset representatives k of K_f / N with f^k = f exactly (or the least
    /// element of the coset when no such k exists).
    std::vector<Element> representatives;
    /// f^v * f = sum_i coefficients[i] e^{representatives[i]}.
    std::vector<Cyclotomic> coefficients;
    /// All coefficients equal and nonzero, no other terms.
    bool common_coefficient = false;
};

/// Decomposes f^v * f over the translates e^k, k in K. Throws ModelViolation
/// when f^v * f has terms outside {e^k : Nk in K_f / N}.
DualDecomposition dual_convolve(const EquivFn& f, const model::SubgroupRef& K, unsigned jobs = 1);

/// f * g == conjugate_by(g, rep) * f, where f is supported on the coset H rep
/// and g is H-conjugation invariant (std::invalid_argument otherwise).
bool crossed_commute_check(const EquivFn& f, const EquivFn& g, unsigned jobs = 1);

}  // namespace heisidem::hecke
