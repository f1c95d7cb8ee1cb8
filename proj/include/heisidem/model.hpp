#pragma once

// The datum (G, H, N, chi): commutator maps, stabilizers H_g, the pairing
// phi on H/N, its kernel K, and the census of orbits of U = H x| N acting
// on G by (h, n) . g = n h g h^{-1}.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisidem/grp.hpp"

namespace heisidem::model {

using grp::Element;
using grp::GroupPtr;
using grp::MultChar;
using grp::QuotientPtr;
using grp::SubgroupRef;
using exactnum::QmodZ;

/// Raised when an operation needs an admissible datum and gets something else,
/// or when a computed structure contradicts a theorem the model relies on.
class ModelViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ModelDatum {
  public:
    /// Structural checks only (H and N are subgroups of G, N within H, chi
    /// sized to N); everything else is reported by validate().
    ModelDatum(SubgroupRef H, SubgroupRef N, MultChar chi);

    const GroupPtr& group_ptr() const { return H_.parent(); }
    const grp::TableGroup& G() const { return H_.group(); }
    const SubgroupRef& H() const { return H_; }
    const SubgroupRef& N() const { return N_; }
    const MultChar& chi() const { return chi_; }
    /// chi(n) for n in N.
    const QmodZ& chi_at(Element n) const { return chi_[N_.local_index(n)]; }

    /// Cosets of H in G. Coset 0 is H; its representative is the identity.
    /// Throws ModelViolation when H is not normal in G.
    const grp::GroupQuotient& gamma() const;
    std::size_t n_cosets() const { return gamma().section.size(); }
    std::size_t coset_of(Element g) const { return gamma().coset_of[g]; }
    Element coset_rep(std::size_t coset) const { return gamma().section[coset]; }
    /// Elements of the coset H rep, ascending.
    std::vector<Element> coset_members(std::size_t coset) const;

    /// H/N; throws ModelViolation when it is not a commutative quotient.
    const QuotientPtr& HmodN() const;

  private:
    SubgroupRef H_;
    SubgroupRef N_;
    MultChar chi_;
    mutable std::shared_ptr<const grp::GroupQuotient> gamma_;
    mutable QuotientPtr hmodn_;
};

struct Issue {
    enum class Severity { error, warning };
    Severity severity;
    /// Stable machine-readable code, e.g. "chi_not_invariant".
    std::string code;
    std::string message;
    /// Witness elements (meaning depends on the code).
    std::vector<Element> witness;
};

struct ValidationReport {
    std::vector<Issue> issues;
    /// No error-level issues.
    bool admissible() const;
};

/// Checks H and N normal in G, [H, H] within N, chi multiplicative and
/// G-invariant. Warns when |ker phi| != |coker phi| and when K = H.
ValidationReport validate(const ModelDatum& d);

/// Throws ModelViolation carrying the first error of validate().
void require_admissible(const ModelDatum& d);

/// H_g = {h in H : c_g(h) in N}.
SubgroupRef h_sub_g(const ModelDatum& d, Element g);

/// phi(Nh')(Nh) = chi(c_{h'}(h)), as a |H/N| x |H/N| table indexed [h'][h].
struct PhiLambda {
    QuotientPtr A;
    std::vector<std::vector<QmodZ>> table;
    /// Cosets Nh' with phi(Nh') trivial.
    std::vector<std::size_t> kernel;
    /// |coker| = |A| / |image|.
    std::size_t cokernel_order = 0;
};
PhiLambda phi_lambda(const ModelDatum& d);

struct KernelK {
    SubgroupRef K;
    QuotientPtr KmodN;
};
KernelK kernel_K(const ModelDatum& d);

/// {g in the coset : chi o c_g is trivial on H_g}, ascending.
std::vector<Element> support_locus(const ModelDatum& d, std::size_t coset);

struct OrbitRecord {
    std::size_t coset = 0;
    std::vector<Element> members;  // ascending
    Element base_point = 0;        // minimum member
    /// U-stabilizer of the base point as pairs (h, c_g(h)^{-1}).
    std::vector<std::pair<Element, Element>> stabilizer;
    bool supported = false;
};

struct CosetCensus {
    std::size_t coset = 0;
    std::vector<OrbitRecord> orbits;
    /// Orbit index for every member of the coset, -1 elsewhere.
    std::vector<std::int32_t> orbit_of;

    std::size_t n_supported() const;
};

/// Partition of a coset into U-orbits, ordered by base point.
CosetCensus orbits(const ModelDatum& d, std::size_t coset);

}  // namespace heisidem::model
