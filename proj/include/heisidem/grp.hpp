#pragma once

// Finite groups given by explicit multiplication tables, their subgroups,
// abelian quotients and character groups, plus constructors for the
// Heisenberg-type families used as models.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heisidem/exactnum.hpp"

namespace heisidem::grp {

using exactnum::QmodZ;

/// Elements are indices 0..order-1 into the multiplication table.
using Element = std::uint32_t;

class TableGroup;
using GroupPtr = std::shared_ptr<const TableGroup>;

/// Named subgroups (member lists) attached to a constructed group.
using DesignatedMap = std::map<std::string, std::vector<Element>>;

/// Orders at or below this are always checked for associativity.
inline constexpr std::size_t kAlwaysCheckAssociativity = 2000;

struct TableOptions {
    /// Only honoured for orders above kAlwaysCheckAssociativity.
    bool skip_assoc_check = false;
};

class TableGroup {
  public:
    /// Validates the table (closure, identity, inverses, associativity) and
    /// throws std::invalid_argument with a witness on failure.
    static GroupPtr from_table(const std::vector<std::vector<Element>>& mul,
                               std::vector<std::string> labels = {},
                               DesignatedMap designated = {},
                               TableOptions options = {});

    std::size_t order() const { return order_; }
    Element mul(Element a, Element b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    Element inv(Element a) const { return inv_[a]; }
    Element id() const { return id_; }
    /// g x g^{-1}
    Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }
    Element power(Element a, std::int64_t k) const;
    std::size_t element_order(Element a) const;
    bool is_abelian() const;

    const std::string& label(Element a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Element> find_label(std::string_view label) const;
    const DesignatedMap& designated() const { return designated_; }

    /// True when associativity was verified at construction.
    bool associativity_checked() const { return assoc_checked_; }

  private:
    TableGroup() = default;
    std::size_t order_ = 0;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
    Element id_ = 0;
    std::vector<std::string> labels_;
    DesignatedMap designated_;
    bool assoc_checked_ = false;
};

/// Complete associativity decision by Light's test over a generating set.
/// Returns a failing triple (a, b, c) or nothing.
std::optional<std::array<Element, 3>> associativity_witness(std::size_t order, std::span<const Element> mul);

/// Exhaustive O(n^3) associativity scan; test-sized groups only.
std::optional<std::array<Element, 3>> associativity_witness_bruteforce(const TableGroup& g);

/// A greedy generating set (each element not yet generated is added in index order).
std::vector<Element> generating_set(const TableGroup& g);

/// h g h^{-1} g^{-1}: the commutator map c_g evaluated at h.
Element commutator(const TableGroup& G, Element g, Element h);

class SubgroupRef {
  public:
    /// Validates closure under multiplication and inversion.
    static SubgroupRef from_members(GroupPtr parent, std::vector<Element> members);
    static SubgroupRef generated(GroupPtr parent, std::span<const Element> generators);
    static SubgroupRef whole(GroupPtr parent);
    static SubgroupRef trivial(GroupPtr parent);
    /// Looks up a subgroup designated by the group's constructor.
    static SubgroupRef designated(GroupPtr parent, const std::string& name);

    const GroupPtr& parent() const { return parent_; }
    const TableGroup& group() const { return *parent_; }
    const std::vector<Element>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Element g) const { return position_[g] >= 0; }
    /// Position of g in members(); g must be a member.
    std::size_t local_index(Element g) const { return static_cast<std::size_t>(position_[g]); }

    bool is_subset_of(const SubgroupRef& other) const;
    /// (g, n) with g in `ambient`, n in this subgroup and g n g^{-1} outside it.
    std::optional<std::pair<Element, Element>> normality_witness(const SubgroupRef& ambient) const;
    bool is_normal_in(const SubgroupRef& ambient) const { return !normality_witness(ambient); }
    bool is_abelian() const;

    friend bool operator==(const SubgroupRef& a, const SubgroupRef& b) {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }

  private:
    SubgroupRef() = default;
    GroupPtr parent_;
    std::vector<Element> members_;
    std::vector<std::int32_t> position_;
};

/// A multiplicative character with values in Q/Z, indexed by the local index
/// of its domain (member position for subgroups, coset index for quotients).
struct MultChar {
    std::vector<QmodZ> values;

    const QmodZ& operator[](std::size_t i) const { return values[i]; }
    bool is_trivial() const;
    /// lcm of the orders of the values.
    std::int64_t order() const;
    friend bool operator==(const MultChar&, const MultChar&) = default;
};

/// Pair (a, b) of domain elements with chi(ab) != chi(a) + chi(b).
std::optional<std::pair<Element, Element>> multiplicativity_witness(const SubgroupRef& domain, const MultChar& chi);

/// Extends generator exponents to a character of `domain`. Throws
/// std::invalid_argument if the exponents do not define a character or the
/// generators do not generate the domain.
MultChar character_from_generators(const SubgroupRef& domain,
                                   std::span<const Element> generators,
                                   std::span<const QmodZ> exponents);

class AbelianQuotient;
using QuotientPtr = std::shared_ptr<const AbelianQuotient>;

/// H/N for N normal in H with abelian quotient.
class AbelianQuotient {
  public:
    /// Throws std::invalid_argument when N is not a normal subgroup of H or
    /// H/N is not commutative; the message carries a witness.
    static QuotientPtr make(const SubgroupRef& H, const SubgroupRef& N);

    const SubgroupRef& top() const { return top_; }
    const SubgroupRef& bottom() const { return bottom_; }
    std::size_t size() const { return reps_.size(); }
    /// Minimum-index representative of each coset; coset 0 is N itself.
    const std::vector<Element>& representatives() const { return reps_; }
    /// Coset index of g, or nothing when g is outside H.
    std::optional<std::size_t> coset_of(Element g) const;
    std::size_t mul(std::size_t a, std::size_t b) const { return law_[a * reps_.size() + b]; }
    std::size_t inv(std::size_t a) const { return inv_[a]; }

    /// Ascending invariant factors d_1 | d_2 | ... (factors of 1 omitted).
    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    /// Coset indices of generators matching invariant_factors().
    const std::vector<std::size_t>& generators() const { return gens_; }
    /// Exponent vector of a coset with respect to generators().
    const std::vector<std::int64_t>& coords(std::size_t coset) const { return coords_[coset]; }
    std::size_t from_coords(std::span<const std::int64_t> c) const;

  private:
    AbelianQuotient(SubgroupRef H, SubgroupRef N) : top_(std::move(H)), bottom_(std::move(N)) {}
    SubgroupRef top_;
    SubgroupRef bottom_;
    std::vector<Element> reps_;
    std::vector<std::int32_t> coset_of_;
    std::vector<std::size_t> law_;
    std::vector<std::size_t> inv_;
    std::vector<std::int64_t> factors_;
    std::vector<std::size_t> gens_;
    std::vector<std::vector<std::int64_t>> coords_;
};

/// Invariant factors of a finite abelian group given as a commutative table,
/// with generators realising them, by greedy maximal-order search.
struct CyclicDecomposition {
    std::vector<std::int64_t> factors;
    std::vector<std::size_t> generators;
};
CyclicDecomposition decompose_abelian(std::size_t order, std::span<const std::size_t> law, std::size_t identity);

/// All |A| characters of A, indexed by coset. Ordered by the mixed-radix
/// exponent vector t, with chi_t(g^c) = sum_i t_i c_i / d_i.
std::vector<MultChar> characters(const AbelianQuotient& A);

/// The (not necessarily abelian) quotient G/H for H normal in G.
struct GroupQuotient {
    GroupPtr group;
    /// coset index for every element of G
    std::vector<std::size_t> coset_of;
    /// Representative of each coset: the identity for coset 0 (= H),
    /// the minimum-index element otherwise.
    std::vector<Element> section;
};
GroupQuotient quotient_group(const SubgroupRef& H);

// ---------------------------------------------------------------- constructors

/// True when n = p^k for a prime p and k >= 1.
bool is_prime_power(std::int64_t n);

/// Upper unitriangular 3x3 matrices over Z/m, m a prime power. Element
/// (x, y, z) is [[1,x,z],[0,1,y],[0,0,1]] at index (x*m + y)*m + z. Designates "center".
GroupPtr heisenberg(std::int64_t modulus);

/// Z/n, designates nothing.
GroupPtr cyclic(std::int64_t n);

/// A x B with index a*|B| + b. Designates "left", "right" and the factors'
/// designations prefixed by "left." / "right.".
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, TableOptions options = {});

/// base ⋊ Gamma where Gamma is the given list of automorphisms of base
/// (as permutations of element indices). The list must contain the identity
/// and be closed under composition. Element (b, gamma_i) sits at index
/// i*|base| + b with the identity automorphism moved to position 0.
/// Designates "base" plus every designation of base.
GroupPtr semidirect(const GroupPtr& base, const std::vector<std::vector<Element>>& automorphisms,
                    TableOptions options = {});

/// Closure of a set of automorphisms under composition, identity first.
std::vector<std::vector<Element>> automorphism_closure(const TableGroup& base,
                                                        const std::vector<std::vector<Element>>& generators);

/// Named automorphisms of heisenberg(m):
///  "negate_xy":  (x, y, z) -> (-x, -y, z)
///  "swap":       (x, y, z) -> (y, x, xy - z)
///  "identity"
std::vector<Element> heisenberg_automorphism(std::int64_t modulus, std::string_view name);

}  // namespace heisidem::grp
