#include "heisidem/fusionring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace heisidem::fusionring {

using exactnum::Cyclotomic;
using exactnum::QmodZ;
using exactnum::Rational;
using exactnum::root_of_unity;
using grp::Element;

namespace {

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

std::string triple(const GradedFusionRing& r, std::size_t i, std::size_t j, std::size_t k) {
    return "(" + r.labels[i] + ", " + r.labels[j] + ", " + r.labels[k] + ")";
}

}  // namespace

std::optional<std::size_t> GradedFusionRing::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

GradedFusionRing GradedFusionRing::ungraded(std::vector<std::string> labels, std::size_t unit,
                                            std::vector<std::int64_t> N, std::vector<std::size_t> dual) {
    GradedFusionRing r;
    const std::size_t n = labels.size();
    r.labels = std::move(labels);
    r.unit = unit;
    r.N = std::move(N);
    r.dual = std::move(dual);
    r.grading.assign(n, 0);
    r.gamma = grp::cyclic(1);
    r.action = {identity_perm(n)};
    return r;
}

Verdict validate_ring(const GradedFusionRing& r) {
    const std::size_t n = r.size();
    if (n == 0) return Verdict::fail("ring has no simples");
    if (r.N.size() != n * n * n) return Verdict::fail("fusion tensor has wrong size");
    if (r.unit >= n) return Verdict::fail("unit label out of range");
    if (r.dual.size() != n || r.grading.size() != n) return Verdict::fail("dual or grading has wrong length");
    if (!r.gamma) return Verdict::fail("ring has no grading group");
    const auto& G = *r.gamma;
    if (r.action.size() != G.order()) return Verdict::fail("action must have one permutation per group element");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (r.at(i, j, k) < 0) return Verdict::fail("negative coefficient at " + triple(r, i, j, k), {i, j, k});

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t want = i == k ? 1 : 0;
            if (r.at(r.unit, i, k) != want || r.at(i, r.unit, k) != want)
                return Verdict::fail("unit law fails for " + r.labels[i] + " -> " + r.labels[k], {i, k});
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    std::int64_t left = 0, right = 0;
                    for (std::size_t m = 0; m < n; ++m) {
                        left += r.at(i, j, m) * r.at(m, k, l);
                        right += r.at(j, k, m) * r.at(i, m, l);
                    }
                    if (left != right)
                        return Verdict::fail("associativity fails: ((" + r.labels[i] + " " + r.labels[j] + ") " +
                                                 r.labels[k] + ") and (" + r.labels[i] + " (" + r.labels[j] + " " +
                                                 r.labels[k] + ")) differ at " + r.labels[l],
                                             {i, j, k, l});
                }

    for (std::size_t i = 0; i < n; ++i)
        if (r.grading[i] >= G.order()) return Verdict::fail("degree out of range for " + r.labels[i], {i});
    if (r.grading[r.unit] != G.id()) return Verdict::fail("unit is not of degree 1", {r.unit});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (r.at(i, j, k) != 0 && r.grading[k] != G.mul(r.grading[i], r.grading[j]))
                    return Verdict::fail("grading is not multiplicative at " + triple(r, i, j, k), {i, j, k});

    for (std::size_t i = 0; i < n; ++i) {
        if (r.dual[i] >= n || r.dual[r.dual[i]] != i) return Verdict::fail("dual is not an involution at " + r.labels[i], {i});
        if (r.grading[r.dual[i]] != G.inv(r.grading[i]))
            return Verdict::fail("dual of " + r.labels[i] + " has the wrong degree", {i});
    }
    if (r.dual[r.unit] != r.unit) return Verdict::fail("dual does not fix the unit", {r.unit});

    for (Element g = 0; g < G.order(); ++g) {
        const auto& p = r.action[g];
        if (p.size() != n) return Verdict::fail("action permutation has wrong length", {g});
        std::vector<char> hit(n, 0);
        for (auto x : p)
            if (x >= n || hit[x]++) return Verdict::fail("action of a group element is not a permutation", {g});
    }
    if (r.action[G.id()] != identity_perm(n)) return Verdict::fail("identity does not act trivially");
    for (Element g = 0; g < G.order(); ++g) {
        const auto& p = r.action[g];
        for (Element h = 0; h < G.order(); ++h)
            for (std::size_t i = 0; i < n; ++i)
                if (r.action[G.mul(g, h)][i] != p[r.action[h][i]])
                    return Verdict::fail("action is not a homomorphism at (" + G.label(g) + ", " + G.label(h) + ")",
                                         {g, h, i});
        if (p[r.unit] != r.unit) return Verdict::fail("action of " + G.label(g) + " moves the unit", {g});
        for (std::size_t i = 0; i < n; ++i) {
            if (r.grading[p[i]] != G.conj(g, r.grading[i]))
                return Verdict::fail("action of " + G.label(g) + " does not respect the grading at " + r.labels[i],
                                     {g, i});
            if (p[r.dual[i]] != r.dual[p[i]])
                return Verdict::fail("action of " + G.label(g) + " does not commute with the dual at " + r.labels[i],
                                     {g, i});
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (r.at(p[i], p[j], p[k]) != r.at(i, j, k))
                        return Verdict::fail("action of " + G.label(g) + " does not preserve N at " + triple(r, i, j, k),
                                             {g, i, j, k});
    }
    return Verdict::pass();
}

Hypotheses check_rigid_hypotheses(const GradedFusionRing& r) {
    Hypotheses h;
    const std::size_t n = r.size();
    for (std::size_t m = 0; m < n && h.duality.ok; ++m) {
        const auto md = r.dual[m];
        if (r.at(m, md, r.unit) != 1 || r.at(md, m, r.unit) != 1) {
            h.duality = Verdict::fail("1 does not occur exactly once in " + r.labels[m] + " " + r.labels[md] +
                                          " and " + r.labels[md] + " " + r.labels[m],
                                      {m, md});
            break;
        }
        for (std::size_t y = 0; y < n; ++y)
            if (y != md && r.at(m, y, r.unit) != 0) {
                h.duality = Verdict::fail("1 occurs in " + r.labels[m] + " " + r.labels[y] + " although " +
                                              r.labels[y] + " is not the dual",
                                          {m, y});
                break;
            }
    }
    const Element one = r.gamma ? r.gamma->id() : 0;
    for (std::size_t x = 0; x < n; ++x) {
        if (r.grading[x] != one) continue;
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t want = k == r.unit ? 1 : 0;
            if (r.at(x, r.dual[x], k) != want) {
                h.pointed_trivial_component = Verdict::fail(
                    r.labels[x] + " " + r.labels[r.dual[x]] + " is not the unit (coefficient of " + r.labels[k] + " is " +
                        std::to_string(r.at(x, r.dual[x], k)) + "), so the degree-1 part is not pointed",
                    {x, k});
                return h;
            }
        }
    }
    return h;
}

Verdict frobenius_check(const GradedFusionRing& r) {
    const std::size_t n = r.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (r.at(x, y, z) != r.at(r.dual[x], z, y))
                    return Verdict::fail("N_XY^Z != N_{X*,Z}^Y at " + triple(r, x, y, z), {x, y, z});
    return Verdict::pass();
}

Certificate certify_rigidity(const GradedFusionRing& r) {
    Certificate c;
    if (auto v = validate_ring(r); !v) {
        c.refusal = Verdict::fail("not a valid ring: " + v.message, v.witness);
        return c;
    }
    auto hyp = check_rigid_hypotheses(r);
    if (!hyp.duality) {
        c.refusal = Verdict::fail("hypothesis (iii) fails: " + hyp.duality.message, hyp.duality.witness);
        return c;
    }
    if (!hyp.pointed_trivial_component) {
        c.refusal = Verdict::fail("hypothesis (iv) fails: " + hyp.pointed_trivial_component.message,
                                  hyp.pointed_trivial_component.witness);
        return c;
    }
    const std::size_t n = r.size();
    for (std::size_t x = 0; x < n; ++x) {
        bool invertible = true;
        for (std::size_t k = 0; k < n; ++k) invertible = invertible && r.at(x, r.dual[x], k) == (k == r.unit ? 1 : 0);
        if (invertible) c.invertibles.push_back(x);
    }
    for (std::size_t m = 0; m < n; ++m) {
        CertificateEntry e{m, {}, {}};
        const auto md = r.dual[m];
        for (auto x : c.invertibles) {
            const bool left_fixes = r.at(x, m, m) == 1;
            const bool right_fixes = r.at(m, x, m) == 1;
            if (r.at(m, md, x) != (left_fixes ? 1 : 0)) {
                c.refusal = Verdict::fail("occurrence lemma fails: N_{M,M*}^X = " + std::to_string(r.at(m, md, x)) +
                                              " but X M " + (left_fixes ? "=" : "!=") + " M for M = " + r.labels[m] +
                                              ", X = " + r.labels[x],
                                          {m, x});
                c.entries.clear();
                return c;
            }
            if (r.at(md, m, x) != (right_fixes ? 1 : 0)) {
                c.refusal = Verdict::fail("occurrence lemma fails: N_{M*,M}^X = " + std::to_string(r.at(md, m, x)) +
                                              " but M X " + (right_fixes ? "=" : "!=") + " M for M = " + r.labels[m] +
                                              ", X = " + r.labels[x],
                                          {m, x});
                c.entries.clear();
                return c;
            }
            if (left_fixes) e.left_stabilizer.push_back(x);
            if (right_fixes) e.right_stabilizer.push_back(x);
        }
        c.entries.push_back(std::move(e));
    }
    c.issued = true;
    return c;
}

// ---------------------------------------------------------------- equivariantization

namespace {

struct OrbitInfo {
    std::size_t rep;
    std::vector<std::size_t> members;             // ascending
    std::map<std::size_t, Element> delta;         // member -> group element carrying rep to it
    std::optional<grp::SubgroupRef> stabilizer;
    grp::QuotientPtr stab_quotient;
    std::vector<grp::MultChar> chars;
};

void check_cocycle(const OrbitInfo& o, const std::vector<std::vector<QmodZ>>& omega) {
    const auto& S = *o.stabilizer;
    const auto& G = S.group();
    const std::size_t m = S.size();
    if (omega.size() != m) throw std::invalid_argument("cocycle has the wrong size for its stabilizer");
    for (const auto& row : omega)
        if (row.size() != m) throw std::invalid_argument("cocycle has the wrong size for its stabilizer");
    const auto& mem = S.members();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                const auto ab = S.local_index(G.mul(mem[a], mem[b]));
                const auto bc = S.local_index(G.mul(mem[b], mem[c]));
                if (omega[a][b] + omega[ab][c] != omega[b][c] + omega[a][bc])
                    throw std::invalid_argument("supplied data is not a 2-cocycle");
            }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (omega[a][b] != omega[b][a])
                throw std::invalid_argument(
                    "cocycle class is non-trivial (omega(g,h) != omega(h,g)); projective multiplicities are not "
                    "determined by ring data");
}

}  // namespace

Equivariantization equivariantize(const GradedFusionRing& r, const CocycleData& cocycles) {
    if (auto v = validate_ring(r); !v) throw std::invalid_argument("equivariantize: " + v.message);
    if (cocycles.nontrivial_requested && cocycles.per_orbit.empty())
        throw std::invalid_argument("a non-trivial cocycle was requested without cocycle data");
    const auto& G = *r.gamma;
    const std::size_t n = r.size();
    Equivariantization eq;
    if (G.order() == 1) {
        eq.ring = r;
        eq.orbit_of = identity_perm(n);
        eq.character_of.assign(n, 0);
        eq.orbit_size.assign(n, 1);
        eq.rep_dimension.assign(n, 1);
        return eq;
    }

    std::vector<OrbitInfo> orbits;
    std::vector<std::size_t> orbit_index(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        if (orbit_index[a] != n) continue;
        OrbitInfo o;
        o.rep = a;
        std::vector<Element> stab;
        for (Element g = 0; g < G.order(); ++g) {
            const auto b = r.action[g][a];
            if (!o.delta.count(b)) o.delta[b] = g;
            if (b == a) stab.push_back(g);
        }
        for (const auto& [b, g] : o.delta) {
            o.members.push_back(b);
            orbit_index[b] = orbits.size();
        }
        o.stabilizer = grp::SubgroupRef::from_members(r.gamma, stab);
        if (!o.stabilizer->is_abelian())
            throw std::invalid_argument("stabilizer of " + r.labels[a] +
                                        " is not abelian; only abelian stabilizers are supported");
        o.stab_quotient = grp::AbelianQuotient::make(*o.stabilizer, grp::SubgroupRef::trivial(r.gamma));
        o.chars = grp::characters(*o.stab_quotient);
        if (auto it = cocycles.per_orbit.find(a); it != cocycles.per_orbit.end()) check_cocycle(o, it->second);
        orbits.push_back(std::move(o));
    }
    for (const auto& [key, _] : cocycles.per_orbit)
        if (key >= n || orbits[orbit_index[key]].rep != key)
            throw std::invalid_argument("cocycle key " + std::to_string(key) + " is not the least label of an orbit");

    // new simples
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (std::size_t t = 0; t < orbits[o].chars.size(); ++t) {
            eq.orbit_of.push_back(orbits[o].rep);
            eq.character_of.push_back(t);
            eq.orbit_size.push_back(orbits[o].members.size());
            eq.rep_dimension.push_back(1);
            std::string label;
            if (orbits[o].members.size() == 1) {
                label = r.labels[orbits[o].rep];
            } else {
                label = "{";
                for (std::size_t i = 0; i < orbits[o].members.size(); ++i)
                    label += (i ? "," : "") + r.labels[orbits[o].members[i]];
                label += "}";
            }
            if (orbits[o].chars.size() > 1) label += ":" + std::to_string(t);
            eq.ring.labels.push_back(label);
        }
    const std::size_t m = eq.ring.labels.size();
    std::vector<std::size_t> simple_orbit(m);
    for (std::size_t s = 0; s < m; ++s) simple_orbit[s] = orbit_index[eq.orbit_of[s]];

    // character of rho restricted to a stabilizer element, transported to any orbit member
    auto rho = [&](std::size_t orbit, std::size_t t, std::size_t member, Element gamma) {
        const auto& o = orbits[orbit];
        const Element d = o.delta.at(member);
        const Element back = G.mul(G.mul(G.inv(d), gamma), d);
        return o.chars[t][*o.stab_quotient->coset_of(back)];
    };

    eq.ring.N.assign(m * m * m, 0);
    for (std::size_t s1 = 0; s1 < m; ++s1)
        for (std::size_t s2 = 0; s2 < m; ++s2)
            for (std::size_t s3 = 0; s3 < m; ++s3) {
                const auto o1 = simple_orbit[s1], o2 = simple_orbit[s2], o3 = simple_orbit[s3];
                const auto& O3 = orbits[o3];
                const std::size_t c = O3.rep;
                Cyclotomic total;
                for (auto gamma : O3.stabilizer->members()) {
                    Cyclotomic chi_u;
                    for (auto a : orbits[o1].members) {
                        if (r.action[gamma][a] != a) continue;
                        for (auto b : orbits[o2].members) {
                            if (r.action[gamma][b] != b) continue;
                            const auto nab = r.at(a, b, c);
                            if (nab == 0) continue;
                            const QmodZ phase = rho(o1, eq.character_of[s1], a, gamma) +
                                                rho(o2, eq.character_of[s2], b, gamma);
                            chi_u += Cyclotomic(nab) * root_of_unity(phase);
                        }
                    }
                    if (chi_u.is_zero()) continue;
                    total += chi_u * root_of_unity(-rho(o3, eq.character_of[s3], c, gamma));
                }
                const auto value = (total * Cyclotomic(Rational(1, static_cast<std::int64_t>(O3.stabilizer->size()))))
                                       .as_rational();
                if (!value || !value->is_integer() || value->num() < 0)
                    throw std::logic_error("equivariant multiplicity is not a non-negative integer at " +
                                           eq.ring.labels[s1] + ", " + eq.ring.labels[s2] + ", " + eq.ring.labels[s3]);
                eq.ring.N[(s1 * m + s2) * m + s3] = value->num();
            }

    // unit: the unit's orbit with the trivial character (index 0)
    eq.ring.unit = m;
    for (std::size_t s = 0; s < m; ++s)
        if (eq.orbit_of[s] == r.unit && eq.character_of[s] == 0) eq.ring.unit = s;
    eq.ring.dual.assign(m, m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            if (eq.ring.N[(x * m + y) * m + eq.ring.unit] == 1) eq.ring.dual[x] = y;
    for (std::size_t x = 0; x < m; ++x)
        if (eq.ring.dual[x] == m) throw std::logic_error("equivariantized simple " + eq.ring.labels[x] + " has no dual");
    eq.ring.grading.assign(m, 0);
    eq.ring.gamma = grp::cyclic(1);
    eq.ring.action = {identity_perm(m)};

    std::size_t dim = 0;
    for (std::size_t s = 0; s < m; ++s) dim += eq.orbit_size[s] * eq.rep_dimension[s] * eq.orbit_size[s] * eq.rep_dimension[s];
    if (dim != G.order() * n)
        throw std::logic_error("equivariantization dimension " + std::to_string(dim) + " differs from |Gamma| * " +
                               std::to_string(n));
    return eq;
}

std::vector<std::vector<std::vector<std::int64_t>>> forgetful_table(const Equivariantization& eq) {
    std::vector<std::size_t> reps;
    for (auto o : eq.orbit_of)
        if (std::find(reps.begin(), reps.end(), o) == reps.end()) reps.push_back(o);
    const std::size_t k = reps.size();
    auto pos = [&](std::size_t orbit) {
        return static_cast<std::size_t>(std::find(reps.begin(), reps.end(), orbit) - reps.begin());
    };
    std::vector<std::size_t> trivial(k);
    for (std::size_t s = 0; s < eq.orbit_of.size(); ++s)
        if (eq.character_of[s] == 0) trivial[pos(eq.orbit_of[s])] = s;
    std::vector<std::vector<std::vector<std::int64_t>>> M(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t z = 0; z < eq.orbit_of.size(); ++z)
                M[a][b][pos(eq.orbit_of[z])] +=
                    eq.ring.at(trivial[a], trivial[b], z) * static_cast<std::int64_t>(eq.rep_dimension[z]);
    return M;
}

InvariantComparison compare_with_invariants(const Equivariantization& eq, const hecke::Basis& basis,
                                            const hecke::Basis& invariants, const hecke::FusionTable& invariant_table) {
    InvariantComparison out;
    std::vector<std::size_t> reps;
    for (auto o : eq.orbit_of)
        if (std::find(reps.begin(), reps.end(), o) == reps.end()) reps.push_back(o);
    if (invariants.size() != reps.size()) {
        out.verdict = Verdict::fail(std::to_string(invariants.size()) + " invariant functions but " +
                                    std::to_string(reps.size()) + " orbits");
        return out;
    }
    for (std::size_t i = 0; i < invariants.size(); ++i) {
        const auto coeffs = hecke::decompose(basis, invariants.elements[i]);
        if (!coeffs) {
            out.verdict = Verdict::fail("invariant function is outside the span of the basis", {i});
            return out;
        }
        std::size_t first = 0;
        while (first < coeffs->size() && (*coeffs)[first].is_zero()) ++first;
        const auto it = std::find(reps.begin(), reps.end(), first);
        if (it == reps.end()) {
            out.verdict = Verdict::fail("least term of an invariant function is not an orbit representative", {i});
            return out;
        }
        out.orbit_of_invariant.push_back(static_cast<std::size_t>(it - reps.begin()));
    }
    const auto M = forgetful_table(eq);
    const auto& pos = out.orbit_of_invariant;
    for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = 0; b < pos.size(); ++b)
            for (std::size_t c = 0; c < pos.size(); ++c)
                if (invariant_table.N[a][b][c] != M[pos[a]][pos[b]][pos[c]]) {
                    out.verdict = Verdict::fail("Gamma-invariant table gives " + std::to_string(invariant_table.N[a][b][c]) +
                                                    ", forgetful table gives " +
                                                    std::to_string(M[pos[a]][pos[b]][pos[c]]),
                                                {a, b, c});
                    return out;
                }
    out.verdict = Verdict::pass();
    return out;
}

// ---------------------------------------------------------------- constructors

GradedFusionRing from_metric_group(const metric::MetricGroup& m) {
    const auto& K = m.K();
    const std::size_t n = K.size();
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x) {
        const auto c = K.coords(x);
        if (c.empty()) {
            labels.push_back("0");
            continue;
        }
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        labels.push_back(s + ")");
    }
    std::vector<std::int64_t> N(n * n * n, 0);
    std::vector<std::size_t> dual(n);
    for (std::size_t x = 0; x < n; ++x) {
        dual[x] = K.neg(x);
        for (std::size_t y = 0; y < n; ++y) N[(x * n + y) * n + K.add(x, y)] = 1;
    }
    return GradedFusionRing::ungraded(std::move(labels), 0, std::move(N), std::move(dual));
}

GradedFusionRing from_hecke(const hecke::FusionTable& t, std::vector<std::string> labels, std::vector<Element> grading,
                            grp::GroupPtr gamma, std::vector<std::vector<std::size_t>> action) {
    const std::size_t n = t.n;
    if (labels.size() != n) throw std::invalid_argument("from_hecke: one label per basis element required");
    std::vector<std::int64_t> N(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (t.N[i][j][k] < 0) throw hecke::ModelViolation("negative structure constant in a Hecke table");
                N[(i * n + j) * n + k] = t.N[i][j][k];
            }
    auto r = GradedFusionRing::ungraded(std::move(labels), t.unit, std::move(N), t.dual);
    if (gamma) {
        r.gamma = std::move(gamma);
        r.grading = grading.empty() ? std::vector<Element>(n, r.gamma->id()) : std::move(grading);
        if (action.empty())
            for (Element g = 0; g < r.gamma->order(); ++g) action.push_back(identity_perm(n));
        r.action = std::move(action);
    }
    return r;
}

GradedFusionRing from_hecke_basis(const hecke::Basis& basis, const hecke::FusionTable& table) {
    const auto& d = *basis.datum;
    std::vector<std::string> labels;
    std::vector<Element> grading;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        labels.push_back("M[" + d.G().label(basis.base_point[i]) + "]");
        grading.push_back(static_cast<Element>(basis.coset[i]));
    }
    return from_hecke(table, std::move(labels), std::move(grading), d.gamma().group, hecke::gamma_action(basis));
}

bool grading_faithful(const GradedFusionRing& r) {
    std::set<Element> seen(r.grading.begin(), r.grading.end());
    return seen.size() == r.gamma->order();
}

}  // namespace heisidem::fusionring
