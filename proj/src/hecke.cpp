#include "heisidem/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace heisidem::hecke {

using exactnum::QmodZ;
using exactnum::root_of_unity;

namespace {

void require_same_datum(const EquivFn& a, const EquivFn& b) {
    if (a.datum() != b.datum()) throw std::invalid_argument("functions belong to different data");
}

/// Dense view: pointer to the stored value of every element, or null.
std::vector<const Cyclotomic*> dense(const EquivFn& f) {
    std::vector<const Cyclotomic*> out(f.datum()->G().order(), nullptr);
    for (const auto& [g, v] : f.values()) out[g] = &v;
    return out;
}

bool same_value(const Cyclotomic* a, const Cyclotomic& b) { return a ? *a == b : b.is_zero(); }

Cyclotomic inv_order_N(const ModelDatum& d) {
    return Cyclotomic(Rational(1, static_cast<std::int64_t>(d.N().size())));
}

Rational norm_squared(const Cyclotomic& c) {
    auto r = (c * c.conjugate()).as_rational();
    if (!r) throw ModelViolation("|value|^2 is not rational");
    return *r;
}

std::int64_t exact_sqrt(const Rational& r) {
    if (!r.is_integer() || r.num() < 0) return -1;
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(r.num()))));
    for (std::int64_t t = std::max<std::int64_t>(0, s - 2); t <= s + 2; ++t)
        if (t * t == r.num()) return t;
    return -1;
}

/// Index of the single nonzero coefficient, or nothing.
std::optional<std::size_t> single_term(const std::vector<Cyclotomic>& coeffs) {
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        if (hit) return std::nullopt;
        hit = k;
    }
    return hit;
}

}  // namespace

// ---------------------------------------------------------------- EquivFn

EquivFn::EquivFn(DatumPtr datum, std::vector<std::pair<Element, Cyclotomic>> values) : datum_(std::move(datum)) {
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < values.size();) {
        Element g = values[i].first;
        Cyclotomic sum = values[i].second;
        std::size_t j = i + 1;
        for (; j < values.size() && values[j].first == g; ++j) sum += values[j].second;
        sum = sum.reduced();
        if (!sum.is_zero()) values_.emplace_back(g, std::move(sum));
        i = j;
    }
}

EquivFn EquivFn::delta(DatumPtr datum, Element g, Cyclotomic value) {
    return EquivFn(std::move(datum), {{g, std::move(value)}});
}

Cyclotomic EquivFn::at(Element g) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), g,
                               [](const auto& p, Element x) { return p.first < x; });
    if (it == values_.end() || it->first != g) return Cyclotomic();
    return it->second;
}

std::vector<Element> EquivFn::support() const {
    std::vector<Element> out;
    out.reserve(values_.size());
    for (const auto& [g, v] : values_) out.push_back(g);
    return out;
}

EquivFn EquivFn::operator+(const EquivFn& o) const {
    require_same_datum(*this, o);
    auto all = values_;
    all.insert(all.end(), o.values_.begin(), o.values_.end());
    return EquivFn(datum_, std::move(all));
}

EquivFn EquivFn::operator-(const EquivFn& o) const { return *this + o.scaled(Cyclotomic(-1)); }

EquivFn EquivFn::scaled(const Cyclotomic& c) const {
    auto v = values_;
    for (auto& p : v) p.second *= c;
    return EquivFn(datum_, std::move(v));
}

bool operator==(const EquivFn& a, const EquivFn& b) {
    if (a.datum_ != b.datum_ || a.values_.size() != b.values_.size()) return false;
    for (std::size_t i = 0; i < a.values_.size(); ++i)
        if (a.values_[i].first != b.values_[i].first || !(a.values_[i].second == b.values_[i].second)) return false;
    return true;
}

// ---------------------------------------------------------------- operations

EquivFn convolve(const EquivFn& f, const EquivFn& g, unsigned jobs) {
    require_same_datum(f, g);
    const auto& G = f.datum()->G();
    const auto& fv = f.values();
    const auto& gv = g.values();
    const std::size_t n = G.order();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, fv.size()))));

    auto work = [&](std::size_t begin, std::size_t end, std::vector<Cyclotomic>& acc, std::vector<char>& touched) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [y, a] = fv[i];
            for (const auto& [z, b] : gv) {
                const Element x = G.mul(y, z);
                acc[x].add_product(a, b);
                touched[x] = 1;
            }
        }
    };

    std::vector<std::vector<Cyclotomic>> accs(jobs, std::vector<Cyclotomic>(n));
    std::vector<std::vector<char>> touched(jobs, std::vector<char>(n, 0));
    if (jobs == 1) {
        work(0, fv.size(), accs[0], touched[0]);
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (fv.size() + jobs - 1) / jobs;
        for (unsigned t = 0; t < jobs; ++t) {
            const std::size_t b = std::min(fv.size(), t * chunk), e = std::min(fv.size(), (t + 1) * chunk);
            threads.emplace_back(work, b, e, std::ref(accs[t]), std::ref(touched[t]));
        }
        for (auto& th : threads) th.join();
    }
    std::vector<std::pair<Element, Cyclotomic>> out;
    for (std::size_t x = 0; x < n; ++x) {
        bool any = false;
        Cyclotomic sum;
        for (unsigned t = 0; t < jobs; ++t) {
            if (!touched[t][x]) continue;
            if (!any) {
                sum = std::move(accs[t][x]);
                any = true;
            } else {
                sum += accs[t][x];
            }
        }
        if (any) out.emplace_back(static_cast<Element>(x), std::move(sum));
    }
    return EquivFn(f.datum(), std::move(out));
}

EquivFn idempotent_e(const DatumPtr& d) {
    std::vector<std::pair<Element, Cyclotomic>> v;
    const auto scale = inv_order_N(*d);
    for (auto n : d->N().members()) v.emplace_back(n, root_of_unity(d->chi_at(n)) * scale);
    return EquivFn(d, std::move(v));
}

EquivFn translate(const EquivFn& f, Element g, Side side) {
    const auto& G = f.datum()->G();
    auto v = f.values();
    for (auto& p : v) p.first = side == Side::right ? G.mul(p.first, g) : G.mul(g, p.first);
    return EquivFn(f.datum(), std::move(v));
}

EquivFn dual(const EquivFn& f) {
    const auto& G = f.datum()->G();
    auto v = f.values();
    for (auto& p : v) {
        p.first = G.inv(p.first);
        p.second = p.second.conjugate();
    }
    return EquivFn(f.datum(), std::move(v));
}

EquivFn conjugate_by(const EquivFn& f, Element x) {
    const auto& G = f.datum()->G();
    auto v = f.values();
    for (auto& p : v) p.first = G.conj(x, p.first);
    return EquivFn(f.datum(), std::move(v));
}

Cyclotomic inner(const EquivFn& a, const EquivFn& b) {
    require_same_datum(a, b);
    Cyclotomic sum;
    auto ia = a.values().begin(), ib = b.values().begin();
    while (ia != a.values().end() && ib != b.values().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            sum.add_product(ia->second, ib->second.conjugate());
            ++ia;
            ++ib;
        }
    }
    return sum.reduced();
}

namespace {

bool n_equivariant(const EquivFn& f) {
    const auto& d = *f.datum();
    const auto& G = d.G();
    const auto lookup = dense(f);
    for (const auto& [g, v] : f.values())
        for (auto n : d.N().members())
            if (!same_value(lookup[G.mul(n, g)], root_of_unity(d.chi_at(n)) * v)) return false;
    return true;
}

bool conjugation_invariant(const EquivFn& f, const std::vector<Element>& by) {
    const auto& G = f.datum()->G();
    const auto lookup = dense(f);
    for (const auto& [g, v] : f.values())
        for (auto x : by)
            if (!same_value(lookup[G.conj(x, g)], v)) return false;
    return true;
}

}  // namespace

bool is_in_eD(const EquivFn& f) {
    const bool pointwise = n_equivariant(f);
    const bool absorbed = convolve(idempotent_e(f.datum()), f) == f;
    if (pointwise != absorbed)
        throw ModelViolation("e * f = f and N-equivariance disagree; the idempotent is not modelled correctly");
    return pointwise;
}

bool is_in_eDH(const EquivFn& f) { return is_in_eD(f) && conjugation_invariant(f, f.datum()->H().members()); }

bool is_in_eDG(const EquivFn& f) {
    std::vector<Element> all(f.datum()->G().order());
    for (Element g = 0; g < all.size(); ++g) all[g] = g;
    return is_in_eD(f) && conjugation_invariant(f, all);
}

// ---------------------------------------------------------------- bases

void Basis::push_back(EquivFn f, std::size_t c, Element base, std::size_t w) {
    if (owner.empty()) owner.assign(datum->G().order(), -1);
    const auto idx = static_cast<std::int32_t>(elements.size());
    for (const auto& [g, v] : f.values()) {
        if (owner[g] >= 0) throw std::logic_error("basis supports overlap");
        owner[g] = idx;
    }
    elements.push_back(std::move(f));
    coset.push_back(c);
    base_point.push_back(base);
    weight.push_back(w);
}

namespace {

/// Propagates f(n x g x^{-1}) = chi(n) f(g) from f(base) = 1 over x in `movers`.
/// Returns the exponents on the orbit, or nothing on a contradiction.
std::optional<std::vector<std::pair<Element, QmodZ>>> propagate(const ModelDatum& d, Element base,
                                                                 const std::vector<Element>& movers,
                                                                 std::vector<std::optional<QmodZ>>& scratch) {
    const auto& G = d.G();
    std::vector<std::pair<Element, QmodZ>> assigned;
    bool consistent = true;
    for (auto x : movers) {
        const Element c = G.conj(x, base);
        for (auto n : d.N().members()) {
            const Element y = G.mul(n, c);
            const QmodZ& val = d.chi_at(n);
            auto& slot = scratch[y];
            if (!slot) {
                slot = val;
                assigned.emplace_back(y, val);
            } else if (*slot != val) {
                consistent = false;
            }
        }
    }
    for (auto& [y, _] : assigned) scratch[y].reset();
    if (!consistent) return std::nullopt;
    return assigned;
}

EquivFn from_exponents(const DatumPtr& d, const std::vector<std::pair<Element, QmodZ>>& exps) {
    std::vector<std::pair<Element, Cyclotomic>> v;
    v.reserve(exps.size());
    const auto scale = inv_order_N(*d);
    for (const auto& [g, q] : exps) v.emplace_back(g, root_of_unity(q) * scale);
    return EquivFn(d, std::move(v));
}

}  // namespace

Basis basis_eDH(const DatumPtr& d, std::size_t coset) {
    Basis b;
    b.datum = d;
    b.owner.assign(d->G().order(), -1);
    const auto census = model::orbits(*d, coset);
    std::vector<std::optional<QmodZ>> scratch(d->G().order());
    for (const auto& orbit : census.orbits) {
        auto exps = propagate(*d, orbit.base_point, d->H().members(), scratch);
        if (exps.has_value() != orbit.supported)
            throw ModelViolation("orbit of " + d->G().label(orbit.base_point) +
                                 (orbit.supported ? " is supported but carries no equivariant function"
                                                  : " carries an equivariant function but is not supported"));
        if (exps) b.push_back(from_exponents(d, *exps), coset, orbit.base_point, 1);
    }
    return b;
}

Basis basis_eDH_all(const DatumPtr& d) {
    Basis all;
    all.datum = d;
    all.owner.assign(d->G().order(), -1);
    for (std::size_t c = 0; c < d->n_cosets(); ++c) {
        auto b = basis_eDH(d, c);
        for (std::size_t i = 0; i < b.size(); ++i)
            all.push_back(std::move(b.elements[i]), b.coset[i], b.base_point[i], b.weight[i]);
    }
    return all;
}

Basis gamma_invariants(const DatumPtr& d) {
    const auto& G = d->G();
    Basis b;
    b.datum = d;
    b.owner.assign(G.order(), -1);
    std::vector<Element> all(G.order());
    for (Element g = 0; g < all.size(); ++g) all[g] = g;
    // U-orbit labels per element, to weight each G-orbit
    std::vector<std::pair<std::size_t, std::int32_t>> u_orbit(G.order());
    for (std::size_t c = 0; c < d->n_cosets(); ++c) {
        const auto census = model::orbits(*d, c);
        for (Element g = 0; g < G.order(); ++g)
            if (census.orbit_of[g] >= 0) u_orbit[g] = {c, census.orbit_of[g]};
    }
    std::vector<char> seen(G.order(), 0);
    std::vector<std::optional<QmodZ>> scratch(G.order());
    for (Element x = 0; x < G.order(); ++x) {
        if (seen[x]) continue;
        std::vector<Element> orbit;
        for (auto y : all)
            for (auto n : d->N().members()) {
                const Element z = G.mul(n, G.conj(y, x));
                if (!seen[z]) {
                    seen[z] = 1;
                    orbit.push_back(z);
                }
            }
        bool supported = true;
        for (auto y : all) {
            const Element c = grp::commutator(G, x, y);
            if (d->N().contains(c) && !d->chi_at(c).is_zero()) {
                supported = false;
                break;
            }
        }
        auto exps = propagate(*d, x, all, scratch);
        if (exps.has_value() != supported)
            throw ModelViolation("G-orbit of " + G.label(x) + ": consistency and support criterion disagree");
        if (!exps) continue;
        std::vector<std::pair<std::size_t, std::int32_t>> labels;
        for (auto z : orbit) labels.push_back(u_orbit[z]);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        b.push_back(from_exponents(d, *exps), d->coset_of(x), x, labels.size());
    }
    return b;
}

std::optional<std::vector<Cyclotomic>> decompose(const Basis& basis, const EquivFn& h) {
    if (h.datum() != basis.datum) throw std::invalid_argument("decompose: datum mismatch");
    const auto scale = Cyclotomic(static_cast<std::int64_t>(basis.datum->N().size()));
    std::vector<Cyclotomic> coeffs(basis.size());
    for (const auto& [g, v] : h.values())
        if (basis.owner[g] < 0) return std::nullopt;
    EquivFn rebuilt(basis.datum);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        coeffs[i] = (h.at(basis.base_point[i]) * scale).reduced();
        if (!coeffs[i].is_zero()) rebuilt = rebuilt + basis.elements[i].scaled(coeffs[i]);
    }
    if (!(rebuilt == h)) return std::nullopt;
    return coeffs;
}

FusionTable fusion_table(const Basis& basis, unsigned jobs) {
    const auto& d = *basis.datum;
    FusionTable t;
    t.n = basis.size();
    const auto e = idempotent_e(basis.datum);
    bool have_unit = false;
    for (std::size_t i = 0; i < t.n; ++i)
        if (basis.elements[i] == e) {
            t.unit = i;
            have_unit = true;
        }
    if (!have_unit) throw ModelViolation("the idempotent e is not a basis element");

    const Rational order_N(static_cast<std::int64_t>(d.N().size()));
    for (std::size_t i = 0; i < t.n; ++i) {
        Rational norm;
        for (const auto& [g, v] : basis.elements[i].values()) norm += norm_squared(v);
        t.c.push_back(order_N * norm / Rational(static_cast<std::int64_t>(basis.weight[i])));
        auto coeffs = decompose(basis, dual(basis.elements[i]));
        auto j = coeffs ? single_term(*coeffs) : std::nullopt;
        if (!j) throw ModelViolation("the dual of basis element " + std::to_string(i) + " is not a basis element");
        t.dual.push_back(*j);
    }
    t.a.assign(t.n, std::vector<std::vector<Cyclotomic>>(t.n));
    t.N.assign(t.n, std::vector<std::vector<std::int64_t>>(t.n, std::vector<std::int64_t>(t.n, 0)));
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) {
            auto coeffs = decompose(basis, convolve(basis.elements[i], basis.elements[j], jobs));
            if (!coeffs)
                throw ModelViolation("product of basis elements " + std::to_string(i) + " and " + std::to_string(j) +
                                     " leaves the span of the basis");
            for (std::size_t k = 0; k < t.n; ++k) {
                const auto& a = (*coeffs)[k];
                if (a.is_zero()) continue;
                const Rational sq = norm_squared(a) * t.c[k] / (t.c[i] * t.c[j]);
                const auto m = exact_sqrt(sq);
                if (m < 0)
                    throw ModelViolation("rescaled structure constant N_" + std::to_string(i) + "," + std::to_string(j) +
                                         "^" + std::to_string(k) + " has square " + sq.to_string() +
                                         ", not a square integer");
                t.N[i][j][k] = m;
            }
            t.a[i][j] = std::move(*coeffs);
        }
    return t;
}

std::vector<std::vector<std::size_t>> gamma_action(const Basis& basis) {
    const auto& d = *basis.datum;
    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t g = 0; g < d.n_cosets(); ++g) {
        std::vector<std::size_t> perm;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto coeffs = decompose(basis, conjugate_by(basis.elements[i], d.coset_rep(g)));
            auto j = coeffs ? single_term(*coeffs) : std::nullopt;
            if (!j)
                throw ModelViolation("conjugating basis element " + std::to_string(i) + " by " +
                                     d.G().label(d.coset_rep(g)) + " leaves the basis");
            perm.push_back(*j);
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

namespace {

std::optional<Cyclotomic> proportionality(const EquivFn& a, const EquivFn& f) {
    if (f.is_zero() || a.values().size() != f.values().size()) return std::nullopt;
    const auto& [g0, v0] = f.values().front();
    const Cyclotomic lambda = (a.at(g0) / v0).reduced();
    if (lambda.is_zero() || !(a == f.scaled(lambda))) return std::nullopt;
    return lambda;
}

}  // namespace

model::SubgroupRef k_sub_m(const EquivFn& f, const model::SubgroupRef& K) {
    std::vector<Element> members;
    for (auto k : K.members())
        if (proportionality(translate(f, k), f)) members.push_back(k);
    return model::SubgroupRef::from_members(K.parent(), std::move(members));
}

DualDecomposition dual_convolve(const EquivFn& f, const model::SubgroupRef& K, unsigned jobs) {
    const auto& d = *f.datum();
    const auto& G = d.G();
    const auto KM = k_sub_m(f, K);
    const auto h = convolve(dual(f), f, jobs);
    DualDecomposition out;
    std::vector<char> covered(G.order(), 0);
    const auto e = idempotent_e(f.datum());
    EquivFn rebuilt(f.datum());
    const Cyclotomic order_N(static_cast<std::int64_t>(d.N().size()));
    for (auto k : KM.members()) {
        if (covered[k]) continue;
        std::vector<Element> coset;
        for (auto n : d.N().members()) {
            covered[G.mul(n, k)] = 1;
            coset.push_back(G.mul(n, k));
        }
        std::sort(coset.begin(), coset.end());
        Element rep = coset.front();
        for (auto c : coset)
            if (translate(f, c) == f) {
                rep = c;
                break;
            }
        const Cyclotomic coeff = (h.at(rep) * order_N).reduced();
        out.representatives.push_back(rep);
        out.coefficients.push_back(coeff);
        rebuilt = rebuilt + translate(e, rep).scaled(coeff);
    }
    if (!(rebuilt == h)) throw ModelViolation("f^v * f has terms outside the translates e^k with k in K_f");
    out.common_coefficient =
        !out.coefficients.empty() && !out.coefficients.front().is_zero() &&
        std::all_of(out.coefficients.begin(), out.coefficients.end(),
                    [&](const Cyclotomic& c) { return c == out.coefficients.front(); });
    return out;
}

bool crossed_commute_check(const EquivFn& f, const EquivFn& g, unsigned jobs) {
    require_same_datum(f, g);
    const auto& d = *f.datum();
    if (f.is_zero()) return g.is_zero() || convolve(f, g, jobs).is_zero();
    const std::size_t coset = d.coset_of(f.values().front().first);
    for (const auto& [x, v] : f.values())
        if (d.coset_of(x) != coset) throw std::invalid_argument("crossed check: f is not supported on a single coset");
    if (!conjugation_invariant(g, d.H().members()))
        throw std::invalid_argument("crossed check: g is not H-conjugation invariant");
    return convolve(f, g, jobs) == convolve(conjugate_by(g, d.coset_rep(coset)), f, jobs);
}

}  // namespace heisidem::hecke
