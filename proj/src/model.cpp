#include "heisidem/model.hpp"

#include <algorithm>
#include <set>

namespace heisidem::model {

using grp::commutator;

ModelDatum::ModelDatum(SubgroupRef H, SubgroupRef N, MultChar chi)
    : H_(std::move(H)), N_(std::move(N)), chi_(std::move(chi)) {
    if (H_.parent() != N_.parent()) throw std::invalid_argument("H and N live in different groups");
    if (!N_.is_subset_of(H_)) throw std::invalid_argument("N is not contained in H");
    if (chi_.values.size() != N_.size()) throw std::invalid_argument("character is not defined on all of N");
}

const grp::GroupQuotient& ModelDatum::gamma() const {
    if (!gamma_) {
        try {
            gamma_ = std::make_shared<grp::GroupQuotient>(grp::quotient_group(H_));
        } catch (const std::invalid_argument& e) {
            throw ModelViolation(e.what());
        }
    }
    return *gamma_;
}

std::vector<Element> ModelDatum::coset_members(std::size_t coset) const {
    const auto& q = gamma();
    std::vector<Element> out;
    out.reserve(H_.size());
    for (Element g = 0; g < G().order(); ++g)
        if (q.coset_of[g] == coset) out.push_back(g);
    return out;
}

const QuotientPtr& ModelDatum::HmodN() const {
    if (!hmodn_) {
        try {
            hmodn_ = grp::AbelianQuotient::make(H_, N_);
        } catch (const std::invalid_argument& e) {
            throw ModelViolation(e.what());
        }
    }
    return hmodn_;
}

bool ValidationReport::admissible() const {
    return std::none_of(issues.begin(), issues.end(),
                        [](const Issue& i) { return i.severity == Issue::Severity::error; });
}

ValidationReport validate(const ModelDatum& d) {
    ValidationReport rep;
    const auto& G = d.G();
    auto error = [&](std::string code, std::string msg, std::vector<Element> w) {
        rep.issues.push_back({Issue::Severity::error, std::move(code), std::move(msg), std::move(w)});
    };
    const auto whole = SubgroupRef::whole(d.group_ptr());
    if (auto w = d.H().normality_witness(whole))
        error("h_not_normal", "H is not normal in G: g h g^-1 leaves H for g = " + G.label(w->first) +
                                  ", h = " + G.label(w->second), {w->first, w->second});
    const auto n_witness = d.N().normality_witness(whole);
    if (n_witness)
        error("n_not_normal", "N is not normal in G: g n g^-1 leaves N for g = " + G.label(n_witness->first) +
                                  ", n = " + G.label(n_witness->second), {n_witness->first, n_witness->second});
    bool commutative = true;
    for (auto a : d.H().members()) {
        for (auto b : d.H().members()) {
            if (!d.N().contains(commutator(G, a, b))) {
                error("quotient_not_commutative",
                      "H/N is not commutative: [" + G.label(a) + ", " + G.label(b) + "] lies outside N", {a, b});
                commutative = false;
                break;
            }
        }
        if (!commutative) break;
    }
    if (auto w = grp::multiplicativity_witness(d.N(), d.chi()))
        error("chi_not_multiplicative",
              "chi(ab) != chi(a) + chi(b) for a = " + G.label(w->first) + ", b = " + G.label(w->second),
              {w->first, w->second});
    if (!n_witness) {
        bool done = false;
        for (Element g = 0; g < G.order() && !done; ++g)
            for (auto n : d.N().members())
                if (d.chi_at(G.conj(g, n)) != d.chi_at(n)) {
                    error("chi_not_invariant",
                          "chi is not G-invariant: chi(g n g^-1) = " + d.chi_at(G.conj(g, n)).to_string() +
                              " but chi(n) = " + d.chi_at(n).to_string() + " for g = " + G.label(g) +
                              ", n = " + G.label(n),
                          {g, n});
                    done = true;
                    break;
                }
    }
    if (!rep.admissible()) return rep;

    const auto phi = phi_lambda(d);
    if (phi.kernel.size() != phi.cokernel_order)
        rep.issues.push_back({Issue::Severity::warning, "isogeny_condition",
                              "|ker phi| = " + std::to_string(phi.kernel.size()) +
                                  " differs from |coker phi| = " + std::to_string(phi.cokernel_order),
                              {}});
    if (phi.A->size() > 1 && phi.kernel.size() == phi.A->size())
        rep.issues.push_back({Issue::Severity::warning, "degenerate_kernel",
                              "phi is trivial, so K = H and every orbit in H is supported", {}});
    return rep;
}

void require_admissible(const ModelDatum& d) {
    auto rep = validate(d);
    for (const auto& i : rep.issues)
        if (i.severity == Issue::Severity::error) throw ModelViolation(i.code + ": " + i.message);
}

SubgroupRef h_sub_g(const ModelDatum& d, Element g) {
    const auto& G = d.G();
    std::vector<Element> members;
    for (auto h : d.H().members())
        if (d.N().contains(commutator(G, g, h))) members.push_back(h);
    return SubgroupRef::from_members(d.group_ptr(), std::move(members));
}

PhiLambda phi_lambda(const ModelDatum& d) {
    const auto& G = d.G();
    PhiLambda out;
    out.A = d.HmodN();
    const auto& A = *out.A;
    const auto& reps = A.representatives();
    const std::size_t m = A.size();
    out.table.assign(m, std::vector<QmodZ>(m));
    for (std::size_t a2 = 0; a2 < m; ++a2)
        for (std::size_t a = 0; a < m; ++a) out.table[a2][a] = d.chi_at(commutator(G, reps[a2], reps[a]));
    // the value must not depend on the coset representatives
    for (auto h2 : d.H().members())
        for (auto h : d.H().members()) {
            const Element c = commutator(G, h2, h);
            if (!d.N().contains(c) || d.chi_at(c) != out.table[*A.coset_of(h2)][*A.coset_of(h)])
                throw ModelViolation("phi is not well defined on cosets at (" + G.label(h2) + ", " + G.label(h) + ")");
        }
    std::set<std::vector<QmodZ>> image;
    for (std::size_t a2 = 0; a2 < m; ++a2) {
        image.insert(out.table[a2]);
        if (std::all_of(out.table[a2].begin(), out.table[a2].end(), [](const QmodZ& q) { return q.is_zero(); }))
            out.kernel.push_back(a2);
    }
    out.cokernel_order = m / image.size();
    return out;
}

KernelK kernel_K(const ModelDatum& d) {
    const auto phi = phi_lambda(d);
    std::vector<char> in_kernel(phi.A->size(), 0);
    for (auto a : phi.kernel) in_kernel[a] = 1;
    std::vector<Element> members;
    for (auto h : d.H().members())
        if (in_kernel[*phi.A->coset_of(h)]) members.push_back(h);
    auto K = SubgroupRef::from_members(d.group_ptr(), std::move(members));
    auto KmodN = grp::AbelianQuotient::make(K, d.N());
    return {std::move(K), std::move(KmodN)};
}

namespace {

bool supported_at(const ModelDatum& d, Element g) {
    const auto& G = d.G();
    for (auto h : d.H().members()) {
        const Element c = commutator(G, g, h);
        if (d.N().contains(c) && !d.chi_at(c).is_zero()) return false;
    }
    return true;
}

}  // namespace

std::vector<Element> support_locus(const ModelDatum& d, std::size_t coset) {
    std::vector<Element> out;
    for (auto g : d.coset_members(coset))
        if (supported_at(d, g)) out.push_back(g);
    return out;
}

std::size_t CosetCensus::n_supported() const {
    return static_cast<std::size_t>(
        std::count_if(orbits.begin(), orbits.end(), [](const OrbitRecord& o) { return o.supported; }));
}

CosetCensus orbits(const ModelDatum& d, std::size_t coset) {
    const auto& G = d.G();
    CosetCensus census;
    census.coset = coset;
    census.orbit_of.assign(G.order(), -1);
    std::vector<char> seen(G.order(), 0);
    for (auto g : d.coset_members(coset)) {
        if (census.orbit_of[g] >= 0) continue;
        const auto idx = static_cast<std::int32_t>(census.orbits.size());
        OrbitRecord rec;
        rec.coset = coset;
        rec.base_point = g;
        std::vector<Element> conj_class;
        for (auto h : d.H().members()) {
            const Element c = G.conj(h, g);
            if (!seen[c]) {
                seen[c] = 1;
                conj_class.push_back(c);
            }
        }
        for (auto c : conj_class) seen[c] = 0;
        for (auto c : conj_class)
            for (auto n : d.N().members()) {
                const Element x = G.mul(n, c);
                if (census.orbit_of[x] < 0) {
                    census.orbit_of[x] = idx;
                    rec.members.push_back(x);
                }
            }
        std::sort(rec.members.begin(), rec.members.end());
        for (auto h : d.H().members()) {
            const Element c = commutator(G, g, h);
            if (d.N().contains(c)) rec.stabilizer.emplace_back(h, G.inv(c));
        }
        rec.supported = supported_at(d, g);
        census.orbits.push_back(std::move(rec));
    }
    return census;
}

}  // namespace heisidem::model
