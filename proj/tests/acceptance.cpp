// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// All comparisons are exact; the only tolerance is the runtime budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "heisidem/pipeline.hpp"

using namespace heisidem;
using exactnum::Cyclotomic;
using exactnum::QmodZ;
using grp::Element;

namespace {

constexpr double kRuntimeBudgetSeconds = 10.0;
const std::string kFixtures = HEISIDEM_FIXTURES;
const std::vector<std::string> kData = {"heis3-faithful", "heis9-order3", "heis3-sigma", "heis9-sigma"};

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) detail << what;
            ok = false;
        }
    }
};

pipeline::Job load(const std::string& name) { return pipeline::load_config(kFixtures + "/" + name + ".json"); }

struct Prepared {
    hecke::DatumPtr datum;
    hecke::Basis basis;
    hecke::FusionTable table;
};

Prepared prepare(const std::string& name) {
    auto job = load(name);
    Prepared p{job.datum, hecke::basis_eDH_all(job.datum), {}};
    p.table = hecke::fusion_table(p.basis);
    return p;
}

std::map<std::string, Prepared>& prepared() {
    static std::map<std::string, Prepared> cache;
    if (cache.empty())
        for (const auto& n : kData) cache.emplace(n, prepare(n));
    return cache;
}

Outcome c1_idempotent_and_unit() {
    Outcome o;
    for (const auto& name : kData) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = pipeline::run(load(name));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < kRuntimeBudgetSeconds, name + ": runtime " + std::to_string(secs) + " s");
        o.require(result.exit_code == 0, name + ": pipeline verdicts failed");
        const auto& p = prepared().at(name);
        const auto e = hecke::idempotent_e(p.datum);
        o.require(hecke::convolve(e, e) == e, name + ": e*e != e");
        for (const auto& f : p.basis.elements) o.require(hecke::convolve(e, f) == f, name + ": e*f != f");
    }
    if (o.ok) o.detail << "4 fixtures, budget " << kRuntimeBudgetSeconds << " s each";
    return o;
}

Outcome c2_support_theorem() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& name : kData) {
        const auto& p = prepared().at(name);
        const auto& d = *p.datum;
        for (std::size_t i = 0; i < p.basis.size(); ++i) {
            const auto locus = model::support_locus(d, p.basis.coset[i]);
            const std::set<Element> L(locus.begin(), locus.end());
            for (Element g = 0; g < d.G().order(); ++g, ++checked)
                if (!p.basis.elements[i].at(g).is_zero())
                    o.require(L.count(g) > 0, name + ": basis function nonzero outside support_locus at " + d.G().label(g));
        }
    }
    if (o.ok) o.detail << checked << " (function, element) pairs";
    return o;
}

Outcome c3_pointed_fusion() {
    Outcome o;
    const auto& p = prepared().at("heis9-order3");
    const auto& G = p.datum->G();
    o.require(p.basis.size() == 9, "expected 9 simples, got " + std::to_string(p.basis.size()));
    if (!o.ok) return o;
    // Cayley table predicted from base points: f_i * f_j = f_k with base_k in N base_i base_j.
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) {
            const auto prod = G.mul(p.basis.base_point[i], p.basis.base_point[j]);
            const auto k = p.basis.owner[prod];
            o.require(k >= 0, "product of base points is unsupported");
            if (k < 0) return o;
            o.require(hecke::convolve(p.basis.elements[i], p.basis.elements[j]) == p.basis.elements[static_cast<std::size_t>(k)],
                      "f_i * f_j differs from the predicted simple");
        }
    // (Z/3)^2: commutative, every non-unit of order 3, unit = e.
    const auto e = hecke::idempotent_e(p.datum);
    o.require(p.basis.elements[0] == e, "first simple is not e");
    for (std::size_t i = 0; i < 9; ++i) {
        auto sq = hecke::convolve(p.basis.elements[i], p.basis.elements[i]);
        auto cube = hecke::convolve(sq, p.basis.elements[i]);
        o.require(cube == e, "an element of order other than 1 or 3");
        o.require(i == 0 || !(sq == p.basis.elements[i]), "non-unit idempotent");
        for (std::size_t j = 0; j < 9; ++j)
            o.require(p.table.N[i][j] == p.table.N[j][i], "table not commutative");
    }
    if (o.ok) o.detail << "9 simples, 81 products exact, group (Z/3)^2";
    return o;
}

Outcome c4_duality_decomposition() {
    Outcome o;
    std::size_t simples = 0;
    for (const auto& name : kData) {
        const auto& p = prepared().at(name);
        const auto K = model::kernel_K(*p.datum).K;
        const auto e = hecke::idempotent_e(p.datum);
        for (const auto& f : p.basis.elements) {
            ++simples;
            const auto lhs = hecke::convolve(hecke::dual(f), f);
            // c from the value at the identity: (f^v * f)(1) = c e(1)
            const auto c = lhs.at(p.datum->G().id()) * e.at(p.datum->G().id()).inverse();
            o.require(!c.is_zero(), name + ": zero coefficient");
            // sum over Nk in K_f / N of c e^k, each coset represented by a k with f^k = f
            const auto KM = hecke::k_sub_m(f, K);
            std::set<Element> covered;
            hecke::EquivFn rhs(p.datum);
            for (auto k : KM.members()) {
                if (covered.count(k)) continue;
                std::optional<Element> rep;
                for (auto n : p.datum->N().members()) {
                    const auto nk = p.datum->G().mul(n, k);
                    covered.insert(nk);
                    if (!rep && hecke::translate(f, nk) == f) rep = nk;
                }
                o.require(rep.has_value(), name + ": no coset representative fixes f");
                if (rep) rhs = rhs + hecke::translate(e, *rep).scaled(c);
            }
            o.require(lhs == rhs, name + ": f^v * f is not c * sum e^k");
        }
    }
    if (o.ok) o.detail << simples << " simples";
    return o;
}

Outcome c5_crossed() {
    Outcome o;
    const auto& p = prepared().at("heis3-sigma");
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < p.basis.size(); ++i) {
        if (p.basis.coset[i] == 0) continue;
        const auto rep = p.datum->coset_rep(p.basis.coset[i]);
        for (const auto& g : p.basis.elements) {
            ++pairs;
            const auto lhs = hecke::convolve(p.basis.elements[i], g);
            const auto rhs = hecke::convolve(hecke::conjugate_by(g, rep), p.basis.elements[i]);
            o.require(lhs == rhs, "f * g != (gamma^-1)^* g * f");
        }
    }
    o.require(pairs > 0, "no pairs with f in a nontrivial coset");
    if (o.ok) o.detail << pairs << " pairs";
    return o;
}

Outcome c6_metric() {
    Outcome o;
    auto job = load("hyperbolic3-metric");
    const auto& cfg = job.metric;
    metric::FiniteAbelian K(cfg["invariant_factors"].get<std::vector<std::int64_t>>());
    std::vector<std::vector<QmodZ>> B;
    for (const auto& row : cfg["B"]) {
        B.emplace_back();
        for (const auto& q : row) B.back().push_back(QmodZ::parse(q.get<std::string>()));
    }
    std::vector<QmodZ> theta;
    for (const auto& q : cfg["theta"]) theta.push_back(QmodZ::parse(q.get<std::string>()));
    metric::MetricGroup m(K, B, theta);
    o.require(bool(metric::validate_polarization(m)), "polarization");
    const auto md = metric::modular_data(m);
    o.require(md.gauss * md.gauss.conjugate() == Cyclotomic(9), "|gauss|^2 != 9");
    const auto S = md.S_tilde();
    const auto T = md.T_matrix();
    const std::size_t n = 9;
    auto mul = [&](const std::vector<std::vector<Cyclotomic>>& a, const std::vector<std::vector<Cyclotomic>>& b) {
        std::vector<std::vector<Cyclotomic>> c(n, std::vector<Cyclotomic>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    std::vector<std::vector<Cyclotomic>> Sdag(n, std::vector<Cyclotomic>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Sdag[i][j] = S[j][i].conjugate();
    const auto SS = mul(S, Sdag);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.require(SS[i][j] == Cyclotomic(i == j ? 9 : 0), "S S^dagger != 9 I");
    const auto ST = mul(S, T);
    const auto lhs = mul(mul(ST, ST), ST);
    const auto S2 = mul(S, S);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.require(lhs[i][j] == md.gauss * S2[i][j], "(S T)^3 != gauss S^2");
    o.require(bool(metric::verlinde_check(md, K)), "Verlinde");
    if (o.ok) o.detail << "gauss sum " << md.gauss.to_string() << ", 729 Verlinde triples";
    return o;
}

Outcome c7_equivariantization() {
    Outcome o;
    // third datum: Heis(3) x| sigma with trivial chi, so every coset is supported
    const auto trivial_chi = pipeline::parse_config(R"cfg({
      "schema_version": 1, "name": "heis3-sigma-trivial",
      "construction": {"family": "semidirect", "parameters": {"base": {"family": "heisenberg", "parameters": {"modulus": 3}}, "automorphisms": ["negate_xy"]}},
      "subgroups": {"H": "base", "N": "center"},
      "character": {"generators": ["(0,0,1)"], "exponents": ["0"]},
      "tasks": ["validate"]
    })cfg",
                                                    "inline");
    std::vector<std::pair<std::string, Prepared>> data;
    for (const std::string name : {"heis3-sigma", "heis9-sigma"}) data.emplace_back(name, prepared().at(name));
    Prepared third{trivial_chi.datum, hecke::basis_eDH_all(trivial_chi.datum), {}};
    third.table = hecke::fusion_table(third.basis);
    data.emplace_back(trivial_chi.name, std::move(third));

    std::vector<std::string> summary;
    for (const auto& [name, p] : data) {
        const auto ring = fusionring::from_hecke_basis(p.basis, p.table);
        const auto eq = fusionring::equivariantize(ring);
        const auto gi = hecke::gamma_invariants(p.datum);
        const auto cmp = fusionring::compare_with_invariants(eq, p.basis, gi, hecke::fusion_table(gi));
        o.require(bool(cmp.verdict), name + ": " + cmp.verdict.message);
        summary.push_back(name + " rank " + std::to_string(eq.ring.size()) + " vs " + std::to_string(gi.size()) +
                          " invariants");
    }
    if (o.ok)
        for (std::size_t i = 0; i < summary.size(); ++i) o.detail << (i ? "; " : "") << summary[i];
    return o;
}

Outcome c8_certifier() {
    Outcome o;
    std::vector<fusionring::GradedFusionRing> rings;
    for (const auto& name : kData) {
        const auto& p = prepared().at(name);
        rings.push_back(fusionring::from_hecke_basis(p.basis, p.table));
        const auto c = fusionring::certify_rigidity(rings.back());
        o.require(c.issued, name + ": certificate refused: " + c.refusal.message);
    }
    o.require(fusionring::certify_rigidity(fusionring::from_metric_group(metric::hyperbolic(3))).issued,
              "hyperbolic metric ring refused");

    auto refused_with_witness = [&](const fusionring::GradedFusionRing& r, const std::string& what) {
        const auto c = fusionring::certify_rigidity(r);
        o.require(!c.issued, what + " was certified");
        o.require(!c.refusal.witness.empty(), what + " refused without a witness");
    };
    // corrupted dual: exchange the duals of two distinct non-self-dual simples
    auto dual = rings[1];
    std::size_t a = 1;
    while (dual.dual[a] == a) ++a;
    const auto b = dual.dual[a];
    std::size_t c = 1;
    while (c == a || c == b || dual.dual[c] == c) ++c;
    std::swap(dual.dual[a], dual.dual[c]);
    refused_with_witness(dual, "corrupted dual");
    // corrupted associativity: move one product onto another simple
    auto assoc = rings[1];
    for (std::size_t k = 0; k < assoc.size(); ++k)
        if (assoc.at(1, 2, k) == 1) {
            assoc.at(1, 2, k) = 0;
            assoc.at(1, 2, (k + 1) % assoc.size() == 0 ? 1 : (k + 1) % assoc.size()) = 1;
            break;
        }
    refused_with_witness(assoc, "corrupted associativity");
    // non-pointed trivial component: tau tau = 1 + tau
    refused_with_witness(fusionring::GradedFusionRing::ungraded({"1", "tau"}, 0, {1, 0, 0, 1, 0, 1, 1, 1}, {0, 1}),
                         "Fibonacci ring");
    // and the equivariantized heis9-sigma ring, whose degree-1 part is not pointed
    refused_with_witness(fusionring::equivariantize(rings[3]).ring, "equivariantized ring");
    if (o.ok) o.detail << "5 certificates issued, 4 mutations refused";
    return o;
}

Outcome c9_determinism() {
    Outcome o;
    for (const auto& name : kData) {
        const auto job = load(name);
        pipeline::RunOptions one, many;
        many.jobs = 4;
        const auto a = io::dump(pipeline::run(job, one).report);
        const auto b = io::dump(pipeline::run(job, one).report);
        const auto c = io::dump(pipeline::run(job, many).report);
        o.require(a == b, name + ": repeated runs differ");
        o.require(a == c, name + ": --jobs 4 differs from --jobs 1");
    }
    if (o.ok) o.detail << "byte-identical across repeated runs and job counts";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 idempotency and unit", c1_idempotent_and_unit},
        {"2 support theorem", c2_support_theorem},
        {"3 pointed fusion on Heis(9), chi of order 3", c3_pointed_fusion},
        {"4 duality decomposition", c4_duality_decomposition},
        {"5 crossed-braiding identity", c5_crossed},
        {"6 polarization and modularity", c6_metric},
        {"7 equivariantization oracle", c7_equivariantization},
        {"8 rigidity certifier", c8_certifier},
        {"9 determinism", c9_determinism},
    };
    int failures = 0;
    for (const auto& [name, f] : criteria) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.detail.str() << ")" << std::endl;
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
