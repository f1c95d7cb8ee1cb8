#include "heisidem/io.hpp"

#include <map>

namespace heisidem::io {

using exactnum::Cyclotomic;
using exactnum::QmodZ;
using exactnum::Rational;
using grp::Element;

namespace {

const json& member(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw FormatError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(where, "missing key '" + key + "'");
    return *it;
}

std::size_t index_of(const std::map<std::string, std::size_t>& by_label, const json& label, const std::string& where) {
    if (!label.is_string()) throw FormatError(where, "expected a label string");
    auto it = by_label.find(label.get<std::string>());
    if (it == by_label.end()) throw FormatError(where, "unknown label '" + label.get<std::string>() + "'");
    return it->second;
}

std::map<std::string, std::size_t> label_index(const std::vector<std::string>& labels, const std::string& where) {
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!m.emplace(labels[i], i).second) throw FormatError(where, "duplicate label '" + labels[i] + "'");
    return m;
}

template <class T>
std::vector<T> array_of(const json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where, "expected an array");
    try {
        return j.get<std::vector<T>>();
    } catch (const json::exception& e) {
        throw FormatError(where, std::string("wrong element type: ") + e.what());
    }
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rational_json(const Rational& r) { return r.to_string(); }

json qmodz_json(const QmodZ& q) { return q.to_string(); }

QmodZ qmodz_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return QmodZ(j.get<std::int64_t>(), 1);
    if (!j.is_string()) throw FormatError(where, "expected a rational string \"a/b\"");
    try {
        return QmodZ::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw FormatError(where, "not a rational: " + j.get<std::string>());
    }
}

json cyclotomic_json(const Cyclotomic& c) {
    if (auto r = c.as_rational()) return json{{"order", 1}, {"coeffs", json::array({r->to_string()})}};
    const auto red = c.reduced();
    const auto phi = static_cast<std::size_t>(exactnum::euler_phi(red.order()));
    json coeffs = json::array();
    for (std::size_t i = 0; i < phi; ++i) coeffs.push_back(red.coeffs()[i].to_string());
    return json{{"order", red.order()}, {"coeffs", coeffs}};
}

json verdict_json(const Verdict& v) {
    json j{{"ok", v.ok}};
    if (!v.ok) {
        j["message"] = v.message;
        j["witness"] = v.witness;
    }
    return j;
}

json group_json(const grp::TableGroup& g) {
    const std::size_t n = g.order();
    json mul = json::array();
    for (Element a = 0; a < n; ++a) {
        std::vector<Element> row(n);
        for (Element b = 0; b < n; ++b) row[b] = g.mul(a, b);
        mul.push_back(row);
    }
    json designated = json::object();
    for (const auto& [name, gens] : g.designated()) designated[name] = gens;
    return json{{"order", n}, {"labels", g.labels()}, {"mul", mul}, {"designated_subgroups", designated}};
}

grp::GroupPtr group_from_json(const json& j, grp::TableOptions options) {
    const auto rows = member(j, "mul", "/mul");
    if (!rows.is_array()) throw FormatError("/mul", "expected an array of rows");
    std::vector<std::vector<Element>> mul;
    for (std::size_t i = 0; i < rows.size(); ++i) mul.push_back(array_of<Element>(rows[i], "/mul/" + std::to_string(i)));
    if (j.contains("order") && j["order"] != mul.size()) throw FormatError("/order", "order does not match the table");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = array_of<std::string>(j["labels"], "/labels");
    grp::DesignatedMap designated;
    if (j.contains("designated_subgroups")) {
        if (!j["designated_subgroups"].is_object()) throw FormatError("/designated_subgroups", "expected an object");
        for (const auto& [name, gens] : j["designated_subgroups"].items())
            designated[name] = array_of<Element>(gens, "/designated_subgroups/" + name);
    }
    try {
        return grp::TableGroup::from_table(mul, std::move(labels), std::move(designated), options);
    } catch (const std::invalid_argument& e) {
        throw FormatError("/mul", e.what());
    }
}

json validation_json(const model::ValidationReport& r, const grp::TableGroup& G) {
    json issues = json::array();
    for (const auto& i : r.issues) {
        std::vector<std::string> witness;
        for (auto w : i.witness) witness.push_back(G.label(w));
        issues.push_back({{"severity", i.severity == model::Issue::Severity::error ? "error" : "warning"},
                          {"code", i.code},
                          {"message", i.message},
                          {"witness", witness}});
    }
    return json{{"admissible", r.admissible()}, {"issues", issues}};
}

json census_json(const model::ModelDatum& d, const model::CosetCensus& c) {
    const auto& G = d.G();
    std::vector<std::size_t> sizes, stabs;
    json orbits = json::array();
    for (const auto& o : c.orbits) {
        sizes.push_back(o.members.size());
        stabs.push_back(o.stabilizer.size());
        orbits.push_back({{"base_point", G.label(o.base_point)},
                          {"size", o.members.size()},
                          {"stabilizer_order", o.stabilizer.size()},
                          {"supported", o.supported}});
    }
    return json{{"coset", c.coset},
                {"representative", G.label(d.coset_rep(c.coset))},
                {"n_orbits", c.orbits.size()},
                {"n_supported", c.n_supported()},
                {"orbit_sizes", sizes},
                {"stabilizer_orders", stabs},
                {"orbits", orbits}};
}

json basis_json(const hecke::Basis& b, bool values) {
    const auto& G = b.datum->G();
    json out = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto& f = b.elements[i];
        json e{{"label", "M[" + G.label(b.base_point[i]) + "]"},
               {"coset", b.coset[i]},
               {"base_point", G.label(b.base_point[i])},
               {"support_size", f.values().size()},
               {"weight", b.weight[i]},
               {"value_at_base_point", cyclotomic_json(f.at(b.base_point[i]))}};
        if (values) {
            json vs = json::array();
            for (const auto& [g, v] : f.values()) vs.push_back({{"element", G.label(g)}, {"value", cyclotomic_json(v)}});
            e["values"] = vs;
        }
        out.push_back(e);
    }
    return out;
}

json fusion_table_json(const hecke::FusionTable& t, const std::vector<std::string>& labels) {
    json N = json::array(), a = json::array();
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j)
            for (std::size_t k = 0; k < t.n; ++k) {
                if (t.N[i][j][k] != 0) N.push_back({labels[i], labels[j], labels[k], t.N[i][j][k]});
                if (!t.a[i][j][k].is_zero())
                    a.push_back({{"i", labels[i]}, {"j", labels[j]}, {"k", labels[k]}, {"value", cyclotomic_json(t.a[i][j][k])}});
            }
    std::vector<std::string> c, dual;
    for (std::size_t i = 0; i < t.n; ++i) {
        c.push_back(t.c[i].to_string());
        dual.push_back(labels[t.dual[i]]);
    }
    return json{{"labels", labels}, {"unit", labels[t.unit]}, {"dual", dual}, {"norms", c}, {"N", N},
                {"structure_constants", a}};
}

json metric_json(const metric::MetricGroup& m) {
    json B = json::array();
    for (const auto& row : m.gram()) {
        json r = json::array();
        for (const auto& q : row) r.push_back(qmodz_json(q));
        B.push_back(r);
    }
    json theta = json::array();
    for (const auto& q : m.theta()) theta.push_back(qmodz_json(q));
    return json{{"invariant_factors", m.K().factors()}, {"B", B}, {"theta", theta}};
}

json modular_data_json(const metric::ModularData& d) {
    json T = json::array(), S = json::array();
    for (const auto& q : d.T) T.push_back(qmodz_json(q));
    for (const auto& row : d.S_exponent) {
        json r = json::array();
        for (const auto& q : row) r.push_back(qmodz_json(q));
        S.push_back(r);
    }
    return json{{"scale", d.scale},
                {"T_exponents", T},
                {"S_tilde_exponents", S},
                {"gauss_sum", cyclotomic_json(d.gauss)},
                {"normalization", "S = S_tilde / sqrt(scale)"}};
}

json ring_json(const fusionring::GradedFusionRing& r) {
    const std::size_t n = r.size();
    json N = json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (r.at(i, j, k) != 0) N.push_back({r.labels[i], r.labels[j], r.labels[k], r.at(i, j, k)});
    std::vector<std::string> dual, grading;
    for (std::size_t i = 0; i < n; ++i) {
        dual.push_back(r.labels[r.dual[i]]);
        grading.push_back(r.gamma->label(r.grading[i]));
    }
    json action = json::array();
    for (const auto& p : r.action) {
        std::vector<std::string> img;
        for (auto x : p) img.push_back(r.labels[x]);
        action.push_back(img);
    }
    return json{{"labels", r.labels}, {"unit", r.labels[r.unit]}, {"dual", dual},     {"grading", grading},
                {"N", N},             {"gamma", group_json(*r.gamma)},  {"action", action}};
}

fusionring::GradedFusionRing ring_from_json(const json& j) {
    fusionring::GradedFusionRing r;
    r.labels = array_of<std::string>(member(j, "labels", ""), "/labels");
    const auto idx = label_index(r.labels, "/labels");
    const std::size_t n = r.labels.size();
    r.unit = index_of(idx, member(j, "unit", ""), "/unit");
    r.N.assign(n * n * n, 0);
    const auto& triples = member(j, "N", "");
    if (!triples.is_array()) throw FormatError("/N", "expected an array of [a, b, c, n]");
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto where = "/N/" + std::to_string(t);
        const auto& e = triples[t];
        if (!e.is_array() || e.size() != 4 || !e[3].is_number_integer())
            throw FormatError(where, "expected [a, b, c, n] with integer n");
        r.at(index_of(idx, e[0], where), index_of(idx, e[1], where), index_of(idx, e[2], where)) = e[3].get<std::int64_t>();
    }
    const auto dual = array_of<std::string>(member(j, "dual", ""), "/dual");
    if (dual.size() != n) throw FormatError("/dual", "one dual label per simple required");
    for (std::size_t i = 0; i < n; ++i) r.dual.push_back(index_of(idx, dual[i], "/dual/" + std::to_string(i)));

    if (j.contains("gamma")) {
        try {
            r.gamma = group_from_json(j["gamma"]);
        } catch (const FormatError& e) {
            throw FormatError("/gamma" + e.where(), e.what());
        }
    } else {
        r.gamma = grp::cyclic(1);
    }
    if (j.contains("grading")) {
        const auto grading = array_of<std::string>(j["grading"], "/grading");
        if (grading.size() != n) throw FormatError("/grading", "one degree per simple required");
        for (std::size_t i = 0; i < n; ++i) {
            auto g = r.gamma->find_label(grading[i]);
            if (!g) throw FormatError("/grading/" + std::to_string(i), "unknown group element '" + grading[i] + "'");
            r.grading.push_back(*g);
        }
    } else {
        r.grading.assign(n, r.gamma->id());
    }
    if (j.contains("action")) {
        const auto& act = j["action"];
        if (!act.is_array()) throw FormatError("/action", "expected one permutation per group element");
        for (std::size_t g = 0; g < act.size(); ++g) {
            const auto where = "/action/" + std::to_string(g);
            const auto img = array_of<std::string>(act[g], where);
            std::vector<std::size_t> p;
            for (const auto& l : img) p.push_back(index_of(idx, json(l), where));
            r.action.push_back(std::move(p));
        }
    } else {
        for (Element g = 0; g < r.gamma->order(); ++g) {
            std::vector<std::size_t> p(n);
            for (std::size_t i = 0; i < n; ++i) p[i] = i;
            r.action.push_back(std::move(p));
        }
    }
    return r;
}

json certificate_json(const fusionring::Certificate& c, const fusionring::GradedFusionRing& r) {
    auto names = [&](const std::vector<std::size_t>& v) {
        std::vector<std::string> out;
        for (auto x : v) out.push_back(r.labels[x]);
        return out;
    };
    json entries = json::array();
    for (const auto& e : c.entries)
        entries.push_back({{"simple", r.labels[e.simple]}, {"A", names(e.left_stabilizer)}, {"B", names(e.right_stabilizer)}});
    json j{{"issued", c.issued}, {"kind", c.kind}, {"invertibles", names(c.invertibles)}, {"entries", entries}};
    if (!c.issued) j["refusal"] = verdict_json(c.refusal);
    return j;
}

}  // namespace heisidem::io
