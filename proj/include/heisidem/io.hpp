#pragma once

// JSON forms of groups, census results, Hecke tables, metric data, rings and
// certificates. Exact values only: rationals and Q/Z elements as "a/b"
// strings, cyclotomic numbers as {order, coeffs}.

#include <string>

#include <json.hpp>

#include "heisidem/fusionring.hpp"
#include "heisidem/hecke.hpp"
#include "heisidem/metric.hpp"
#include "heisidem/model.hpp"

namespace heisidem::io {

using json = nlohmann::json;

/// Raised for malformed documents; `where` is a JSON pointer into the input.
class FormatError : public std::runtime_error {
  public:
    FormatError(std::string where, const std::string& what)
        : std::runtime_error(what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

  private:
    std::string where_;
};

/// Pretty-printed with two-space indent, sorted keys and a trailing newline.
std::string dump(const json& j);

json rational_json(const exactnum::Rational& r);
json qmodz_json(const exactnum::QmodZ& q);
exactnum::QmodZ qmodz_from_json(const json& j, const std::string& where);
/// {"order": n, "coeffs": [c_0, ..., c_{phi(n)-1}]} in the reduced power basis of
/// zeta_n; rationals use order 1.
json cyclotomic_json(const exactnum::Cyclotomic& c);

json verdict_json(const Verdict& v);

/// {order, labels, mul, designated_subgroups}.
json group_json(const grp::TableGroup& g);
grp::GroupPtr group_from_json(const json& j, grp::TableOptions options = {});

json validation_json(const model::ValidationReport& r, const grp::TableGroup& G);
/// {coset, n_orbits, n_supported, orbit_sizes, stabilizer_orders, ...}.
json census_json(const model::ModelDatum& d, const model::CosetCensus& c);

/// Basis element summary; `values` adds the full sparse value list.
json basis_json(const hecke::Basis& b, bool values);
json fusion_table_json(const hecke::FusionTable& t, const std::vector<std::string>& labels);

json metric_json(const metric::MetricGroup& m);
json modular_data_json(const metric::ModularData& d);

/// {labels, unit, dual, grading, N: [[a, b, c, n], ...], gamma, action}, by label.
json ring_json(const fusionring::GradedFusionRing& r);
fusionring::GradedFusionRing ring_from_json(const json& j);

json certificate_json(const fusionring::Certificate& c, const fusionring::GradedFusionRing& r);

}  // namespace heisidem::io
