#include "heisidem/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace heisidem::pipeline {

using exactnum::QmodZ;
using grp::Element;
using grp::GroupPtr;

// ---------------------------------------------------------------- line index

namespace {

struct LineCounter {
    std::size_t line = 1;
    char last = 0;
};

/// Forward iterator over the config text that counts consumed newlines.
class CountingIterator {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIterator() = default;
    CountingIterator(const char* p, LineCounter* c) : p_(p), c_(c) {}
    reference operator*() const { return *p_; }
    CountingIterator& operator++() {
        if (*p_ == '\n') ++c_->line;
        c_->last = *p_;
        ++p_;
        return *this;
    }
    CountingIterator operator++(int) {
        auto t = *this;
        ++*this;
        return t;
    }
    friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }

  private:
    const char* p_ = nullptr;
    LineCounter* c_ = nullptr;
};

std::string escape_token(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '~')
            out += "~0";
        else if (ch == '/')
            out += "~1";
        else
            out += ch;
    }
    return out;
}

/// Records the line of every value by JSON pointer.
class LineSax : public nlohmann::json_sax<json> {
  public:
    explicit LineSax(LineCounter* c) : c_(c) {}

    std::map<std::string, std::size_t> lines;
    std::string error;
    std::size_t error_line = 0;

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override { return open(false); }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(true); }
    bool end_array() override { return close(); }
    bool key(string_t& k) override {
        stack_.back().key = k;
        lines[path() + "/" + escape_token(k)] = c_->line;
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
        error = ex.what();
        error_line = c_->line;
        return false;
    }

  private:
    struct Frame {
        bool array;
        std::size_t index = 0;
        std::string key;
    };
    std::vector<Frame> stack_;
    LineCounter* c_;

    std::string path() const {
        std::string p;
        for (const auto& f : stack_) {
            if (&f == &stack_.back()) break;
            p += "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
        }
        return p;
    }
    std::string here() const {
        if (stack_.empty()) return "";
        const auto& f = stack_.back();
        return path() + "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
    }
    std::size_t current_line() const { return c_->last == '\n' ? c_->line - 1 : c_->line; }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
    }
    bool value() {
        if (!stack_.empty() && stack_.back().array) lines[here()] = current_line();
        advance();
        return true;
    }
    bool open(bool array) {
        const auto p = here();
        if (stack_.empty() || stack_.back().array) lines[p] = c_->line;
        stack_.push_back(Frame{array, 0, {}});
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }
};

// ---------------------------------------------------------------- schema helpers

class Schema {
  public:
    Schema(const std::string& source, const std::map<std::string, std::size_t>& lines)
        : source_(source), lines_(lines) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line(ptr)) + ": " + msg + " (at " +
                          (ptr.empty() ? std::string("/") : ptr) + ")");
    }

    std::size_t line(std::string ptr) const {
        for (;;) {
            if (auto it = lines_.find(ptr); it != lines_.end()) return it->second;
            if (ptr.empty()) return 1;
            ptr = ptr.substr(0, ptr.rfind('/'));
        }
    }

    void object(const json& j, const std::string& ptr, const std::set<std::string>& allowed,
                const std::set<std::string>& required) const {
        if (!j.is_object()) fail(ptr, "expected an object");
        for (const auto& [k, _] : j.items())
            if (!allowed.count(k)) fail(ptr + "/" + escape_token(k), "unknown key '" + k + "'");
        for (const auto& k : required)
            if (!j.contains(k)) fail(ptr, "missing required key '" + k + "'");
    }

    std::string str(const json& j, const std::string& ptr) const {
        if (!j.is_string()) fail(ptr, "expected a string");
        return j.get<std::string>();
    }
    std::int64_t integer(const json& j, const std::string& ptr, std::int64_t lo) const {
        if (!j.is_number_integer()) fail(ptr, "expected an integer");
        const auto v = j.get<std::int64_t>();
        if (v < lo) fail(ptr, "expected an integer >= " + std::to_string(lo));
        return v;
    }
    bool boolean(const json& j, const std::string& ptr) const {
        if (!j.is_boolean()) fail(ptr, "expected true or false");
        return j.get<bool>();
    }
    const json& array(const json& j, const std::string& ptr) const {
        if (!j.is_array()) fail(ptr, "expected an array");
        return j;
    }
    QmodZ qmodz(const json& j, const std::string& ptr) const {
        try {
            return io::qmodz_from_json(j, ptr);
        } catch (const io::FormatError& e) {
            fail(ptr, e.what());
        } catch (const std::exception& e) {
            fail(ptr, e.what());
        }
    }

  private:
    std::string source_;
    const std::map<std::string, std::size_t>& lines_;
};

Element element_ref(const Schema& s, const grp::TableGroup& G, const json& j, const std::string& ptr) {
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= G.order()) s.fail(ptr, "element index out of range");
        return static_cast<Element>(v);
    }
    if (!j.is_string()) s.fail(ptr, "expected an element label or index");
    auto g = G.find_label(j.get<std::string>());
    if (!g) s.fail(ptr, "no element labelled '" + j.get<std::string>() + "'");
    return *g;
}

std::int64_t heisenberg_modulus(const json& construction) {
    if (construction.value("family", "") == "heisenberg") return construction["parameters"]["modulus"].get<std::int64_t>();
    return 0;
}

GroupPtr build_group(const Schema& s, const json& c, const std::string& ptr, grp::TableOptions options) {
    s.object(c, ptr, {"family", "parameters"}, {"family", "parameters"});
    const auto family = s.str(c["family"], ptr + "/family");
    const auto& p = c["parameters"];
    const auto pp = ptr + "/parameters";
    try {
        if (family == "heisenberg") {
            s.object(p, pp, {"modulus"}, {"modulus"});
            const auto m = s.integer(p["modulus"], pp + "/modulus", 2);
            if (!grp::is_prime_power(m)) s.fail(pp + "/modulus", "modulus must be a prime power");
            return grp::heisenberg(m);
        }
        if (family == "cyclic") {
            s.object(p, pp, {"n"}, {"n"});
            return grp::cyclic(s.integer(p["n"], pp + "/n", 1));
        }
        if (family == "product") {
            s.object(p, pp, {"left", "right"}, {"left", "right"});
            return grp::direct_product(build_group(s, p["left"], pp + "/left", options),
                                       build_group(s, p["right"], pp + "/right", options), options);
        }
        if (family == "semidirect") {
            s.object(p, pp, {"base", "automorphisms"}, {"base", "automorphisms"});
            auto base = build_group(s, p["base"], pp + "/base", options);
            const auto m = heisenberg_modulus(p["base"]);
            std::vector<std::vector<Element>> gens;
            const auto& autos = s.array(p["automorphisms"], pp + "/automorphisms");
            for (std::size_t i = 0; i < autos.size(); ++i) {
                const auto ap = pp + "/automorphisms/" + std::to_string(i);
                if (autos[i].is_string()) {
                    if (m == 0) s.fail(ap, "named automorphisms need a heisenberg base; give a permutation instead");
                    try {
                        gens.push_back(grp::heisenberg_automorphism(m, autos[i].get<std::string>()));
                    } catch (const std::invalid_argument& e) {
                        s.fail(ap, e.what());
                    }
                } else {
                    s.array(autos[i], ap);
                    std::vector<Element> perm;
                    for (std::size_t k = 0; k < autos[i].size(); ++k)
                        perm.push_back(element_ref(s, *base, autos[i][k], ap + "/" + std::to_string(k)));
                    gens.push_back(std::move(perm));
                }
            }
            return grp::semidirect(base, grp::automorphism_closure(*base, gens), options);
        }
        if (family == "table") {
            try {
                return io::group_from_json(p, options);
            } catch (const io::FormatError& e) {
                s.fail(pp + e.where(), e.what());
            }
        }
    } catch (const std::invalid_argument& e) {
        s.fail(ptr, e.what());
    }
    s.fail(ptr + "/family", "unknown family '" + family + "' (heisenberg, cyclic, product, semidirect, table)");
}

grp::SubgroupRef build_subgroup(const Schema& s, const GroupPtr& G, const json& j, const std::string& ptr) {
    try {
        if (j.is_string()) {
            const auto name = j.get<std::string>();
            if (name == "whole") return grp::SubgroupRef::whole(G);
            if (name == "trivial") return grp::SubgroupRef::trivial(G);
            return grp::SubgroupRef::designated(G, name);
        }
        s.object(j, ptr, {"generators"}, {"generators"});
        const auto& gens = s.array(j["generators"], ptr + "/generators");
        std::vector<Element> el;
        for (std::size_t i = 0; i < gens.size(); ++i)
            el.push_back(element_ref(s, *G, gens[i], ptr + "/generators/" + std::to_string(i)));
        return grp::SubgroupRef::generated(G, el);
    } catch (const std::invalid_argument& e) {
        s.fail(ptr, e.what());
    } catch (const std::out_of_range& e) {
        s.fail(ptr, e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------- config

Job parse_config(const std::string& text, const std::string& source, LoadOptions options) {
    Job job;
    job.source = source;
    {
        LineCounter counter;
        LineSax sax(&counter);
        CountingIterator first(text.data(), &counter), last(text.data() + text.size(), &counter);
        json::sax_parse(first, last, &sax);
        if (!sax.error.empty()) throw ConfigError(source + ":" + std::to_string(sax.error_line) + ": " + sax.error);
        job.lines = std::move(sax.lines);
    }
    const json root = json::parse(text);
    const Schema s(source, job.lines);
    s.object(root, "", {"schema_version", "name", "construction", "subgroups", "character", "tasks", "metric", "output"},
             {"schema_version", "name", "tasks"});
    if (s.integer(root["schema_version"], "/schema_version", 0) != kSchemaVersion)
        s.fail("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    job.name = s.str(root["name"], "/name");

    const auto& tasks = s.array(root["tasks"], "/tasks");
    if (tasks.empty()) s.fail("/tasks", "task list is empty");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto t = s.str(tasks[i], "/tasks/" + std::to_string(i));
        if (std::find(kTaskOrder.begin(), kTaskOrder.end(), t) == kTaskOrder.end())
            s.fail("/tasks/" + std::to_string(i), "unknown task '" + t + "'");
        if (!seen.insert(t).second) s.fail("/tasks/" + std::to_string(i), "task '" + t + "' listed twice");
    }
    for (const auto& t : kTaskOrder)
        if (seen.count(t)) job.tasks.push_back(t);

    if (root.contains("output")) {
        const auto& o = root["output"];
        s.object(o, "/output", {"path", "verbose", "include_values"}, {});
        if (o.contains("path")) job.out_path = s.str(o["path"], "/output/path");
        if (o.contains("verbose")) job.verbose = s.boolean(o["verbose"], "/output/verbose");
        if (o.contains("include_values")) job.include_values = s.boolean(o["include_values"], "/output/include_values");
    }

    if (root.contains("metric")) {
        const auto& m = root["metric"];
        s.object(m, "/metric", {"invariant_factors", "B", "theta"}, {});
        if (m.contains("invariant_factors")) {
            const auto& f = s.array(m["invariant_factors"], "/metric/invariant_factors");
            for (std::size_t i = 0; i < f.size(); ++i) s.integer(f[i], "/metric/invariant_factors/" + std::to_string(i), 1);
        }
        if (m.contains("B")) {
            const auto& B = s.array(m["B"], "/metric/B");
            for (std::size_t i = 0; i < B.size(); ++i) {
                const auto& row = s.array(B[i], "/metric/B/" + std::to_string(i));
                for (std::size_t k = 0; k < row.size(); ++k)
                    s.qmodz(row[k], "/metric/B/" + std::to_string(i) + "/" + std::to_string(k));
            }
        }
        if (m.contains("theta")) {
            const auto& t = s.array(m["theta"], "/metric/theta");
            for (std::size_t i = 0; i < t.size(); ++i) s.qmodz(t[i], "/metric/theta/" + std::to_string(i));
        }
        job.metric = m;
    }

    if (!root.contains("construction")) {
        if (job.tasks != std::vector<std::string>{"metric"} || job.metric.is_null() ||
            !job.metric.contains("invariant_factors"))
            s.fail("", "missing required key 'construction' (only a metric-only job with metric.invariant_factors may omit it)");
        if (root.contains("subgroups") || root.contains("character"))
            s.fail("", "subgroups and character need a construction");
        return job;
    }
    if (!job.metric.is_null() && job.metric.contains("invariant_factors"))
        s.fail("/metric/invariant_factors", "invariant_factors is for metric-only jobs; with a construction K/N is computed");
    if (!root.contains("subgroups")) s.fail("", "missing required key 'subgroups'");
    if (!root.contains("character")) s.fail("", "missing required key 'character'");

    grp::TableOptions topts{options.skip_assoc_check};
    const auto G = build_group(s, root["construction"], "/construction", topts);
    job.family = root["construction"]["family"].get<std::string>();

    const auto& sub = root["subgroups"];
    s.object(sub, "/subgroups", {"H", "N"}, {"H", "N"});
    auto H = build_subgroup(s, G, sub["H"], "/subgroups/H");
    auto N = build_subgroup(s, G, sub["N"], "/subgroups/N");

    const auto& ch = root["character"];
    s.object(ch, "/character", {"generators", "exponents"}, {"generators", "exponents"});
    const auto& gens = s.array(ch["generators"], "/character/generators");
    const auto& exps = s.array(ch["exponents"], "/character/exponents");
    if (gens.size() != exps.size()) s.fail("/character/exponents", "one exponent per generator required");
    std::vector<Element> g;
    std::vector<QmodZ> e;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto gp = "/character/generators/" + std::to_string(i);
        g.push_back(element_ref(s, *G, gens[i], gp));
        if (!N.contains(g.back())) s.fail(gp, "character generator is not in N");
        e.push_back(s.qmodz(exps[i], "/character/exponents/" + std::to_string(i)));
    }
    try {
        auto chi = grp::character_from_generators(N, g, e);
        job.datum = std::make_shared<const model::ModelDatum>(H, N, std::move(chi));
    } catch (const std::invalid_argument& ex) {
        s.fail("/character", ex.what());
    }
    return job;
}

Job load_config(const std::filesystem::path& path, LoadOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ":0: cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string(), options);
}

// ---------------------------------------------------------------- run

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
  public:
    Runner(const Job& job, const RunOptions& opt) : job_(job), opt_(opt) {}

    RunResult run() {
        const auto start = Clock::now();
        std::vector<std::string> tasks = opt_.tasks ? *opt_.tasks : job_.tasks;
        report_["schema_version"] = kSchemaVersion;
        report_["name"] = job_.name;
        report_["notes"] = json::array({
            "exact values: rationals and Q/Z elements as a/b strings; cyclotomic numbers as {order, coeffs} in "
            "powers of zeta_order",
            "the stabilizer H_g is used in place of its identity component (a finite group has no components)",
            "rigidity is certified at the level of the fusion ring only",
        });
        report_["tasks"] = json::object();

        if (!job_.datum) {
            for (const auto& t : tasks)
                if (t != "metric") fail_config("/tasks", "task '" + t + "' needs a construction");
            timed("metric", [&] { task_metric_standalone(); });
        } else {
            const auto& d = *job_.datum;
            report_["group"] = {{"family", job_.family},
                                {"order", d.G().order()},
                                {"H_order", d.H().size()},
                                {"N_order", d.N().size()},
                                {"associativity_checked", d.G().associativity_checked()}};
            timed("validate", [&] { task_validate(); });
            if (!admissible_) {
                for (const auto& t : tasks)
                    if (t != "validate") report_["tasks"][t] = {{"skipped", "datum is not admissible"}};
            } else {
                report_["group"]["Gamma_order"] = d.n_cosets();
                report_["group"]["H_mod_N_invariant_factors"] = d.HmodN()->invariant_factors();
                for (const auto& t : tasks) {
                    if (t == "validate") continue;
                    timed(t, [&] { dispatch(t); });
                }
                if (std::find(tasks.begin(), tasks.end(), "validate") == tasks.end() && admissible_)
                    report_["tasks"].erase("validate");
            }
        }

        json verdicts = json::object();
        json failed = json::array();
        for (const auto& [name, ok] : verdicts_) {
            verdicts[name] = ok;
            if (!ok) failed.push_back(name);
        }
        report_["verdicts"] = verdicts;
        report_["failed"] = failed;
        result_.exit_code = failed.empty() ? 0 : 1;
        report_["exit_code"] = result_.exit_code;
        timings_["total_ms"] = ms_since(start);
        result_.report = std::move(report_);
        result_.timings = std::move(timings_);
        return std::move(result_);
    }

  private:
    const Job& job_;
    const RunOptions& opt_;
    RunResult result_;
    json report_ = json::object();
    json timings_ = json{{"tasks", json::object()}, {"note", "wall-clock milliseconds; not part of the report"}};
    std::map<std::string, bool> verdicts_;
    bool admissible_ = false;

    std::optional<hecke::Basis> basis_;
    std::optional<hecke::FusionTable> table_;
    std::optional<fusionring::GradedFusionRing> ring_;

    [[noreturn]] void fail_config(const std::string& ptr, const std::string& msg) const {
        Schema(job_.source, job_.lines).fail(ptr, msg);
    }

    static double ms_since(Clock::time_point t) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
    }

    template <class F>
    void timed(const std::string& name, F&& f) {
        const auto t = Clock::now();
        if (opt_.log && opt_.verbose) *opt_.log << "[" << job_.name << "] " << name << " ...\n";
        f();
        const auto ms = ms_since(t);
        timings_["tasks"][name] = ms;
        if (opt_.log && opt_.verbose) *opt_.log << "[" << job_.name << "] " << name << " done in " << ms << " ms\n";
    }

    bool verdict(const std::string& name, bool ok) {
        verdicts_[name] = ok;
        return ok;
    }
    json verdict(const std::string& name, const Verdict& v) {
        verdict(name, v.ok);
        return io::verdict_json(v);
    }

    hecke::DatumPtr datum() const { return job_.datum; }

    void dispatch(const std::string& t) {
        if (t == "census") task_census();
        else if (t == "hecke") task_hecke();
        else if (t == "metric") task_metric();
        else if (t == "fusion") task_fusion();
        else if (t == "equivariantize") task_equivariantize();
        else if (t == "certify") task_certify();
    }

    // ---- validate

    void task_validate() {
        const auto& d = *job_.datum;
        const auto v = model::validate(d);
        admissible_ = v.admissible();
        auto j = io::validation_json(v, d.G());
        verdict("validate.admissible", admissible_);
        if (admissible_) {
            const auto phi = model::phi_lambda(d);
            const auto K = model::kernel_K(d);
            j["phi"] = {{"kernel_order", phi.kernel.size()}, {"cokernel_order", phi.cokernel_order}};
            j["K_order"] = K.K.size();
            j["K_mod_N_invariant_factors"] = K.KmodN->invariant_factors();
        }
        report_["tasks"]["validate"] = j;
    }

    // ---- census

    void task_census() {
        const auto& d = *job_.datum;
        const std::size_t U = d.H().size() * d.N().size();
        json cosets = json::array();
        bool orbit_stab = true, locus = true;
        for (std::size_t c = 0; c < d.n_cosets(); ++c) {
            const auto census = model::orbits(d, c);
            const auto sl = model::support_locus(d, c);
            std::size_t covered = 0;
            std::set<Element> supported;
            for (const auto& o : census.orbits) {
                covered += o.members.size();
                orbit_stab = orbit_stab && o.members.size() * o.stabilizer.size() == U;
                if (o.supported) supported.insert(o.members.begin(), o.members.end());
            }
            orbit_stab = orbit_stab && covered == d.H().size();
            locus = locus && std::set<Element>(sl.begin(), sl.end()) == supported;
            auto j = io::census_json(d, census);
            j["support_locus_size"] = sl.size();
            cosets.push_back(j);
        }
        verdict("census.orbit_stabilizer", orbit_stab);
        verdict("census.supported_orbits_cover_support_locus", locus);
        report_["tasks"]["census"] = {{"U_order", U}, {"cosets", cosets}};
    }

    // ---- hecke

    void ensure_basis() {
        if (basis_) return;
        basis_ = hecke::basis_eDH_all(datum());
        table_ = hecke::fusion_table(*basis_, opt_.jobs);
    }

    std::vector<std::string> basis_labels() const {
        std::vector<std::string> labels;
        for (auto b : basis_->base_point) labels.push_back("M[" + job_.datum->G().label(b) + "]");
        return labels;
    }

    void task_hecke() {
        ensure_basis();
        const auto d = datum();
        const auto& G = d->G();
        const auto& B = *basis_;
        const auto labels = basis_labels();
        const unsigned jobs = opt_.jobs;
        json j = json::object();

        const auto e = hecke::idempotent_e(d);
        verdict("hecke.idempotent", hecke::convolve(e, e, jobs) == e);
        bool unit = true, member = true;
        for (const auto& f : B.elements) {
            unit = unit && hecke::convolve(e, f, jobs) == f && hecke::convolve(f, e, jobs) == f;
            member = member && hecke::is_in_eDH(f);
        }
        verdict("hecke.unit_law", unit);
        verdict("hecke.membership", member);

        std::vector<std::set<Element>> loci(d->n_cosets());
        for (std::size_t c = 0; c < d->n_cosets(); ++c) {
            const auto sl = model::support_locus(*d, c);
            loci[c] = std::set<Element>(sl.begin(), sl.end());
        }
        bool support = true;
        for (const auto& f : B.elements)
            for (Element g = 0; g < G.order(); ++g)
                if (!f.at(g).is_zero() && !loci[d->coset_of(g)].count(g)) support = false;
        verdict("hecke.support_theorem", support);

        std::vector<std::size_t> dims(d->n_cosets(), 0);
        for (auto c : B.coset) ++dims[c];
        j["dimension_by_coset"] = dims;
        j["basis"] = io::basis_json(B, job_.include_values);
        j["fusion"] = io::fusion_table_json(*table_, labels);

        // pointed trivial component: Cayley table of K/N
        const auto K = model::kernel_K(*d);
        bool pointed = true;
        std::vector<std::size_t> triv;
        for (std::size_t i = 0; i < B.size(); ++i)
            if (B.coset[i] == 0) triv.push_back(i);
        pointed = triv.size() == K.KmodN->size();
        for (auto i : triv) pointed = pointed && K.KmodN->coset_of(B.base_point[i]).has_value();
        if (pointed)
            for (auto i : triv)
                for (auto k : triv)
                    for (auto l : triv) {
                        const auto a = *K.KmodN->coset_of(B.base_point[i]), b = *K.KmodN->coset_of(B.base_point[k]),
                                   c = *K.KmodN->coset_of(B.base_point[l]);
                        pointed = pointed && table_->N[i][k][l] == (K.KmodN->mul(a, b) == c ? 1 : 0);
                    }
        verdict("hecke.trivial_component_is_K_mod_N", pointed);
        j["trivial_component"] = {{"dimension", triv.size()}, {"K_mod_N_invariant_factors", K.KmodN->invariant_factors()}};

        json duals = json::array();
        bool dual_ok = true;
        for (std::size_t i = 0; i < B.size(); ++i) {
            const auto dc = hecke::dual_convolve(B.elements[i], K.K, jobs);
            dual_ok = dual_ok && dc.common_coefficient;
            std::vector<std::string> reps;
            for (auto r : dc.representatives) reps.push_back(G.label(r));
            json entry{{"simple", labels[i]},
                       {"K_f_mod_N_order", dc.representatives.size()},
                       {"representatives", reps},
                       {"common_coefficient", dc.common_coefficient}};
            if (!dc.coefficients.empty()) entry["coefficient"] = io::cyclotomic_json(dc.coefficients[0]);
            duals.push_back(entry);
        }
        verdict("hecke.duality_decomposition", dual_ok);
        j["duality"] = duals;

        std::size_t pairs = 0;
        bool crossed = true;
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (B.coset[i] == 0) continue;
            for (std::size_t k = 0; k < B.size(); ++k) {
                ++pairs;
                crossed = crossed && hecke::crossed_commute_check(B.elements[i], B.elements[k], jobs);
            }
        }
        verdict("hecke.crossed_identity", crossed);
        j["crossed_pairs_checked"] = pairs;

        const auto act = hecke::gamma_action(B);
        json action = json::array();
        for (const auto& p : act) {
            std::vector<std::string> img;
            for (auto x : p) img.push_back(labels[x]);
            action.push_back(img);
        }
        j["gamma_action"] = action;
        report_["tasks"]["hecke"] = j;
    }

    // ---- metric

    void metric_checks(const metric::MetricGroup& m, json& j) {
        j["metric_group"] = io::metric_json(m);
        j["polarization"] = verdict("metric.polarization", metric::validate_polarization(m));
        j["ribbon"] = verdict("metric.ribbon", metric::ribbon_check(m));
        const auto md = metric::modular_data(m);
        j["modular_data"] = io::modular_data_json(md);
        const auto norm = (md.gauss * md.gauss.conjugate()).as_rational();
        const bool nondeg = m.radical().size() == 1;
        j["non_degenerate"] = nondeg;
        j["gauss_sum_norm"] = norm ? json(norm->to_string()) : json(nullptr);
        verdict("metric.gauss_norm_equals_order",
                norm && *norm == exactnum::Rational(static_cast<std::int64_t>(m.K().size())));
        j["modularity"] = verdict("metric.modularity", metric::check_modularity(md));
        if (nondeg) j["verlinde"] = verdict("metric.verlinde", metric::verlinde_check(md, m.K()));
    }

    metric::MetricGroup make_metric(const metric::FiniteAbelian& K) const {
        const auto& cfg = job_.metric;
        const std::size_t r = K.factors().size();
        std::vector<std::vector<QmodZ>> gram(r, std::vector<QmodZ>(r));
        if (!cfg.is_null() && cfg.contains("B")) {
            const auto& B = cfg["B"];
            if (B.size() != r) fail_config("/metric/B", "B must be " + std::to_string(r) + " x " + std::to_string(r) +
                                                            " (one row per invariant factor of K/N)");
            for (std::size_t i = 0; i < r; ++i) {
                if (B[i].size() != r) fail_config("/metric/B/" + std::to_string(i), "row has the wrong length");
                for (std::size_t k = 0; k < r; ++k)
                    gram[i][k] = io::qmodz_from_json(B[i][k], "/metric/B/" + std::to_string(i) + "/" + std::to_string(k));
            }
        } else if (r > 0) {
            fail_config("/tasks", "the metric task needs metric.B: the pairing on K/N is data, not derived");
        }
        try {
            metric::MetricGroup m(K, gram);
            if (!cfg.is_null() && cfg.contains("theta")) {
                std::vector<QmodZ> theta;
                for (std::size_t i = 0; i < cfg["theta"].size(); ++i)
                    theta.push_back(io::qmodz_from_json(cfg["theta"][i], "/metric/theta/" + std::to_string(i)));
                m.set_theta(std::move(theta));
            } else {
                m.set_theta(metric::canonical_theta_odd(m));
            }
            return m;
        } catch (const std::invalid_argument& e) {
            fail_config("/metric", e.what());
        } catch (const std::domain_error& e) {
            fail_config("/metric", e.what());
        }
    }

    void task_metric() {
        const auto K = model::kernel_K(*job_.datum);
        const auto F = metric::FiniteAbelian::from_quotient(*K.KmodN);
        json j{{"source", "K/N"}};
        metric_checks(make_metric(F), j);
        report_["tasks"]["metric"] = j;
    }

    void task_metric_standalone() {
        std::vector<std::int64_t> factors = job_.metric["invariant_factors"].get<std::vector<std::int64_t>>();
        json j{{"source", "config"}};
        metric_checks(make_metric(metric::FiniteAbelian(factors)), j);
        report_["tasks"]["metric"] = j;
    }

    // ---- fusion ring

    void ensure_ring() {
        if (ring_) return;
        ensure_basis();
        ring_ = fusionring::from_hecke_basis(*basis_, *table_);
    }

    void task_fusion() {
        ensure_ring();
        json j = json::object();
        j["valid"] = verdict("fusion.valid", fusionring::validate_ring(*ring_));
        const auto h = fusionring::check_rigid_hypotheses(*ring_);
        j["hypotheses"] = {{"duality", verdict("fusion.hypothesis_duality", h.duality)},
                           {"pointed_trivial_component",
                            verdict("fusion.hypothesis_pointed_trivial_component", h.pointed_trivial_component)}};
        j["frobenius"] = verdict("fusion.frobenius", fusionring::frobenius_check(*ring_));
        j["grading_faithful"] = fusionring::grading_faithful(*ring_);
        j["rank"] = ring_->size();
        result_.ring = io::ring_json(*ring_);
        report_["tasks"]["fusion"] = j;
    }

    void task_equivariantize() {
        ensure_ring();
        json j = json::object();
        const auto eq = fusionring::equivariantize(*ring_);
        j["valid"] = verdict("equivariantize.valid", fusionring::validate_ring(eq.ring));
        j["rank"] = eq.ring.size();
        j["ring"] = io::ring_json(eq.ring);
        const auto gi = hecke::gamma_invariants(datum());
        const auto tg = hecke::fusion_table(gi, opt_.jobs);
        const auto cmp = fusionring::compare_with_invariants(eq, *basis_, gi, tg);
        j["matches_gamma_invariants"] = verdict("equivariantize.matches_gamma_invariants", cmp.verdict);
        std::vector<std::string> gi_labels;
        for (std::size_t i = 0; i < gi.size(); ++i) gi_labels.push_back("I[" + datum()->G().label(gi.base_point[i]) + "]");
        j["gamma_invariants"] = io::fusion_table_json(tg, gi_labels);
        json matching = json::object();
        std::vector<std::size_t> reps;
        for (auto o : eq.orbit_of)
            if (std::find(reps.begin(), reps.end(), o) == reps.end()) reps.push_back(o);
        for (std::size_t i = 0; i < cmp.orbit_of_invariant.size(); ++i)
            matching[gi_labels[i]] = ring_->labels[reps[cmp.orbit_of_invariant[i]]];
        j["matching"] = matching;
        report_["tasks"]["equivariantize"] = j;
    }

    void task_certify() {
        ensure_ring();
        const auto c = fusionring::certify_rigidity(*ring_);
        verdict("certify.issued", c.issued);
        json j = io::certificate_json(c, *ring_);
        if (c.issued) {
            const auto K = model::kernel_K(*job_.datum).K;
            bool match = true;
            for (const auto& e : c.entries) {
                const auto KM = hecke::k_sub_m(basis_->elements[e.simple], K);
                match = match && e.left_stabilizer.size() * job_.datum->N().size() == KM.size();
            }
            verdict("certify.stabilizers_match_k_sub_m", match);
        }
        result_.certificate = j;
        report_["tasks"]["certify"] = j;
    }
};

}  // namespace

RunResult run(const Job& job, const RunOptions& options) { return Runner(job, options).run(); }

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const json& j) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << io::dump(j);
    };
    write("report.json", result.report);
    write("timings.json", result.timings);
    if (result.ring) write("ring.json", *result.ring);
    if (result.certificate) write("certificate.json", *result.certificate);
}

namespace {

void diff_into(const json& a, const json& b, const std::string& ptr, std::vector<std::string>& out) {
    if (a.type() != b.type()) {
        out.push_back(ptr.empty() ? "/" : ptr);
        return;
    }
    if (a.is_object()) {
        std::set<std::string> keys;
        for (const auto& [k, _] : a.items()) keys.insert(k);
        for (const auto& [k, _] : b.items()) keys.insert(k);
        for (const auto& k : keys) {
            const auto p = ptr + "/" + escape_token(k);
            if (!a.contains(k) || !b.contains(k))
                out.push_back(p);
            else
                diff_into(a[k], b[k], p, out);
        }
    } else if (a.is_array()) {
        const auto n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto p = ptr + "/" + std::to_string(i);
            if (i >= a.size() || i >= b.size())
                out.push_back(p);
            else
                diff_into(a[i], b[i], p, out);
        }
    } else if (a != b) {
        out.push_back(ptr.empty() ? "/" : ptr);
    }
}

}  // namespace

std::vector<std::string> json_diff(const json& a, const json& b) {
    std::vector<std::string> out;
    diff_into(a, b, "", out);
    return out;
}

}  // namespace heisidem::pipeline
