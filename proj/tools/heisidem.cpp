// heisidem: command-line front end for the model pipeline.
//
// Exit codes: 0 all verdicts pass, 1 a mathematical verdict failed,
// 2 configuration or IO error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "heisidem/pipeline.hpp"

namespace fs = std::filesystem;
using namespace heisidem;
using pipeline::json;

namespace {

struct Common {
    std::string config;
    std::string out;
    unsigned jobs = 1;
    bool skip_assoc = false;
    bool verbose = false;
};

void add_common(CLI::App* app, Common& c, bool needs_config) {
    auto* opt = app->add_option("--config", c.config, "job configuration (JSON)");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "output directory (default: output.path from the config, else ./out)");
    app->add_option("--jobs", c.jobs, "worker threads for convolution")->check(CLI::Range(1u, 256u));
    app->add_flag("--skip-assoc-check", c.skip_assoc, "skip the associativity check for orders above 2000");
    app->add_flag("--verbose", c.verbose, "log task progress to stderr");
}

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << io::dump(j);
}

int run_pipeline(const Common& c, std::optional<std::vector<std::string>> tasks) {
    const auto job = pipeline::load_config(c.config, {c.skip_assoc});
    pipeline::RunOptions opt;
    opt.jobs = c.jobs;
    opt.verbose = c.verbose || job.verbose;
    opt.tasks = std::move(tasks);
    opt.log = &std::cerr;
    const auto result = pipeline::run(job, opt);
    const fs::path out = c.out.empty() ? fs::path(job.out_path) : fs::path(c.out);
    pipeline::write_outputs(result, out);
    for (const auto& [name, ok] : result.report["verdicts"].items())
        std::cout << (ok.get<bool>() ? "PASS " : "FAIL ") << name << "\n";
    if (result.exit_code != 0) {
        // witnesses for failed checks, wherever they sit in the report
        std::function<void(const json&, const std::string&)> scan = [&](const json& j, const std::string& where) {
            if (j.is_object()) {
                if (j.contains("ok") && j["ok"] == false)
                    std::cout << "  " << where << ": " << j.value("message", "") << " witness " << j["witness"].dump()
                              << "\n";
                if (j.contains("code") && j.value("severity", "") == "error")
                    std::cout << "  " << where << ": [" << j["code"].get<std::string>() << "] "
                              << j["message"].get<std::string>() << " witness " << j["witness"].dump() << "\n";
                for (const auto& [k, v] : j.items()) scan(v, where + "/" + k);
            } else if (j.is_array()) {
                for (std::size_t i = 0; i < j.size(); ++i) scan(j[i], where + "/" + std::to_string(i));
            }
        };
        scan(result.report["tasks"], "tasks");
    }
    std::cout << "report written to " << (out / "report.json").string() << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heisidem: Hecke categories of Heisenberg idempotents on finite groups"};
    app.require_subcommand(1);

    Common common;
    auto* run = app.add_subcommand("run", "run every task listed in the config");
    add_common(run, common, true);

    struct Single {
        const char* name;
        const char* task;
        const char* help;
    };
    const Single singles[] = {{"validate", "validate", "check the datum (normality, commutativity, character)"},
                              {"census", "census", "orbit census of every coset"},
                              {"hecke-table", "hecke", "Hecke basis, fusion table and identities"},
                              {"metric", "metric", "metric group and modular data"}};
    std::map<CLI::App*, std::string> single_task;
    for (const auto& s : singles) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, common, true);
        single_task[sub] = s.task;
    }

    std::string ring_path, out_path;
    auto* equiv = app.add_subcommand("equivariantize", "equivariantize a ring file (trivial cocycles)");
    equiv->add_option("--ring", ring_path, "ring JSON")->required()->check(CLI::ExistingFile);
    equiv->add_option("--out", out_path, "output ring file")->default_val("out/ring.equivariant.json");

    auto* cert = app.add_subcommand("certify", "ring-level rigidity certificate for a ring file");
    cert->add_option("--ring", ring_path, "ring JSON")->required()->check(CLI::ExistingFile);
    cert->add_option("--out", out_path, "output certificate file")->default_val("out/certificate.json");

    std::string diff_a, diff_b;
    auto* diff = app.add_subcommand("report-diff", "compare two reports field by field");
    diff->add_option("first", diff_a)->required()->check(CLI::ExistingFile);
    diff->add_option("second", diff_b)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_pipeline(common, std::nullopt);
        for (const auto& [sub, task] : single_task)
            if (sub->parsed()) return run_pipeline(common, std::vector<std::string>{task});

        if (equiv->parsed()) {
            const auto ring = io::ring_from_json(read_json(ring_path));
            if (auto v = fusionring::validate_ring(ring); !v) {
                std::cout << "FAIL input ring: " << v.message << " witness " << json(v.witness).dump() << "\n";
                return 1;
            }
            const auto eq = fusionring::equivariantize(ring);
            write_json(out_path, io::ring_json(eq.ring));
            std::cout << "rank " << ring.size() << " -> " << eq.ring.size() << ", written to " << out_path << "\n";
            return 0;
        }
        if (cert->parsed()) {
            const auto ring = io::ring_from_json(read_json(ring_path));
            const auto c = fusionring::certify_rigidity(ring);
            write_json(out_path, io::certificate_json(c, ring));
            if (!c.issued) {
                std::cout << "REFUSED " << c.refusal.message << " witness " << json(c.refusal.witness).dump() << "\n";
                return 1;
            }
            std::cout << c.kind << " issued for " << ring.size() << " simples, written to " << out_path << "\n";
            return 0;
        }
        if (diff->parsed()) {
            const auto d = pipeline::json_diff(read_json(diff_a), read_json(diff_b));
            for (const auto& p : d) std::cout << "differs at " << p << "\n";
            if (d.empty()) std::cout << "identical\n";
            return d.empty() ? 0 : 1;
        }
    } catch (const pipeline::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const io::FormatError& e) {
        std::cerr << "format error at " << (e.where().empty() ? "/" : e.where()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
