// Command-line front end: one subcommand per experiment kind.

#include "fep/config.hpp"
#include "fep/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    int threads = 0;
    bool deterministic = false;
};

int execute(const std::string& kind, const Flags& f, CLI::App& sub)
{
    nlohmann::json doc = nlohmann::json::object();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            std::cerr << "error: cannot read config " << f.config << "\n";
            return 2;
        }
        try {
            doc = nlohmann::json::parse(in);
        } catch (const std::exception& e) {
            std::cerr << "error: " << f.config << " is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (!doc.is_object()) {
        std::cerr << "error: config must be a JSON object\n";
        return 2;
    }
    if (doc.contains("kind") && doc["kind"] != kind) {
        std::cerr << "error: config kind " << doc["kind"].dump() << " does not match subcommand '" << kind << "'\n";
        return 2;
    }
    doc["kind"] = kind;
    if (sub.count("--seed"))
        doc["master_seed"] = f.seed;
    if (sub.count("--out"))
        doc["output_dir"] = f.out;
    if (sub.count("--threads"))
        doc["threads"] = f.threads;
    if (sub.count("--deterministic"))
        doc["deterministic"] = true;

    fep::ExperimentConfig cfg;
    try {
        cfg = fep::validate_config(doc);
    } catch (const fep::ConfigError& e) {
        for (const auto& msg : e.errors())
            std::cerr << "config error: " << msg << "\n";
        return 2;
    }
    try {
        auto m = fep::run(cfg);
        std::cout << m.summary.dump(2) << "\n";
        std::cout << "outputs written to " << cfg.output_dir << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Facilitated exclusion process: simulation, PDE and exact measures"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"simulate", "run the microscopic dynamics"},
        {"pde", "solve the hydrodynamic equation"},
        {"hydro-compare", "compare replica-averaged profiles with the PDE"},
        {"transience", "scan hitting times of the ergodic set"},
        {"measure-table", "tabulate correlations, window laws and counts"},
        {"verify", "run the exact identity suites"},
    };
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& [name, help] : kinds) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON experiment config")->check(CLI::ExistingFile);
        sub->add_option("--seed", flags.seed, "master seed");
        sub->add_option("--out", flags.out, "output directory");
        sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--deterministic", flags.deterministic, "fixed seed and reduction order");
        subs.emplace_back(name, sub);
    }
    CLI11_PARSE(app, argc, argv);
    for (auto& [name, sub] : subs)
        if (sub->parsed())
            return execute(name, flags, *sub);
    return 2;
}
