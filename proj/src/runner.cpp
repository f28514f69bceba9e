#include "fep/runner.hpp"

#include "fep/dynamics.hpp"
#include "fep/estimators.hpp"
#include "fep/fde.hpp"
#include "fep/measures.hpp"
#include "fep/parallel.hpp"
#include "fep/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

namespace fep {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

json RunManifest::to_json(const ExperimentConfig& c) const
{
    json j;
    j["tool"] = "fep";
    j["version"] = version;
    j["config_hash"] = config_hash;
    j["config"] = c.to_json();
    j["master_seed"] = master_seed;
    j["replica_seeds"] = replica_seeds;
    j["started"] = started;
    j["finished"] = finished;
    j["outputs"] = outputs;
    j["status"] = ok ? "ok" : "failed";
    if (!ok)
        j["error"] = error;
    return j;
}

namespace {

std::string now_utc()
{
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Outputs {
public:
    Outputs(fs::path dir, RunManifest& m) : dir_(std::move(dir)), m_(m) {}

    void write(const std::string& name, const std::string& content)
    {
        write_file_atomic(dir_ / name, content);
        m_.outputs.push_back(name);
    }
    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

private:
    fs::path dir_;
    RunManifest& m_;
};

void run_simulate(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    std::vector<Trajectory> runs(c.replicas);
    parallel_for(c.replicas, c.threads, [&](int r) {
        Rng rng = Rng::for_replica(c.master_seed, static_cast<std::uint64_t>(r));
        try {
            ExclusionConfig eta = c.initial.empty() ? sample_profile(c.profile, c.n, rng)
                                                    : ExclusionConfig::from_string(c.initial);
            runs[r] = simulate(eta, c.t_end, rng, c.record_events);
        } catch (const std::exception& e) {
            throw std::runtime_error("replica " + std::to_string(r) + ": " + e.what());
        }
    });
    json reps = json::array();
    for (int r = 0; r < c.replicas; ++r) {
        const auto& tr = runs[r];
        m.replica_seeds.push_back(tr.seed);
        json j = {{"replica", r},
                  {"seed", tr.seed},
                  {"N", tr.initial.size()},
                  {"initial", tr.initial.to_string()},
                  {"final", tr.final_config.to_string()},
                  {"events", tr.event_count},
                  {"t_micro", tr.t_micro_end},
                  {"t_macro", tr.t_micro_end / tr.time_scale},
                  {"initial_class", to_string(classify(tr.initial))},
                  {"final_class", to_string(classify(tr.final_config))}};
        reps.push_back(j);
        if (c.record_events) {
            std::string csv = "t_micro,x,dir\n";
            for (const auto& e : tr.events)
                csv += fmt_double(e.t_micro) + "," + std::to_string(e.site + 1) + "," + std::to_string(e.dir) + "\n";
            out.write("events_r" + std::to_string(r) + ".csv", csv);
        }
    }
    m.summary = {{"replicas", reps}};
}

void run_pde(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    auto init = DensityProfile::sample(c.profile, c.grid_m);
    double dt_max = c.cfl * fde_max_dt(init);
    long steps = c.t_end > 0 ? static_cast<long>(std::ceil(c.t_end / dt_max)) : 0;
    long every = std::max(1L, steps / c.snapshots);
    int index = 0;
    auto snap = [&](const DensityProfile& p, long) {
        std::string csv = "u,rho\n";
        for (int i = 0; i < p.size(); ++i)
            csv += fmt_double((i + 0.5) / p.size()) + "," + fmt_double(p.cells[i]) + "\n";
        char name[32];
        std::snprintf(name, sizeof name, "profile_%04d.csv", index++);
        out.write(name, csv);
    };
    auto fin = solve_fde(init, c.t_end, DtPolicy{c.cfl}, snap, every);
    if (steps == 0)
        snap(fin, 0);
    m.summary = {{"steps", steps},
                 {"snapshots", index},
                 {"t_end", fin.t},
                 {"mass_initial", init.mass()},
                 {"mass_final", fin.mass()},
                 {"min_initial", init.min()},
                 {"min_final", fin.min()},
                 {"max_initial", init.max()},
                 {"max_final", fin.max()}};
}

void run_hydro(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    HydroSettings s;
    s.n = c.n;
    s.rho0 = c.profile;
    s.t = c.t_end;
    s.replicas = c.replicas;
    s.block_ell = c.block_l;
    s.grid_m = c.grid_m;
    s.seed = c.master_seed;
    s.threads = c.threads;
    auto res = hydro_compare(s);
    std::string csv = "u,rho_emp,rho_pde\n";
    for (std::size_t i = 0; i < res.u.size(); ++i)
        csv += fmt_double(res.u[i]) + "," + fmt_double(res.rho_emp[i]) + "," + fmt_double(res.rho_pde[i]) + "\n";
    out.write("hydro.csv", csv);
    for (auto sd : res.seeds)
        m.replica_seeds.push_back(sd);
    m.summary = {{"l1", res.l1},     {"N", c.n},           {"t", c.t_end}, {"replicas", c.replicas},
                 {"block_l", c.block_l}, {"grid_M", c.grid_m}, {"events", res.events}};
}

void run_transience(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    TransienceSettings s;
    s.n_list = c.n_list;
    s.rho0 = c.profile;
    s.replicas = c.replicas;
    s.seed = c.master_seed;
    s.delta = c.delta;
    s.ell_exponent = c.ell_exponent;
    s.t_max_macro = c.t_max;
    s.threads = c.threads;
    auto rep = transience_scan(s);
    json blocks = json::array();
    m.replica_seeds = json::object();
    for (const auto& b : rep.blocks) {
        std::string csv = "replica,seed,reached,tau_micro,tau_macro,events,holes,regular\n";
        json seeds = json::array();
        for (const auto& r : b.rows) {
            csv += std::to_string(r.replica) + "," + std::to_string(r.seed) + "," + (r.reached ? "1" : "0") + "," +
                   fmt_double(r.tau_micro) + "," + fmt_double(r.tau_macro) + "," + std::to_string(r.events) + "," +
                   std::to_string(r.holes) + "," + (r.regular ? "1" : "0") + "\n";
            seeds.push_back(r.seed);
        }
        out.write("transience_N" + std::to_string(b.n) + ".csv", csv);
        m.replica_seeds[std::to_string(b.n)] = seeds;
        blocks.push_back({{"N", b.n},
                          {"ell", b.ell},
                          {"delta", b.delta},
                          {"median_tau", b.median_tau},
                          {"q25_tau", b.q25_tau},
                          {"q75_tau", b.q75_tau},
                          {"fraction_regular", b.fraction_regular},
                          {"not_reached", b.not_reached}});
    }
    m.summary = {{"blocks", blocks}};
}

void run_measure_table(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    std::string csv = "rho,l,P_l_closed,P_l_mc,stderr\n";
    for (std::size_t i = 0; i < c.rho_list.size(); ++i) {
        double rho = c.rho_list[i];
        auto g = GcmParams::make(rho);
        Rng rng = Rng::for_replica(c.master_seed, i);
        m.replica_seeds.push_back(rng.seed());
        for (int l = 1; l <= c.l_max; ++l) {
            long hits = 0;
            for (int s = 0; s < c.samples; ++s) {
                auto w = sample_gcm_window(g, l + 1, rng);
                hits += w.front() && w.back();
            }
            double p = static_cast<double>(hits) / c.samples;
            csv += fmt_double(rho) + "," + std::to_string(l) + "," + fmt_double(two_point(g, l)) + "," +
                   fmt_double(p) + "," + fmt_double(std::sqrt(p * (1 - p) / c.samples)) + "\n";
        }
    }
    out.write("two_point.csv", csv);

    std::string win = "N,k,sigma,prob\n";
    for (std::uint32_t mask = 0; mask < (1u << c.window_l); ++mask) {
        LocalConfig s(c.window_l);
        std::string str;
        for (int q = 0; q < c.window_l; ++q) {
            s[q] = (mask >> q) & 1u;
            str += s[q] ? '1' : '0';
        }
        win += std::to_string(c.table_n) + "," + std::to_string(c.table_k) + "," + str + "," +
               fmt_double(canonical_window_prob(c.table_n, c.table_k, s)) + "\n";
    }
    out.write("canonical_windows.csv", win);

    std::string counts = "N,k,count\n";
    for (int n = 1; n <= c.count_n_max; ++n)
        for (int k = 1; k <= n - 1; ++k)
            counts += std::to_string(n) + "," + std::to_string(k) + "," + count_hole_isolated(n, k).str() + "\n";
    out.write("counts.csv", counts);
    m.summary = {{"rho_list", c.rho_list}, {"l_max", c.l_max}, {"samples", c.samples}};
}

void run_verify(const ExperimentConfig& c, RunManifest& m, Outputs& out)
{
    std::vector<SuiteResult> results(c.suites.size());
    parallel_for(static_cast<int>(c.suites.size()), c.threads, [&](int i) { results[i] = run_suite(c.suites[i]); });
    json suites = json::array();
    bool all = true;
    for (const auto& r : results) {
        suites.push_back({{"suite", r.name},
                          {"passed", r.passed},
                          {"checks", r.checks},
                          {"max_error", r.max_error},
                          {"detail", r.detail}});
        all = all && r.passed;
    }
    out.write_json("verify.json", {{"passed", all}, {"suites", suites}});
    m.summary = {{"passed", all}, {"suites", suites}};
    if (!all)
        throw std::runtime_error("verification failed");
}

}  // namespace

RunManifest run(ExperimentConfig c)
{
    RunManifest m;
    if (!c.deterministic && !c.seed_given) {
        std::random_device rd;
        c.master_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    m.master_seed = c.master_seed;
    m.config_hash = c.hash();
    m.started = now_utc();
    fs::path dir = c.output_dir;
    fs::create_directories(dir);
    Outputs out(dir, m);
    auto finish = [&] {
        m.finished = now_utc();
        write_file_atomic(dir / "manifest.json", m.to_json(c).dump(2) + "\n");
    };
    try {
        switch (c.kind) {
        case ExperimentKind::Simulate: run_simulate(c, m, out); break;
        case ExperimentKind::Pde: run_pde(c, m, out); break;
        case ExperimentKind::HydroCompare: run_hydro(c, m, out); break;
        case ExperimentKind::Transience: run_transience(c, m, out); break;
        case ExperimentKind::MeasureTable: run_measure_table(c, m, out); break;
        case ExperimentKind::Verify: run_verify(c, m, out); break;
        }
        out.write_json("summary.json", m.summary);
    } catch (const std::exception& e) {
        m.ok = false;
        m.error = e.what();
        if (!m.summary.is_null())
            out.write_json("summary.json", m.summary);
        finish();
        throw;
    }
    finish();
    return m;
}

}  // namespace fep
