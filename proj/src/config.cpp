#include "fep/config.hpp"

#include "fep/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace fep {

using nlohmann::json;

const char* to_string(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::Pde: return "pde";
    case ExperimentKind::HydroCompare: return "hydro-compare";
    case ExperimentKind::Transience: return "transience";
    case ExperimentKind::MeasureTable: return "measure-table";
    case ExperimentKind::Verify: return "verify";
    }
    return "?";
}

std::optional<ExperimentKind> parse_kind(const std::string& s)
{
    for (auto k : {ExperimentKind::Simulate, ExperimentKind::Pde, ExperimentKind::HydroCompare,
                   ExperimentKind::Transience, ExperimentKind::MeasureTable, ExperimentKind::Verify})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

static std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& e : v)
        s += (s.empty() ? "" : "; ") + e;
    return s;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::invalid_argument("invalid config: " + join(errors)), errors_(std::move(errors))
{
}

json profile_to_json(const Profile& p)
{
    switch (p.kind()) {
    case Profile::Kind::Constant: return {{"type", "constant"}, {"c", p.base()}};
    case Profile::Kind::Sinusoid: return {{"type", "sinusoid"}, {"base", p.base()}, {"amp", p.amplitude()}};
    case Profile::Kind::Piecewise: return {{"type", "piecewise"}, {"breaks", p.breaks()}, {"values", p.values()}};
    }
    return {};
}

namespace {

const std::vector<std::string> kSuites = {"counting", "window-counting", "irreducibility",
                                          "gradient", "balance",         "formulas"};

class Reader {
public:
    Reader(const json& doc, std::vector<std::string>& errs) : doc_(doc), errs_(errs) {}

    void allow(std::initializer_list<const char*> names)
    {
        for (auto n : names)
            allowed_.insert(n);
    }

    void check_unknown()
    {
        for (auto it = doc_.begin(); it != doc_.end(); ++it)
            if (!allowed_.count(it.key()))
                errs_.push_back("unknown field '" + it.key() + "'");
    }

    bool has(const char* name) const { return doc_.contains(name); }

    void integer(const char* name, int& out, long lo, long hi, bool required = false)
    {
        if (!doc_.contains(name)) {
            if (required)
                errs_.push_back(std::string("missing required field '") + name + "'");
            return;
        }
        const auto& v = doc_[name];
        if (!v.is_number_integer()) {
            errs_.push_back(std::string("field '") + name + "' must be an integer");
            return;
        }
        long x = v.get<long>();
        if (x < lo || x > hi) {
            errs_.push_back(std::string("field '") + name + "' = " + std::to_string(x) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return;
        }
        out = static_cast<int>(x);
    }

    void real(const char* name, double& out, double lo, double hi, bool required = false, bool open_lo = false)
    {
        if (!doc_.contains(name)) {
            if (required)
                errs_.push_back(std::string("missing required field '") + name + "'");
            return;
        }
        const auto& v = doc_[name];
        if (!v.is_number()) {
            errs_.push_back(std::string("field '") + name + "' must be a number");
            return;
        }
        double x = v.get<double>();
        bool bad = !(x <= hi) || (open_lo ? !(x > lo) : !(x >= lo));
        if (bad) {
            errs_.push_back(std::string("field '") + name + "' = " + v.dump() + " outside " + (open_lo ? "(" : "[") +
                            num(lo) + ", " + num(hi) + "]");
            return;
        }
        out = x;
    }

    void boolean(const char* name, bool& out)
    {
        if (!doc_.contains(name))
            return;
        if (!doc_[name].is_boolean()) {
            errs_.push_back(std::string("field '") + name + "' must be a boolean");
            return;
        }
        out = doc_[name].get<bool>();
    }

    void string(const char* name, std::string& out)
    {
        if (!doc_.contains(name))
            return;
        if (!doc_[name].is_string()) {
            errs_.push_back(std::string("field '") + name + "' must be a string");
            return;
        }
        out = doc_[name].get<std::string>();
    }

    void int_list(const char* name, std::vector<int>& out, long lo, long hi, bool required = false)
    {
        if (!doc_.contains(name)) {
            if (required)
                errs_.push_back(std::string("missing required field '") + name + "'");
            return;
        }
        const auto& v = doc_[name];
        if (!v.is_array() || v.empty()) {
            errs_.push_back(std::string("field '") + name + "' must be a non-empty array of integers");
            return;
        }
        std::vector<int> tmp;
        for (const auto& e : v) {
            if (!e.is_number_integer() || e.get<long>() < lo || e.get<long>() > hi) {
                errs_.push_back(std::string("field '") + name + "' entries must be integers in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
                return;
            }
            tmp.push_back(e.get<int>());
        }
        out = tmp;
    }

    void real_list(const char* name, std::vector<double>& out, double lo, double hi)
    {
        if (!doc_.contains(name))
            return;
        const auto& v = doc_[name];
        if (!v.is_array() || v.empty()) {
            errs_.push_back(std::string("field '") + name + "' must be a non-empty array of numbers");
            return;
        }
        std::vector<double> tmp;
        for (const auto& e : v) {
            if (!e.is_number() || !(e.get<double>() > lo && e.get<double>() < hi)) {
                errs_.push_back(std::string("field '") + name + "' entries must be numbers in (" + num(lo) + ", " +
                                num(hi) + ")");
                return;
            }
            tmp.push_back(e.get<double>());
        }
        out = tmp;
    }

    static std::string num(double x)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", x);
        return buf;
    }

private:
    const json& doc_;
    std::vector<std::string>& errs_;
    std::set<std::string> allowed_;
};

std::optional<Profile> read_profile(const json& v, std::vector<std::string>& errs)
{
    if (!v.is_object() || !v.contains("type") || !v["type"].is_string()) {
        errs.push_back("field 'profile' must be an object with a string 'type'");
        return std::nullopt;
    }
    std::vector<std::string> local;
    Reader r(v, local);
    std::string type = v["type"].get<std::string>();
    std::optional<Profile> out;
    try {
        if (type == "constant") {
            r.allow({"type", "c"});
            double c = 0;
            r.real("c", c, 0.0, 1.0, true);
            out = Profile::constant(c);
        } else if (type == "sinusoid") {
            r.allow({"type", "base", "amp"});
            double base = 0, amp = 0;
            r.real("base", base, 0.0, 1.0, true);
            r.real("amp", amp, -1.0, 1.0, true);
            out = Profile::sinusoid(base, amp);
        } else if (type == "piecewise") {
            r.allow({"type", "breaks", "values"});
            std::vector<double> breaks, values;
            if (!v.contains("breaks") || !v.contains("values") || !v["breaks"].is_array() || !v["values"].is_array())
                local.push_back("piecewise profile needs arrays 'breaks' and 'values'");
            else {
                for (const auto& e : v["breaks"])
                    breaks.push_back(e.get<double>());
                for (const auto& e : v["values"])
                    values.push_back(e.get<double>());
                out = Profile::piecewise(breaks, values);
            }
        } else {
            local.push_back("profile type '" + type + "' is not one of constant, sinusoid, piecewise");
        }
        r.check_unknown();
    } catch (const std::exception& e) {
        local.push_back(e.what());
    }
    for (auto& e : local)
        errs.push_back("profile: " + e);
    if (!local.empty())
        return std::nullopt;
    if (!(out->min() >= 0.0 && out->max() <= 1.0)) {
        errs.push_back("profile: values must lie in [0, 1]");
        return std::nullopt;
    }
    return out;
}

}  // namespace

ExperimentConfig validate_config(const json& doc)
{
    std::vector<std::string> errs;
    if (!doc.is_object())
        throw ConfigError({"config must be a JSON object"});
    ExperimentConfig c;
    c.threads = default_threads();
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ConfigError({"missing required field 'kind'"});
    auto kind = parse_kind(doc["kind"].get<std::string>());
    if (!kind)
        throw ConfigError({"field 'kind' = '" + doc["kind"].get<std::string>() + "' is not a known experiment"});
    c.kind = *kind;

    Reader r(doc, errs);
    r.allow({"kind", "master_seed", "output_dir", "threads", "deterministic"});
    if (doc.contains("master_seed")) {
        const auto& v = doc["master_seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            errs.push_back("field 'master_seed' must be a non-negative integer");
        else {
            c.master_seed = doc["master_seed"].get<std::uint64_t>();
            c.seed_given = true;
        }
    }
    r.string("output_dir", c.output_dir);
    r.integer("threads", c.threads, 1, 1024);
    r.boolean("deterministic", c.deterministic);

    bool has_profile = doc.contains("profile");
    std::optional<Profile> profile;
    if (has_profile)
        profile = read_profile(doc["profile"], errs);

    switch (c.kind) {
    case ExperimentKind::Simulate:
        r.allow({"N", "profile", "initial", "t_end", "replicas", "record_events"});
        r.string("initial", c.initial);
        if (!c.initial.empty()) {
            if (c.initial.find_first_not_of("01") != std::string::npos)
                errs.push_back("field 'initial' must contain only '0' and '1'");
            if (doc.contains("N") || has_profile)
                errs.push_back("field 'initial' excludes 'N' and 'profile'");
            c.n = static_cast<int>(c.initial.size());
        } else {
            r.integer("N", c.n, 2, 1 << 24, true);
        }
        r.real("t_end", c.t_end, 0.0, 1e6, true);
        r.integer("replicas", c.replicas, 1, 100000);
        r.boolean("record_events", c.record_events);
        if (profile) {
            c.profile = *profile;
            if (!(profile->min() > 0.5 && profile->max() <= 1.0))
                errs.push_back("profile must map into (1/2, 1] for initial sampling");
        }
        break;
    case ExperimentKind::Pde:
        r.allow({"profile", "grid_M", "t_end", "snapshots", "cfl"});
        r.integer("grid_M", c.grid_m, 3, 1 << 16);
        r.real("t_end", c.t_end, 0.0, 1e3, true);
        r.integer("snapshots", c.snapshots, 1, 100000);
        r.real("cfl", c.cfl, 0.0, 1.0, false, true);
        if (!has_profile)
            errs.push_back("missing required field 'profile'");
        else if (profile) {
            c.profile = *profile;
            if (!(profile->min() > 0.5 && profile->max() <= 1.0))
                errs.push_back("profile must stay in (1/2, 1]: the equation is only solved away from density 1/2");
        }
        break;
    case ExperimentKind::HydroCompare:
        r.allow({"N", "profile", "t_end", "replicas", "block_l", "grid_M"});
        r.integer("N", c.n, 16, 1 << 24, true);
        r.real("t_end", c.t_end, 0.0, 1e3, true, true);
        c.replicas = 8;
        r.integer("replicas", c.replicas, 1, 100000);
        r.integer("block_l", c.block_l, 0, 1 << 22);
        r.integer("grid_M", c.grid_m, 3, 1 << 16);
        if (!has_profile)
            errs.push_back("missing required field 'profile'");
        else if (profile) {
            c.profile = *profile;
            if (!(profile->min() > 0.5 && profile->max() <= 1.0))
                errs.push_back("profile minimum must exceed 1/2 and maximum stay <= 1: the hydrodynamic limit "
                               "is stated for initial densities in (1/2, 1]");
        }
        if (c.n > 0) {
            if (c.block_l == 0)
                c.block_l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(c.n))));
            if (2 * c.block_l + 1 > c.n)
                errs.push_back("block_l: 2*block_l+1 must not exceed N");
            if (c.grid_m > c.n)
                errs.push_back("grid_M must not exceed N");
        }
        break;
    case ExperimentKind::Transience:
        r.allow({"N_list", "profile", "replicas", "delta", "ell_exponent", "t_max"});
        c.n_list = {512, 1024, 2048, 4096};
        c.profile = Profile::sinusoid(0.75, 0.15);
        c.replicas = 32;
        r.int_list("N_list", c.n_list, 8, 1 << 24);
        r.integer("replicas", c.replicas, 1, 100000);
        r.real("delta", c.delta, 0.0, 10.0, false, true);
        r.real("ell_exponent", c.ell_exponent, 0.0, 16.0, false, true);
        r.real("t_max", c.t_max, 0.0, 1e6, false, true);
        if (profile) {
            c.profile = *profile;
            if (!(profile->min() > 0.5 && profile->max() <= 1.0))
                errs.push_back("profile must map into (1/2, 1]");
            else if (profile->min() == 1.0)
                errs.push_back("profile identically 1 has no transient phase");
        }
        break;
    case ExperimentKind::MeasureTable:
        r.allow({"rho_list", "l_max", "samples", "table_N", "table_k", "window_l", "count_N_max"});
        c.rho_list = {0.6, 0.75, 0.9};
        r.real_list("rho_list", c.rho_list, 0.5, 1.0);
        r.integer("l_max", c.l_max, 1, 1000);
        r.integer("samples", c.samples, 2, 100000000);
        r.integer("table_N", c.table_n, 2, 24);
        r.integer("table_k", c.table_k, 1, 24);
        r.integer("window_l", c.window_l, 1, 24);
        r.integer("count_N_max", c.count_n_max, 1, 24);
        if (2 * c.table_k <= c.table_n || c.table_k > c.table_n)
            errs.push_back("table_k must satisfy table_N/2 < table_k <= table_N");
        if (c.window_l > c.table_n)
            errs.push_back("window_l must not exceed table_N");
        break;
    case ExperimentKind::Verify:
        r.allow({"suites"});
        c.suites = kSuites;
        if (doc.contains("suites")) {
            if (!doc["suites"].is_array())
                errs.push_back("field 'suites' must be an array of strings");
            else {
                c.suites.clear();
                for (const auto& s : doc["suites"]) {
                    if (!s.is_string() || std::find(kSuites.begin(), kSuites.end(), s.get<std::string>()) == kSuites.end())
                        errs.push_back("field 'suites' has unknown entry " + s.dump());
                    else
                        c.suites.push_back(s.get<std::string>());
                }
            }
        }
        break;
    }
    r.check_unknown();
    if (!errs.empty())
        throw ConfigError(errs);
    return c;
}

json ExperimentConfig::to_json() const
{
    json j;
    j["kind"] = to_string(kind);
    j["master_seed"] = master_seed;
    j["output_dir"] = output_dir;
    j["deterministic"] = deterministic;
    switch (kind) {
    case ExperimentKind::Simulate:
        if (!initial.empty())
            j["initial"] = initial;
        else {
            j["N"] = n;
            j["profile"] = profile_to_json(profile);
        }
        j["t_end"] = t_end;
        j["replicas"] = replicas;
        j["record_events"] = record_events;
        break;
    case ExperimentKind::Pde:
        j["profile"] = profile_to_json(profile);
        j["grid_M"] = grid_m;
        j["t_end"] = t_end;
        j["snapshots"] = snapshots;
        j["cfl"] = cfl;
        break;
    case ExperimentKind::HydroCompare:
        j["N"] = n;
        j["profile"] = profile_to_json(profile);
        j["t_end"] = t_end;
        j["replicas"] = replicas;
        j["block_l"] = block_l;
        j["grid_M"] = grid_m;
        break;
    case ExperimentKind::Transience:
        j["N_list"] = n_list;
        j["profile"] = profile_to_json(profile);
        j["replicas"] = replicas;
        if (delta > 0)
            j["delta"] = delta;
        j["ell_exponent"] = ell_exponent;
        j["t_max"] = t_max;
        break;
    case ExperimentKind::MeasureTable:
        j["rho_list"] = rho_list;
        j["l_max"] = l_max;
        j["samples"] = samples;
        j["table_N"] = table_n;
        j["table_k"] = table_k;
        j["window_l"] = window_l;
        j["count_N_max"] = count_n_max;
        break;
    case ExperimentKind::Verify: j["suites"] = suites; break;
    }
    return j;
}

std::string ExperimentConfig::hash() const
{
    // output location and thread count do not change results
    json j = to_json();
    j.erase("output_dir");
    std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fep
