#include "muskat/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace muskat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& p : v) out += "\n  - " + p;
    return out;
}

struct RawConfig {
    // section -> key -> (value, consumed)
    std::map<std::string, std::map<std::string, std::pair<std::string, bool>>> data;

    bool has(const std::string& sec, const std::string& key) const {
        auto s = data.find(sec);
        if (s == data.end()) return false;
        return s->second.count(key) > 0;
    }
    std::string take(const std::string& sec, const std::string& key) {
        auto& entry = data[sec][key];
        entry.second = true;
        return entry.first;
    }
};

class Validator {
  public:
    explicit Validator(RawConfig& raw) : raw_(raw) {}

    void complain(std::string msg) { problems_.push_back(std::move(msg)); }

    double number(const std::string& sec, const std::string& key, double fallback,
                  bool required = false) {
        if (!raw_.has(sec, key)) {
            if (required) complain("missing required key [" + sec + "] " + key);
            return fallback;
        }
        const std::string v = raw_.take(sec, key);
        try {
            size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing garbage");
            return d;
        } catch (...) {
            complain("[" + sec + "] " + key + ": cannot parse number from '" + v + "'");
            return fallback;
        }
    }

    long integer(const std::string& sec, const std::string& key, long fallback,
                 bool required = false) {
        const double d = number(sec, key, static_cast<double>(fallback), required);
        if (d != std::floor(d))
            complain("[" + sec + "] " + key + ": expected an integer");
        return static_cast<long>(d);
    }

    std::string word(const std::string& sec, const std::string& key,
                     const std::string& fallback, bool required = false) {
        if (!raw_.has(sec, key)) {
            if (required) complain("missing required key [" + sec + "] " + key);
            return fallback;
        }
        return raw_.take(sec, key);
    }

    std::vector<double> number_list(const std::string& sec, const std::string& key) {
        std::vector<double> out;
        if (!raw_.has(sec, key)) return out;
        std::stringstream ss(raw_.take(sec, key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (...) {
                complain("[" + sec + "] " + key + ": bad list entry '" + item + "'");
            }
        }
        return out;
    }

    void reject_unconsumed() {
        for (const auto& [sec, keys] : raw_.data)
            for (const auto& [key, entry] : keys)
                if (!entry.second)
                    complain("unknown key [" + sec + "] " + key);
    }

    const std::vector<std::string>& problems() const { return problems_; }

  private:
    RawConfig& raw_;
    std::vector<std::string> problems_;
};

RawConfig tokenize(const std::string& text, std::vector<std::string>& problems) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    static const std::set<std::string> known_sections{"scenario", "grid", "time",
                                                      "output", "run"};
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(section))
                problems.push_back("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        if (section.empty()) {
            problems.push_back("line " + std::to_string(lineno) + ": key outside any section");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (raw.data[section].count(key))
            problems.push_back("duplicate key [" + section + "] " + key);
        raw.data[section][key] = {value, false};
    }
    return raw;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

SimConfig parse_config(const std::string& text) {
    std::vector<std::string> problems;
    RawConfig raw = tokenize(text, problems);
    Validator v(raw);
    for (auto& p : problems) v.complain(p);

    SimConfig cfg;

    if (!raw.data.count("scenario")) {
        v.complain("missing scenario section");
    } else {
        const std::string kind = v.word("scenario", "kind", "", true);
        if (kind == "periodic_touching_bump") {
            cfg.scenario.kind = ScenarioKind::PeriodicTouchingBump;
            cfg.scenario.epsilon = v.number("scenario", "epsilon", 0.05, true);
            cfg.scenario.nu = v.number("scenario", "nu", 1.0);
        } else if (kind == "localized_bump_on_constant") {
            cfg.scenario.kind = ScenarioKind::LocalizedBumpOnConstant;
            cfg.scenario.psi_inf = v.number("scenario", "psi_inf", 1.0, true);
            cfg.scenario.epsilon = v.number("scenario", "epsilon", 0.5, true);
            cfg.scenario.width = v.number("scenario", "width", 2.0, true);
            cfg.scenario.half_width = v.number("scenario", "half_width", 8.0, true);
        } else if (kind == "plane_graph") {
            cfg.scenario.kind = ScenarioKind::PlaneGraph;
            const std::string shape = v.word("scenario", "shape", "sine");
            if (shape == "sine") {
                cfg.scenario.shape = PlaneShape::Sine;
                cfg.scenario.nu = v.number("scenario", "nu", 1.0);
            } else if (shape == "bump") {
                cfg.scenario.shape = PlaneShape::Bump;
                cfg.scenario.half_width = v.number("scenario", "half_width", 8.0);
            } else {
                v.complain("[scenario] shape must be 'sine' or 'bump'");
            }
            cfg.scenario.amplitude = v.number("scenario", "amplitude", 0.1, true);
            cfg.scenario.psi_inf = v.number("scenario", "psi_inf", 0.0);
        } else if (kind.empty()) {
            // already reported as missing
        } else {
            v.complain("[scenario] unknown kind '" + kind + "'");
        }
    }

    cfg.n = static_cast<int>(v.integer("grid", "n", 256));

    StepControl& ctl = cfg.params.control;
    cfg.params.t_end = v.number("time", "t_end", 1.0);
    ctl.rtol = v.number("time", "rtol", ctl.rtol);
    ctl.atol = v.number("time", "atol", ctl.atol);
    ctl.dt_init = v.number("time", "dt_init", ctl.dt_init);
    ctl.dt_min = v.number("time", "dt_min", ctl.dt_min);
    ctl.dt_max = v.number("time", "dt_max", ctl.dt_max);
    ctl.cfl_cap = v.number("time", "cfl_cap", ctl.cfl_cap);

    cfg.output_dir = v.word("output", "output_dir", cfg.output_dir);
    cfg.params.record_every =
        static_cast<int>(v.integer("output", "record_every", cfg.params.record_every));
    cfg.params.gamma_prime = v.number("output", "gamma_prime", cfg.params.gamma_prime);
    cfg.params.snapshot_times = v.number_list("output", "snapshot_times");

    cfg.params.rhs.threads = static_cast<int>(v.integer("run", "threads", 1));
    cfg.params.rhs.h_floor_factor =
        v.number("run", "h_floor_factor", cfg.params.rhs.h_floor_factor);
    cfg.params.max_wall_seconds = v.number("run", "max_wall_seconds", 0.0);

    v.reject_unconsumed();

    // Re-validate every referenced invariant now rather than at run time.
    std::vector<std::string> all = v.problems();
    auto check = [&](auto&& fn, const char* what) {
        try {
            fn();
        } catch (const std::exception& e) {
            all.push_back(std::string(what) + ": " + e.what());
        }
    };
    check([&] { ctl.validate(); }, "time");
    if (cfg.n < 8) all.push_back("grid: n must be at least 8");
    if (cfg.params.record_every < 1) all.push_back("output: record_every must be >= 1");
    if (!(cfg.params.gamma_prime > 0.0 && cfg.params.gamma_prime <= 1.0))
        all.push_back("output: gamma_prime must lie in (0, 1]");
    if (cfg.params.rhs.threads < 1) all.push_back("run: threads must be >= 1");
    if (cfg.params.rhs.h_floor_factor < 0.0)
        all.push_back("run: h_floor_factor must be >= 0");
    if (cfg.params.t_end < 0.0) all.push_back("time: t_end must be >= 0");
    if (all.empty())
        check([&] { build_scenario(cfg.scenario, cfg.n); }, "scenario");

    if (!all.empty()) throw ConfigError(std::move(all));
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace muskat
