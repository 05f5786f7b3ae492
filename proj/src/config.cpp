#include "volhaz/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace volhaz {

namespace {

struct KeyValue {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::map<std::string, KeyValue> read_pairs(std::istream& is) {
    std::map<std::string, KeyValue> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        if (pairs.count(key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
        pairs[key] = {value, lineno};
    }
    return pairs;
}

double parse_double(const std::string& key, const KeyValue& kv) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(kv.value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != kv.value.size())
        throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                    ": key '" + key + "' is not a number");
    return v;
}

long long parse_int(const std::string& key, const KeyValue& kv) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(kv.value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != kv.value.size())
        throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                    ": key '" + key + "' is not an integer");
    return v;
}

std::vector<double> parse_array(const std::string& key, const KeyValue& kv) {
    std::vector<double> out;
    std::stringstream ss(kv.value);
    std::string field;
    while (std::getline(ss, field, ',')) {
        field = trim(field);
        if (field.empty())
            throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                        ": key '" + key + "' has an empty entry");
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != field.size())
            throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                        ": key '" + key + "' has a non-numeric entry");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                    ": key '" + key + "' is an empty array");
    return out;
}

}  // namespace

ProblemConfig parse_config(std::istream& is) {
    auto pairs = read_pairs(is);
    static const char* known[] = {"R_A",  "R_P",     "rho",     "d",    "d0",
                                  "b",    "alpha",   "beta",    "sigma", "T",
                                  "n_steps", "n_paths", "seed", "zero_cost"};
    for (const auto& [key, kv] : pairs) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw std::invalid_argument("config line " + std::to_string(kv.line) +
                                        ": unknown key '" + key + "'");
    }
    auto require = [&](const char* key) -> const KeyValue& {
        auto it = pairs.find(key);
        if (it == pairs.end())
            throw std::invalid_argument(std::string("config: missing required key '") +
                                        key + "'");
        return it->second;
    };
    auto opt_double = [&](const char* key, double dflt) {
        auto it = pairs.find(key);
        return it == pairs.end() ? dflt : parse_double(key, it->second);
    };
    auto opt_int = [&](const char* key, long long dflt) {
        auto it = pairs.find(key);
        return it == pairs.end() ? dflt : parse_int(key, it->second);
    };

    ProblemConfig cfg;
    cfg.preferences.R_A = parse_double("R_A", require("R_A"));
    cfg.preferences.R_P = parse_double("R_P", require("R_P"));
    cfg.preferences.rho = opt_double("rho", 1.0);
    cfg.market.d = static_cast<int>(parse_int("d", require("d")));
    cfg.market.d0 = static_cast<int>(opt_int("d0", 0));
    cfg.market.b = parse_array("b", require("b"));
    if (pairs.count("sigma")) cfg.market.sigma = parse_array("sigma", pairs.at("sigma"));

    cfg.cost.zero_cost = opt_int("zero_cost", 0) != 0;
    const std::size_t d = static_cast<std::size_t>(std::max(cfg.market.d, 0));
    if (pairs.count("alpha"))
        cfg.cost.alpha = parse_array("alpha", pairs.at("alpha"));
    else if (cfg.cost.zero_cost)
        cfg.cost.alpha.assign(d, 0.0);
    else
        throw std::invalid_argument("config: missing required key 'alpha'");
    if (pairs.count("beta"))
        cfg.cost.beta = parse_array("beta", pairs.at("beta"));
    else if (cfg.cost.zero_cost)
        cfg.cost.beta.assign(d, 0.0);
    else
        throw std::invalid_argument("config: missing required key 'beta'");

    cfg.sim.T = opt_double("T", 1.0);
    cfg.sim.n_steps = static_cast<int>(opt_int("n_steps", 200));
    cfg.sim.n_paths = static_cast<int>(opt_int("n_paths", 10000));
    cfg.sim.seed = static_cast<std::uint64_t>(opt_int("seed", 12345));
    if (cfg.sim.T <= 0.0 || !std::isfinite(cfg.sim.T))
        throw std::invalid_argument("config: T must be positive");
    if (cfg.sim.n_steps < 1) throw std::invalid_argument("config: n_steps must be >= 1");
    if (cfg.sim.n_paths < 1) throw std::invalid_argument("config: n_paths must be >= 1");
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(f);
}

ContractControls parse_contract(std::istream& is) {
    auto pairs = read_pairs(is);
    static const char* known[] = {"cash", "zX", "gammaX", "z1", "gamma1"};
    for (const auto& [key, kv] : pairs) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw std::invalid_argument("contract line " + std::to_string(kv.line) +
                                        ": unknown key '" + key + "'");
    }
    auto opt = [&](const char* key) {
        auto it = pairs.find(key);
        return it == pairs.end() ? 0.0 : parse_double(key, it->second);
    };
    ContractControls c;
    c.cash = opt("cash");
    c.zX = opt("zX");
    c.gammaX = opt("gammaX");
    c.z1 = opt("z1");
    c.gamma1 = opt("gamma1");
    return c;
}

ContractControls load_contract(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open contract file: " + path);
    return parse_contract(f);
}

}  // namespace volhaz
