#include "spectral/model.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "spectral/errors.hpp"

namespace spectral {

void SystemSpec::validate() const {
    if (a.is_negative()) throw DomainError("SystemSpec: a must be >= 0");
    if (b.is_negative()) throw DomainError("SystemSpec: b must be >= 0");
    if (d < 2) throw DomainError("SystemSpec: d must be an integer >= 2");
    if (l < 0) throw DomainError("SystemSpec: l must be an integer >= 0");
    if (R && !(*R > 0)) throw DomainError("SystemSpec: R must be positive");
    if (R && !R->is_finite()) throw DomainError("SystemSpec: finite R expected; omit R when unconfined");
    if (!R && b.is_zero())
        throw DomainError("SystemSpec: discrete spectrum requires b > 0 or finite R");
    if (precision < 10) throw DomainError("SystemSpec: precision must be >= 10 digits");
}

BigReal potential(const SystemSpec& spec, const BigReal& r) {
    if (!(r > 0)) throw DomainError("potential: r must be positive");
    if (spec.R && r >= *spec.R) throw DomainError("potential: r outside the confinement radius");
    return spec.a / r + spec.b * spec.b * r * r;
}

std::vector<std::pair<int, int>> degeneracy_orbit(int d, int l) {
    if (d < 2 || l < 0) throw DomainError("degeneracy_orbit: require d >= 2, l >= 0");
    int k = d + 2 * l;
    std::vector<std::pair<int, int>> orbit;
    for (int dp = k; dp >= 2; --dp) {
        int rem = k - dp;
        if (rem % 2) continue;
        orbit.emplace_back(dp, rem / 2);
    }
    return orbit;
}

std::pair<BigReal, BigReal> scale_reduce(const BigReal& a, const BigReal& b) {
    if (!(b > 0)) throw DomainError("scale_reduce: b must be positive");
    return {a / sqrt(b), b};
}

BigReal oscillator_energy(int n, const SystemSpec& spec) {
    if (n < 0) throw DomainError("oscillator_energy: n must be >= 0");
    if (!spec.a.is_zero()) throw DomainError("oscillator_energy: requires a = 0");
    if (spec.R) throw DomainError("oscillator_energy: requires unconfined system");
    if (!(spec.b > 0)) throw DomainError("oscillator_energy: requires b > 0");
    return spec.b * (4 * n + 2 * spec.l + spec.d);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw DomainError("");
        return x;
    } catch (...) {
        throw DomainError("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

}  // namespace

SolveConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw DomainError("config: line " + std::to_string(lineno) + " has an empty key or value");
        if (!kv.emplace(key, val).second)
            throw DomainError("config: duplicate key '" + key + "'");
    }
    static const char* known[] = {"a", "b", "d", "l", "R", "precision", "digits"};
    for (const auto& [key, val] : kv) {
        (void)val;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw DomainError("config: unknown key '" + key + "'");
    }

    SolveConfig cfg;
    if (auto it = kv.find("precision"); it != kv.end())
        cfg.spec.precision = parse_int("precision", it->second);
    if (auto it = kv.find("digits"); it != kv.end())
        cfg.digits = parse_int("digits", it->second);
    Precision wp(cfg.spec.precision);
    cfg.spec.a = kv.count("a") ? BigReal(kv.at("a"), wp) : BigReal(0, wp);
    cfg.spec.b = kv.count("b") ? BigReal(kv.at("b"), wp) : BigReal(1, wp);
    if (auto it = kv.find("d"); it != kv.end())
        cfg.spec.d = static_cast<int>(parse_int("d", it->second));
    if (auto it = kv.find("l"); it != kv.end())
        cfg.spec.l = static_cast<int>(parse_int("l", it->second));
    if (auto it = kv.find("R"); it != kv.end() && it->second != "inf")
        cfg.spec.R = BigReal(it->second, wp);
    if (cfg.digits < 1) throw DomainError("config: digits must be >= 1");
    cfg.spec.validate();
    return cfg;
}

SolveConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string render_config(const SolveConfig& cfg) {
    std::ostringstream out;
    out << "a = " << cfg.spec.a.str_full() << "\n";
    out << "b = " << cfg.spec.b.str_full() << "\n";
    out << "d = " << cfg.spec.d << "\n";
    out << "l = " << cfg.spec.l << "\n";
    out << "R = " << (cfg.spec.R ? cfg.spec.R->str_full() : std::string("inf")) << "\n";
    out << "precision = " << cfg.spec.precision << "\n";
    out << "digits = " << cfg.digits << "\n";
    return out.str();
}

void save_config(const SolveConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("config: cannot write '" + path + "'");
    out << render_config(cfg);
}

}  // namespace spectral
