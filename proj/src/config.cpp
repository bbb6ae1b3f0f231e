#include "fsi/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fsi {

int RunConfig::n_steps() const { return static_cast<int>(std::llround(T / dt)); }

void RunConfig::validate() const {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("config: " + what);
    };
    if (!(L > 0.0) || !(R > 0.0) || !(eps > 0.0)) fail("geometry L, R, eps must be > 0");
    if (nx < 1 || ny_f < 1 || ny_s < 1) fail("nx, ny_f, ny_s must be >= 1");
    if (!(dt > 0.0)) fail("dt must be > 0");
    if (T < 0.0) fail("T must be >= 0");
    params.validate();
    if (n_corrections < 0) fail("n_corrections must be >= 0");
    if (!(inlet_amplitude >= 0.0)) fail("inlet_amplitude must be >= 0");
    if (!(inlet_half_period > 0.0)) fail("inlet_half_period must be > 0");
    for (double s : snapshot_times)
        if (s < 0.0 || s > T + 1e-12 * std::max(1.0, T)) fail("snapshot time outside [0, T]");
}

namespace {

class KeyValueFile {
public:
    KeyValueFile(const std::string& text, const std::string& origin) : origin_(origin) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw std::invalid_argument(origin_ + ":" + std::to_string(lineno) +
                                                ": expected 'key = value'");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument(origin_ + ":" + std::to_string(lineno) +
                                            ": empty key");
            if (!values_.emplace(key, value).second)
                throw std::invalid_argument(origin_ + ": duplicate key '" + key + "'");
        }
    }

    double number(const std::string& key) { return parse_number(key, take(key)); }
    int integer(const std::string& key) {
        const double v = number(key);
        if (v != std::floor(v))
            throw std::invalid_argument(origin_ + ": key '" + key + "' must be an integer");
        return static_cast<int>(v);
    }
    std::string word(const std::string& key) { return take(key); }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }
    int integer_or(const std::string& key, int fallback) {
        return has(key) ? integer(key) : fallback;
    }
    std::string word_or(const std::string& key, const std::string& fallback) {
        return has(key) ? word(key) : fallback;
    }
    bool flag_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string v = take(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw std::invalid_argument(origin_ + ": key '" + key + "' must be true or false");
    }
    std::vector<double> number_list_or(const std::string& key) {
        std::vector<double> out;
        if (!has(key)) return out;
        std::istringstream in(take(key));
        std::string tok;
        while (in >> tok) out.push_back(parse_number(key, tok));
        return out;
    }

    void finish(const std::vector<std::string>& missing) const {
        std::string msg;
        if (!missing.empty()) {
            msg = origin_ + ": missing required key(s): ";
            for (std::size_t i = 0; i < missing.size(); ++i)
                msg += (i ? ", " : "") + missing[i];
        }
        if (!values_.empty()) {
            if (!msg.empty()) msg += "; ";
            else msg = origin_ + ": ";
            msg += "unknown key(s): ";
            bool first = true;
            for (const auto& [k, v] : values_) {
                msg += (first ? "" : ", ") + k;
                first = false;
            }
        }
        if (!msg.empty()) throw std::invalid_argument(msg);
    }

    /// consumes the key if present; records it as missing otherwise
    std::string take_required(const std::string& key, std::vector<std::string>& missing) {
        if (!has(key)) {
            missing.push_back(key);
            return {};
        }
        return take(key);
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }
    std::string take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end())
            throw std::invalid_argument(origin_ + ": missing required key '" + key + "'");
        std::string v = it->second;
        values_.erase(it);
        return v;
    }
    double parse_number(const std::string& key, const std::string& text) const {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || text.empty())
            throw std::invalid_argument(origin_ + ": key '" + key + "': cannot parse number '" +
                                        text + "'");
        return v;
    }

    std::string origin_;
    std::map<std::string, std::string> values_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    KeyValueFile kv(text, origin);
    RunConfig cfg;

    // Collect all missing required keys before failing so an empty file
    // reports the full list.
    std::vector<std::string> missing;
    auto num = [&](const std::string& key) {
        if (!kv.has(key)) {
            missing.push_back(key);
            return 0.0;
        }
        return kv.number(key);
    };
    auto integer = [&](const std::string& key) {
        if (!kv.has(key)) {
            missing.push_back(key);
            return 0;
        }
        return kv.integer(key);
    };

    cfg.L = num("L");
    cfg.R = num("R");
    cfg.eps = num("eps");
    cfg.nx = integer("nx");
    cfg.ny_f = integer("ny_f");
    cfg.ny_s = integer("ny_s");
    cfg.dt = num("dt");
    cfg.T = num("T");
    cfg.params.rho_f = num("rho_f");
    cfg.params.rho_s = num("rho_s");
    cfg.params.mu = num("mu");
    cfg.params.L1 = num("L1");
    cfg.params.L2 = num("L2");
    cfg.params.c0 = num("c0");
    cfg.params.alpha = num("alpha");
    cfg.params.beta_p = num("beta_p");
    cfg.inlet_amplitude = num("inlet_amplitude");
    cfg.inlet_half_period = num("inlet_half_period");

    const bool has_scheme = kv.has("scheme");
    const std::string scheme = kv.take_required("scheme", missing);
    if (has_scheme) {
        if (scheme == "loose")
            cfg.scheme = SchemeKind::Loose;
        else if (scheme == "monolithic")
            cfg.scheme = SchemeKind::Monolithic;
        else
            throw std::invalid_argument(origin + ": key 'scheme': expected loose or monolithic, got '" +
                                        scheme + "'");
    }

    cfg.n_corrections = kv.integer_or("n_corrections", 0);
    cfg.snapshot_times = kv.number_list_or("snapshot_times");
    cfg.csv_prefix = kv.word_or("csv_prefix", cfg.csv_prefix);
    cfg.write_vtk = kv.flag_or("write_vtk", false);
    cfg.deterministic = kv.flag_or("deterministic", true);

    kv.finish(missing);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

double inlet_pressure(double t, double amplitude, double half_period) {
    if (t <= 0.0 || t >= half_period) return 0.0;
    return amplitude * std::sin(std::numbers::pi * t / half_period);
}

}  // namespace fsi
