#include "ucae/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ucae/errors.hpp"

namespace ucae {

const std::vector<std::string> kConfigKeys = {
    // world generation
    "latent_dim", "domains", "warp_alpha", "cluster_shift", "samples", "identity_world",
    // training
    "lambda", "batch_size", "steps", "disc_steps", "lr_gen", "lr_disc", "hidden_gen",
    "hidden_disc", "leaky_slope", "noise_dim", "conditioned", "non_saturating",
    // latent learning
    "rounds", "bank_size",
    // evaluation
    "eval_samples", "permutations", "bound_samples",
};

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
            throw UsageError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key +
                             "'");
        if (cfg.values_.count(key))
            throw UsageError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                             "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_text(text.str(), path);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

long Config::get_int(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    long v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("config: key '" + key + "' is not an integer: '" + s + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    double v = 0.0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("config: key '" + key + "' is not a number: '" + s + "'");
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw UsageError("config: key '" + key + "' is not a bool: '" + it->second + "'");
}

std::vector<int> Config::get_int_list(const std::string& key,
                                      const std::vector<int>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<int> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        int v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw UsageError("config: key '" + key + "' has a bad integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("config: key '" + key + "' is empty");
    return out;
}

std::vector<std::pair<int, int>> Config::get_dim_pairs(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("config: missing required key '" + key + "'");
    std::vector<std::pair<int, int>> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("config: key '" + key + "': expected n:m pairs, got '" + item + "'");
        int n = 0, m = 0;
        auto r1 = std::from_chars(item.data(), item.data() + colon, n);
        auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), m);
        if (r1.ec != std::errc() || r2.ec != std::errc() ||
            r1.ptr != item.data() + colon || r2.ptr != item.data() + item.size())
            throw UsageError("config: key '" + key + "': bad pair '" + item + "'");
        out.emplace_back(n, m);
    }
    if (out.empty()) throw UsageError("config: key '" + key + "' is empty");
    return out;
}

}  // namespace ucae
