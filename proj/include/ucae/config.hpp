#pragma once

#include <map>
#include <string>
#include <vector>

namespace ucae {

// Flat `key = value` experiment configuration. '#' starts a comment. Unknown
// keys are hard errors so typos in experiment configs cannot silently fall
// back to defaults; the documented key list lives in kConfigKeys.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<config>");

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // "a,b,c" -> integers.
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
    // "n:m,n:m,..." -> per-domain (obs_dim, noise_dim) pairs.
    std::vector<std::pair<int, int>> get_dim_pairs(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

extern const std::vector<std::string> kConfigKeys;

}  // namespace ucae
