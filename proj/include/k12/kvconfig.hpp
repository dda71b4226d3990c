#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace k12 {

// Flat key-value configuration with dotted section keys, e.g.
//
//     paths.vocab = data/vocab.txt
//     train.batch_size = 32
//     # comment
//
// Every key can be overridden by a --key=value command line flag.
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig load(const std::string& path);

    // Parses "key=value" (leading "--" allowed) and stores it.
    void apply_override(std::string_view arg);

    void set(std::string key, std::string value);
    bool has(const std::string& key) const;

    std::string get_str(const std::string& key, const std::string& fallback = "") const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated list; empty/missing key yields an empty list.
    std::vector<std::string> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

} // namespace k12
