#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tscheme {

using ConfigValue = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

// Typed key-value settings. The keys and value types are fixed by the defaults given at
// construction; every later assignment is checked against them.
class Config {
public:
    Config() = default;
    explicit Config(std::map<std::string, ConfigValue> defaults);

    bool contains(std::string_view key) const;
    std::vector<std::string> keys() const;

    void set(const std::string& key, ConfigValue value);
    // Parses `text` according to the type of the default ("true", "3", "0.5", "a,b,c", "[1,2]").
    void set_text(const std::string& key, std::string_view text);
    // "key=value"
    void apply_assignment(std::string_view assignment);
    // Flat JSON object of key -> scalar or array of numbers.
    void merge_json(std::string_view text);
    void merge_json_file(const std::filesystem::path& path);

    bool get_bool(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    double get_real(const std::string& key) const;
    const std::string& get_text(const std::string& key) const;
    const std::vector<double>& get_list(const std::string& key) const;

    std::string to_json() const;

    bool operator==(const Config&) const = default;

private:
    const ConfigValue& lookup(const std::string& key) const;

    std::map<std::string, ConfigValue> values_;
};

}
