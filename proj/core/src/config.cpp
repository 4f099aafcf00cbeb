#include "tscheme/config.hpp"

#include "tscheme/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tscheme {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

const char* kind_name(const ConfigValue& v) {
    switch (v.index()) {
    case 0:
        return "boolean";
    case 1:
        return "integer";
    case 2:
        return "number";
    case 3:
        return "string";
    default:
        return "list of numbers";
    }
}

ConfigValue from_json_value(const std::string& key, const json& j) {
    if (j.is_boolean()) {
        return j.get<bool>();
    }
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (j.is_array()) {
        std::vector<double> v;
        for (const json& e : j) {
            if (!e.is_number()) {
                throw ConfigError("config key '" + key + "': arrays may only hold numbers");
            }
            v.push_back(e.get<double>());
        }
        return v;
    }
    throw ConfigError("config key '" + key + "': nested objects and null are not allowed");
}

}

Config::Config(std::map<std::string, ConfigValue> defaults) : values_(std::move(defaults)) {}

bool Config::contains(std::string_view key) const {
    return values_.find(std::string(key)) != values_.end();
}

std::vector<std::string> Config::keys() const {
    std::vector<std::string> k;
    for (const auto& [key, value] : values_) {
        k.push_back(key);
    }
    return k;
}

void Config::set(const std::string& key, ConfigValue value) {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    ConfigValue& slot = it->second;
    if (slot.index() == value.index()) {
        slot = std::move(value);
        return;
    }
    if (std::holds_alternative<double>(slot) && std::holds_alternative<std::int64_t>(value)) {
        slot = static_cast<double>(std::get<std::int64_t>(value));
        return;
    }
    if (std::holds_alternative<std::int64_t>(slot) && std::holds_alternative<double>(value)) {
        const double d = std::get<double>(value);
        if (d == static_cast<double>(static_cast<std::int64_t>(d))) {
            slot = static_cast<std::int64_t>(d);
            return;
        }
    }
    throw ConfigError("config key '" + key + "' expects a " + kind_name(slot) + ", got a " + kind_name(value));
}

void Config::set_text(const std::string& key, std::string_view text) {
    const ConfigValue& current = lookup(key);
    const std::string_view t = trim(text);
    auto fail = [&]() {
        return ConfigError("config key '" + key + "' expects a " + kind_name(current) + ", got '" + std::string(t) +
                           "'");
    };
    switch (current.index()) {
    case 0:
        if (t == "true" || t == "1") {
            set(key, true);
        } else if (t == "false" || t == "0") {
            set(key, false);
        } else {
            throw fail();
        }
        return;
    case 1: {
        std::int64_t v = 0;
        if (!parse_number(t, v)) {
            throw fail();
        }
        set(key, v);
        return;
    }
    case 2: {
        double v = 0.0;
        if (!parse_number(t, v)) {
            throw fail();
        }
        set(key, v);
        return;
    }
    case 3:
        set(key, std::string(t));
        return;
    default: {
        std::string_view body = t;
        if (!body.empty() && body.front() == '[' && body.back() == ']') {
            body = body.substr(1, body.size() - 2);
        }
        std::vector<double> v;
        while (!trim(body).empty()) {
            const std::size_t comma = body.find(',');
            double x = 0.0;
            if (!parse_number(body.substr(0, comma), x)) {
                throw fail();
            }
            v.push_back(x);
            if (comma == std::string_view::npos) {
                break;
            }
            body.remove_prefix(comma + 1);
        }
        set(key, std::move(v));
        return;
    }
    }
}

void Config::apply_assignment(std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    }
    set_text(std::string(trim(assignment.substr(0, eq))), assignment.substr(eq + 1));
}

void Config::merge_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config file must hold a flat JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        set(key, from_json_value(key, value));
    }
}

void Config::merge_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open config file", path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    merge_json(s.str());
}

const ConfigValue& Config::lookup(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    return it->second;
}

namespace {

template <typename T>
const T& typed(const ConfigValue& v, const std::string& key, const char* type) {
    if (const T* p = std::get_if<T>(&v)) {
        return *p;
    }
    throw ConfigError("config key '" + key + "' is not " + type);
}

}

bool Config::get_bool(const std::string& key) const {
    return typed<bool>(lookup(key), key, "a boolean");
}

std::int64_t Config::get_int(const std::string& key) const {
    return typed<std::int64_t>(lookup(key), key, "an integer");
}

double Config::get_real(const std::string& key) const {
    const ConfigValue& v = lookup(key);
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return static_cast<double>(*i);
    }
    return typed<double>(v, key, "a number");
}

const std::string& Config::get_text(const std::string& key) const {
    return typed<std::string>(lookup(key), key, "a string");
}

const std::vector<double>& Config::get_list(const std::string& key) const {
    return typed<std::vector<double>>(lookup(key), key, "a list");
}

std::string Config::to_json() const {
    json j = json::object();
    for (const auto& [key, value] : values_) {
        std::visit([&](const auto& v) { j[key] = v; }, value);
    }
    return j.dump();
}

}
