#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace attnkern {

// Flat key = value text, one pair per line, '#' comments. Order-preserving so
// identical inputs produce byte-identical reports. Doubles are written with
// 17 significant digits and round-trip exactly.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set_double(const std::string& key, double value);
    void set_u64(const std::string& key, std::uint64_t value);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const; // throws format_error when missing
    double get_double(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

    std::string to_string() const;
    void save(const std::string& path) const; // atomic (temp + rename)
    static Report parse(const std::string& text);
    static Report load(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace attnkern
