#include "attnkern/io/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "attnkern/io/common.hpp"
#include "io/binary.hpp"

namespace attnkern {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void Report::set(const std::string& key, const std::string& value) {
    for (auto& item : items_) {
        if (item.first == key) {
            item.second = value;
            return;
        }
    }
    items_.emplace_back(key, value);
}

void Report::set_double(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    set(key, buf);
}

void Report::set_u64(const std::string& key, std::uint64_t value) {
    set(key, std::to_string(value));
}

bool Report::has(const std::string& key) const {
    for (const auto& item : items_)
        if (item.first == key) return true;
    return false;
}

const std::string& Report::get(const std::string& key) const {
    for (const auto& item : items_)
        if (item.first == key) return item.second;
    throw format_error("report: missing key '" + key + "'");
}

double Report::get_double(const std::string& key) const {
    const std::string& text = get(key);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw format_error("report: key '" + key + "' is not a number: '" + text + "'");
    return value;
}

std::uint64_t Report::get_u64(const std::string& key) const {
    const std::string& text = get(key);
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw format_error("report: key '" + key + "' is not an integer: '" + text + "'");
    return value;
}

std::string Report::to_string() const {
    std::string out;
    for (const auto& item : items_) {
        out += item.first;
        out += " = ";
        out += item.second;
        out += '\n';
    }
    return out;
}

void Report::save(const std::string& path) const { io::write_file_atomic(path, to_string()); }

Report Report::parse(const std::string& text) {
    Report report;
    std::size_t line_start = 0;
    std::size_t line_no = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos) line_end = text.size();
        ++line_no;
        const std::string line = trim(text.substr(line_start, line_end - line_start));
        line_start = line_end + 1;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw format_error("report: line " + std::to_string(line_no) +
                               " has no '=' separator: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw format_error("report: empty key on line " + std::to_string(line_no));
        report.items_.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return report;
}

Report Report::load(const std::string& path) {
    return parse(io::read_file(path, kDefaultIoCap));
}

} // namespace attnkern
