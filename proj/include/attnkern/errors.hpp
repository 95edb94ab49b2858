#pragma once

#include <stdexcept>
#include <string>

namespace attnkern {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a distinct exit code and a single-line diagnostic.
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace attnkern
