#pragma once

#include <stdexcept>
#include <string>

namespace strfp {

// Unreadable or malformed input (files, solution text, corpora).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// A feasibility guard tripped, e.g. exact enumeration over a too-large alphabet.
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace strfp
