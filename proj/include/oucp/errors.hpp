#pragma once

#include <stdexcept>
#include <string>

namespace oucp {

// Raised when a computation cannot produce a usable result: indefinite or
// near-singular sufficient-statistic matrix, every scan candidate failing,
// or a Monte Carlo run with too many failed iterations. Input/format
// problems throw std::invalid_argument instead.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oucp
