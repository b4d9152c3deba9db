#pragma once

#include <stdexcept>
#include <string>

namespace cspread {

/// Malformed or inconsistent input data (files, quotes, misaligned series).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a valid answer
/// (rank deficiency, no root in bracket, optimizer stall).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cspread
