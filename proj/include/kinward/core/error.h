#pragma once

#include <stdexcept>
#include <string>

namespace kinward
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based; 0 when the problem is not tied to a line.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line)
    {
    }

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

/// A SNP whose allele frequency sits on {0, 1}, so it cannot be standardized.
class DegenerateSnpError : public Error
{
public:
    using Error::Error;
};

class NumericalError : public Error
{
public:
    using Error::Error;
};

}  // namespace kinward
