#ifndef PDBS_ERRORS_HPP
#define PDBS_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace pdbs {

namespace detail {
inline std::string compact_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
}  // namespace detail

// Invalid model parameters or arguments (kR < 1, q outside (0,1), ...).
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(long line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// An exhaustive enumeration would exceed its cap. `required` is the projected
// enumeration size (kept as double: it can dwarf 2^64).
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(double required, double cap, const std::string& what_for)
        : std::runtime_error(what_for + ": required enumeration size " +
                             detail::compact_double(required) + " exceeds cap " +
                             detail::compact_double(cap)),
          required_(required),
          cap_(cap) {}
    double required() const { return required_; }
    double cap() const { return cap_; }

private:
    double required_;
    double cap_;
};

}  // namespace pdbs

#endif
