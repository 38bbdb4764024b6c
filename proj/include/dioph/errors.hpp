#ifndef DIOPH_ERRORS_HPP
#define DIOPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dioph
{

class ParseError : public std::runtime_error
{
public:
    enum class Kind { syntax, degenerate, constant_only };

    ParseError(Kind kind, std::size_t position, const std::string &what)
        : std::runtime_error(what), kind_(kind), position_(position)
    {
    }

    Kind kind() const noexcept
    {
        return kind_;
    }
    // Byte offset into the input where the problem was detected.
    std::size_t position() const noexcept
    {
        return position_;
    }

private:
    Kind kind_;
    std::size_t position_;
};

// A value tuple, parameter tuple or family does not match the variable count.
class ArityError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A configured resource limit (variable count, H bound, evaluation budget) would be exceeded.
class LimitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class CatalogError : public std::runtime_error
{
public:
    CatalogError(std::size_t line, const std::string &what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept
    {
        return line_;
    }

private:
    std::size_t line_;
};

} // namespace dioph

#endif
