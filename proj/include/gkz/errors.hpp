#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gkz
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A factor z+j = 0 would have to be inverted.
class UndefinedBracket : public Error
{
public:
    explicit UndefinedBracket(const std::string &what, std::optional<std::size_t> index = {})
        : Error(what), m_index(index)
    {
    }
    const std::optional<std::size_t> &index() const noexcept
    {
        return m_index;
    }

private:
    std::optional<std::size_t> m_index;
};

class PoleAtShift : public Error
{
public:
    using Error::Error;
};

// A lattice point outside the support sets guaranteed by the minimality hypotheses was reached.
class MinimalityViolation : public Error
{
public:
    using Error::Error;
};

class ResourceLimit : public Error
{
public:
    using Error::Error;
};

class NonLatticeExponent : public Error
{
public:
    using Error::Error;
};

class DegenerateHull : public Error
{
public:
    using Error::Error;
};

class NoPositiveFunctional : public Error
{
public:
    using Error::Error;
};

class InsufficientRadius : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

class AsymmetricTable : public Error
{
public:
    using Error::Error;
};

class InputError : public Error
{
public:
    using Error::Error;
};

} // namespace gkz
