#ifndef ARS_ERROR_HPP
#define ARS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ars {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated file content. Carries the byte offset at which
/// parsing stopped.
class ParseError : public Error
{
public:
  ParseError(const std::string& what, std::size_t offset)
    : Error(what + " at byte " + std::to_string(offset)), offset_(offset)
  {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Arguments outside an operation's domain (bad dims, bad parameters).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

/// Quantity is mathematically undefined for the given input, e.g. the
/// correlation of a constant raster.
class UndefinedMetric : public Error
{
public:
  using Error::Error;
};

} // namespace ars

#endif // ARS_ERROR_HPP
