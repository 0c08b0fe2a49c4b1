#pragma once

#include <stdexcept>
#include <string>

namespace arabtc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed an argument that violates an operation's precondition
/// (ratio outside (0,1), unknown report format, mismatched label lengths).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The data itself is unusable: missing or empty corpus, undecodable file,
/// empty vocabulary, class without training documents.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace arabtc
