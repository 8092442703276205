#pragma once

#include <stdexcept>
#include <string>

namespace loophom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error { using Error::Error; };
class UnknownNameError : public Error { using Error::Error; };
class DegreeMismatchError : public Error { using Error::Error; };
class InvalidModelError : public Error { using Error::Error; };
class MissingOrientationError : public Error { using Error::Error; };
class DimensionMismatchError : public Error { using Error::Error; };
class GradingError : public Error { using Error::Error; };
class NotInImageError : public Error { using Error::Error; };
class TruncationError : public Error { using Error::Error; };
class StructureError : public Error { using Error::Error; };

// Raised by homology() when d_out * d_in != 0. Almost always a sign bug upstream.
class CompositionNonzeroError : public Error { using Error::Error; };

}  // namespace loophom
