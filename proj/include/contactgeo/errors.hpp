#pragma once

#include <stdexcept>
#include <string>

namespace contactgeo {

/// Base class for every error raised by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point outside the chart domain, or a tensor fed with the wrong shape.
class DomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DimensionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Raised when a jet is differentiated past the order it carries.
class JetOrderError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class UnsupportedError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// The inputs do not satisfy the hypotheses of the requested construction.
class PreconditionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotContactError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A metric or bilinear form that must be nondegenerate is not.
class NondegeneracyError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A structure violates one of its defining identities.
class AxiomError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A model file that cannot be read or does not describe a model.
class ModelFileError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace contactgeo
