#pragma once

#include <stdexcept>
#include <string>

namespace zjkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group (or a group the operation would have to build) exceeds the
/// configured order bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotPGroup : public Error {
 public:
  using Error::Error;
};

class NotAbelian : public Error {
 public:
  using Error::Error;
};

class EvenPrime : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

class SylowMismatch : public Error {
 public:
  using Error::Error;
};

class NotPSubgroup : public Error {
 public:
  using Error::Error;
};

/// Input that could not be parsed or does not describe a valid group.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file or directory could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of a lemma or theorem does not hold. `tag()` names the
/// first clause that failed.
class HypothesisFailure : public Error {
 public:
  HypothesisFailure(std::string tag, const std::string& what)
      : Error(what), tag_(std::move(tag)) {}
  explicit HypothesisFailure(std::string tag)
      : Error("hypothesis failed: " + tag), tag_(std::move(tag)) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

/// Raised when a proved statement fails on a concrete instance. Seeing one
/// means a kernel bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace zjkit
