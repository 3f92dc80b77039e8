#ifndef CABLEWAVE_ERRORS_HPP
#define CABLEWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cablewave {

/// Both substrate stiffnesses must be strictly positive for a wave to exist.
class DegenerateSubstrateError : public std::domain_error {
 public:
  explicit DegenerateSubstrateError(const std::string& what) : std::domain_error(what) {}
};

/// The dispersion residual was requested at (or numerically on top of) a pole.
class SingularPointError : public std::domain_error {
 public:
  explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

/// No dispersion root is available for the requested branch below the scan limit.
class NoRootError : public std::domain_error {
 public:
  explicit NoRootError(const std::string& what) : std::domain_error(what) {}
};

/// The sign of the distributed load is incompatible with the admissibility condition.
class InadmissibleLoadError : public std::domain_error {
 public:
  explicit InadmissibleLoadError(const std::string& what) : std::domain_error(what) {}
};

/// Loaded waves degenerate when the compression fraction hits its critical value.
class CriticalAlphaError : public std::domain_error {
 public:
  explicit CriticalAlphaError(const std::string& what) : std::domain_error(what) {}
};

/// The explicit scheme blew up (state exceeded the runaway threshold).
class InstabilityError : public std::runtime_error {
 public:
  explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A recorded series is too short for the requested analysis window.
class InsufficientDurationError : public std::invalid_argument {
 public:
  explicit InsufficientDurationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Fewer samples than the analysis needs to produce meaningful statistics.
class TooFewSamplesError : public std::invalid_argument {
 public:
  explicit TooFewSamplesError(const std::string& what) : std::invalid_argument(what) {}
};

/// Experiment-description parse failure: unknown key, missing required key,
/// or invalid value. The message names the offending key.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Filesystem-level emission failure (unwritable directory, ...).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cablewave

#endif
