#ifndef MOMSJUMP_ERRORS_HPP
#define MOMSJUMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace momsjump {

// Exit codes of the command-line front end.
enum class ExitCode : int { success = 0, usage = 2, data = 3, numerical = 4 };

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Malformed input files, degenerate columns, inconsistent inputs.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::data, what) {}
};

// Invalid configuration or a request the selected backend refuses.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::usage, what) {}
};

// Rank deficiency, quadrature failure, non-finite densities.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

class RankDeficiencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double achieved)
      : NumericalError(what), achieved_error_(achieved) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

class DegenerateProposalError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EnumerationRefused : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace momsjump

#endif  // MOMSJUMP_ERRORS_HPP
