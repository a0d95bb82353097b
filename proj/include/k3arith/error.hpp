#ifndef K3ARITH_ERROR_HPP
#define K3ARITH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace k3 {

// Mathematical precondition violated by the input (inverting zero, an
// indefinite form, p = 2 where bad reduction is known, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Operator error: wrong flags, mismatched contexts, out-of-range arguments.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// The request is legitimate but outside what is implemented (even q for a
// quadratic character, fields too large for character tables, ...).
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Input data contradicts a theorem it must satisfy (Weil bound, functional
// equation, exact divisibility).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InconsistencyError : public DataError {
  public:
    using DataError::DataError;
};

class MultiplicityError : public DataError {
  public:
    using DataError::DataError;
};

// More point counts are required before the zeta function is determined.
class IncompletenessError : public std::runtime_error {
  public:
    IncompletenessError(std::string const & what, std::size_t more_needed)
        : std::runtime_error(what), more_needed_(more_needed)
    {
    }

    std::size_t more_needed() const { return more_needed_; }

  private:
    std::size_t more_needed_;
};

class PrecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Work estimate exceeds the feasibility guard and --force was not given.
class InfeasibleError : public std::runtime_error {
  public:
    InfeasibleError(std::string const & what, double estimated_work)
        : std::runtime_error(what), estimated_work_(estimated_work)
    {
    }

    double estimated_work() const { return estimated_work_; }

  private:
    double estimated_work_;
};

// Persisted state is corrupt (conflicting cache records).
class IntegrityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A dual-path check disagreed (e.g. modularity prediction vs. count).
class VerificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace k3

#endif // K3ARITH_ERROR_HPP
