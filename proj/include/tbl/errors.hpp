#pragma once

#include <stdexcept>
#include <string>

namespace tbl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class ExcludedParameter : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

// Raised when a theorem's hypotheses do not hold for the requested case.
// clause() is the hypothesis as stated, e.g. "chi odd primitive".
class HypothesisError : public Error {
public:
    HypothesisError(std::string theorem, std::string clause)
        : Error(theorem + ": hypothesis violated: " + clause),
          theorem_(std::move(theorem)), clause_(std::move(clause)) {}
    const std::string& theorem() const { return theorem_; }
    const std::string& clause() const { return clause_; }

private:
    std::string theorem_;
    std::string clause_;
};

}  // namespace tbl
