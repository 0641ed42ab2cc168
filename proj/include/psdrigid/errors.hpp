#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace psdrigid {

// An input violates the hypotheses an operation needs; the message lists what failed.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(std::vector<std::string> violations);
    PreconditionError(const std::string& single);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Malformed serialized input. The message names the offending JSON path.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine (LP, SVD) could not reach a trustworthy answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace psdrigid
