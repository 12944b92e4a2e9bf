// Copyright 2026 The cbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBELL_ERRORS_HPP
#define CBELL_ERRORS_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace cbell {

/// Number formatting for error messages (12 significant digits).
inline std::string format_number(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A precondition was violated: index out of range, shape mismatch, bad spec.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// An input that should be Hermitian produced a non-negligible imaginary part.
class NonHermitianError : public Error {
   public:
    using Error::Error;
};

/// Collapse onto an outcome whose probability is below the probability floor.
class NullOutcomeError : public Error {
   public:
    NullOutcomeError(const std::string& what, double probability)
        : Error(what), probability_(probability) {}
    double probability() const noexcept { return probability_; }

   private:
    double probability_;
};

/// Quadrature or Monte Carlo estimate did not reach its tolerance.
class ConvergenceError : public Error {
   public:
    ConvergenceError(const std::string& what, double estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}
    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

   private:
    double estimate_;
    double error_;
};

}  // namespace cbell

#endif  // CBELL_ERRORS_HPP
