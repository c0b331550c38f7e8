#pragma once

#include <stdexcept>
#include <string>

namespace asep {

// Base for every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A factor denominator p + q*xi_a*xi_b - xi_a is (numerically) zero, or a contour
// radius would enclose such a zero.
class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

class SizeLimitExceeded : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class ZeroArgument : public Error {
public:
    using Error::Error;
};

// label_word was handed a word that is not reduced for its product.
class NotReduced : public Error {
public:
    using Error::Error;
};

// More than one operator path reaches the requested species order.
class NotFactorized : public Error {
public:
    using Error::Error;
};

}  // namespace asep
