#pragma once

#include <stdexcept>
#include <string>

namespace knotinv {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPalindromic : Error {
    explicit NotPalindromic(const std::string& msg = "polynomial is not palindromic") : Error(msg) {}
};

struct NotOnCircle : Error {
    explicit NotOnCircle(const std::string& msg = "point is not on the unit circle") : Error(msg) {}
};

struct RootAtPlusMinusOne : Error {
    explicit RootAtPlusMinusOne(const std::string& msg = "polynomial vanishes at t = 1 or t = -1") : Error(msg) {}
};

struct EmptyArc : Error {
    explicit EmptyArc(const std::string& msg = "arc between the given endpoints is empty") : Error(msg) {}
};

struct NotSeifert : Error {
    explicit NotSeifert(const std::string& msg = "matrix is not a Seifert matrix") : Error(msg) {}
};

struct NotAKnot : Error {
    explicit NotAKnot(const std::string& msg = "input does not define a knot") : Error(msg) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& msg = "Seifert matrix is not in standard symplectic form") : Error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "matrix has zero determinant") : Error(msg) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& msg = "matrix determinant is not a unit") : Error(msg) {}
};

struct NotUnitBlock : Error {
    explicit NotUnitBlock(const std::string& msg = "named block is not a unit-determinant summand") : Error(msg) {}
};

struct NotARoot : Error {
    explicit NotARoot(const std::string& msg = "point is not a root of the determinant") : Error(msg) {}
};

struct NotCoprime : Error {
    explicit NotCoprime(const std::string& msg = "polynomials are not coprime") : Error(msg) {}
};

/// Raised when the pointwise sign hypothesis of the decomposition machinery
/// fails; carries a printable witness location on the circle.
struct SignHypothesisFails : Error {
    std::string witness;
    explicit SignHypothesisFails(const std::string& w)
        : Error("sign hypothesis fails near s = " + w), witness(w) {}
};

struct NegativeSomewhere : Error {
    explicit NegativeSomewhere(const std::string& msg = "polynomial is negative somewhere on the circle") : Error(msg) {}
};

struct DegenerateAtUnitPoints : Error {
    explicit DegenerateAtUnitPoints(const std::string& msg = "determinant vanishes at t = 1 or t = -1") : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

}  // namespace knotinv
