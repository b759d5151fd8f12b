#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Generator set spans a line, so no pointed cone exists.
class NotStronglyConvexError : public Error {
public:
    explicit NotStronglyConvexError(const std::string& what) : Error(what) {}
};

// Two cones of a candidate fan meet outside a common face.
class OverlappingConesError : public Error {
public:
    explicit OverlappingConesError(const std::string& what) : Error(what) {}
};

class ConeNotInFanError : public Error {
public:
    explicit ConeNotInFanError(const std::string& what) : Error(what) {}
};

class SourceNotSmoothCompleteError : public Error {
public:
    explicit SourceNotSmoothCompleteError(const std::string& what) : Error(what) {}
};

// beta and the fan data do not fit together, or a morphism violates
// beta . phi_M = phi_L . beta'.
class IncompatibleBetaError : public Error {
public:
    explicit IncompatibleBetaError(const std::string& what) : Error(what) {}
};

class NotConvertibleError : public Error {
public:
    explicit NotConvertibleError(const std::string& what) : Error(what) {}
};

class PrerequisiteFailedError : public Error {
public:
    explicit PrerequisiteFailedError(const std::string& what) : Error(what) {}
};

// A pushforward or convolution met unbounded fiber directions.
class NotFiberFiniteError : public Error {
public:
    explicit NotFiberFiniteError(const std::string& what) : Error(what) {}
};

// Two decision procedures that must agree returned different verdicts.
class InternalInconsistencyError : public Error {
public:
    explicit InternalInconsistencyError(const std::string& what) : Error(what) {}
};

// Arrangement enumeration exceeded the configured cell budget
// (CCC_MAX_CELLS environment variable, default 1000000).
class TooManyCellsError : public Error {
public:
    explicit TooManyCellsError(const std::string& what) : Error(what) {}
};

// Input is not syntactically valid JSON.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Input is valid JSON but does not match the document schema
// (missing/unknown fields, wrong types, malformed integers).
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

// Input matches the schema but violates a semantic invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

} // namespace ccc
