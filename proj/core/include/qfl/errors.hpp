#pragma once

#include <stdexcept>
#include <string>

namespace qfl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller misuse: mismatched domains, out-of-carrier values, bad indices.
class UsageError : public Error {
public:
    using Error::Error;
};

// Malformed input tables (missing entries, wrong shapes).
class StructuralError : public Error {
public:
    using Error::Error;
};

// Invalid ordinal-sum data.
class ConstructionError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace qfl
