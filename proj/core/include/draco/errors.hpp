#pragma once

#include <stdexcept>
#include <string>

namespace draco {

struct InvalidParams : std::runtime_error {
    explicit InvalidParams(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct SingularConstruction : std::runtime_error {
    explicit SingularConstruction(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSubsystem : std::runtime_error {
    explicit SingularSubsystem(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySequence : std::runtime_error {
    explicit EmptySequence(const std::string& what) : std::runtime_error(what) {}
};

struct AssignmentMismatch : std::runtime_error {
    explicit AssignmentMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct TooManyAdversaries : std::runtime_error {
    explicit TooManyAdversaries(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace draco
