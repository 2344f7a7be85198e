#pragma once

#include <stdexcept>
#include <string>

namespace heightlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroElement : Error {
    ZeroElement() : Error("operation undefined for the zero element") {}
};

struct AllZero : Error {
    AllZero() : Error("projective point needs a nonzero coordinate") {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

struct PointOnDivisor : Error {
    PointOnDivisor() : Error("point lies on the divisor") {}
};

struct UnsupportedDegree : Error {
    explicit UnsupportedDegree(const std::string& what) : Error(what) {}
};

struct ZeroHeight : Error {
    ZeroHeight() : Error("point has height zero") {}
};

struct TooFewForms : Error {
    explicit TooFewForms(const std::string& what) : Error(what) {}
};

struct ConstructionFailed : Error {
    explicit ConstructionFailed(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

struct FactorizationExhausted : Error {
    explicit FactorizationExhausted(const std::string& what) : Error(what) {}
};

} // namespace heightlab
