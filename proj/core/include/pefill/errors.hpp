#pragma once

#include <stdexcept>
#include <string>

namespace pefill {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidProfile : public Error {
public:
    using Error::Error;
};

// Division by zero at a declared cap point without a series fallback.
class CapSingularity : public Error {
public:
    using Error::Error;
};

// The Einstein shortcut for the Weyl assembly was requested on non-Einstein input.
class EinsteinResidualTooLarge : public Error {
public:
    using Error::Error;
};

class StepFailure : public Error {
public:
    using Error::Error;
};

class SeedOrderTooLow : public Error {
public:
    using Error::Error;
};

class NonPositiveRadius : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// The limit fixing the chart normalization constant failed to stabilize.
class NormalizationDivergence : public Error {
public:
    using Error::Error;
};

class IllConditionedFit : public Error {
public:
    using Error::Error;
};

class UnstableExtraction : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class DeckTruncationTooSmall : public Error {
public:
    using Error::Error;
};

} // namespace pefill
