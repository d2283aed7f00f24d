#pragma once

#include <stdexcept>
#include <string>

namespace gridsight {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct OutOfBounds : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct EmptyModel : Error { using Error::Error; };
struct EmptyCluster : Error { using Error::Error; };
struct UnknownClass : Error { using Error::Error; };
struct IncompatibleModel : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace gridsight
