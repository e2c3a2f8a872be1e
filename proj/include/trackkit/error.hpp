#pragma once

#include <stdexcept>
#include <string>

namespace trackkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct EmptyMask : Error { using Error::Error; };
struct DegeneratePose : Error { using Error::Error; };
struct SingularError : Error { using Error::Error; };
struct NotInitialized : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct EmptyNeighborhood : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct EmptyFeature : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

}  // namespace trackkit
