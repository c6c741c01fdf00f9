#pragma once
#include <stdexcept>
#include <string>

namespace lrp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct IntegrabilityError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct LimitError : Error { using Error::Error; };
struct MonotonicityError : Error { using Error::Error; };
struct OrderBoundError : Error { using Error::Error; };
struct VariationError : Error { using Error::Error; };
struct MultiplierError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct StructureError : Error { using Error::Error; };
struct EstimationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace lrp
