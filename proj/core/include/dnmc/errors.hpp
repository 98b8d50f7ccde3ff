#ifndef DNMC_ERRORS_HPP
#define DNMC_ERRORS_HPP

#include <stdexcept>

namespace dnmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct NonFiniteAngle : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct BlockOutOfRange : Error {
    using Error::Error;
};

struct AxisOutOfRange : Error {
    using Error::Error;
};

struct AxisMismatch : Error {
    using Error::Error;
};

struct BasisMismatch : Error {
    using Error::Error;
};

struct PowerOverflow : Error {
    using Error::Error;
};

struct NonCommutingAxes : Error {
    using Error::Error;
};

struct WindowOutOfRange : Error {
    using Error::Error;
};

struct SignalTooShort : Error {
    using Error::Error;
};

struct EmptyRange : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

} // namespace dnmc

#endif // DNMC_ERRORS_HPP
