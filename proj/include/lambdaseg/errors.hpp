/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every lambdaseg module.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace lambdaseg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed PGM header or raster.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Raster holds fewer samples than the header declares.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Valid input that this implementation deliberately does not handle.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class BoundsError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

class EmptySelectionError : public Error {
public:
    using Error::Error;
};

class InvalidPathError : public Error {
public:
    using Error::Error;
};

/// Histogram with fewer than two populated bins; no threshold separates it.
class DegenerateHistogramError : public Error {
public:
    using Error::Error;
};

}  // namespace lambdaseg
