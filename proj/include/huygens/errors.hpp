#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace huygens {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_argument_error : public error {
public:
    using error::error;
};

/// Two sampled quantities were combined over different grids.
class incompatible_grid_error : public error {
public:
    using error::error;
};

class invalid_geometry_error : public error {
public:
    using error::error;
};

class analysis_error : public error {
public:
    using error::error;
};

class undefined_ratio_error : public error {
public:
    using error::error;
};

/// Object placed exactly in the focal plane; the image is at infinity.
class no_finite_image_error : public error {
public:
    using error::error;
};

/// Object inside the focal length; only a virtual image exists.
class virtual_image_error : public error {
public:
    using error::error;
};

/// A scenario cannot be built from an otherwise valid configuration
/// (e.g. too few interference minima to place the requested wires).
class scenario_error : public error {
public:
    using error::error;
};

/// Malformed or invalid configuration document. `key()` holds the dotted
/// path of the offending entry.
class config_error : public error {
public:
    config_error(std::string key, const std::string &what)
        : error{key.empty() ? what : key + ": " + what}, key_{std::move(key)} {}

    [[nodiscard]] const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace huygens
