#pragma once

#include <stdexcept>
#include <string>

namespace hillrand {

/// Thrown by approximations that lose validity near af = n^2, where the
/// forcing decouples (sin(sqrt(af)*pi) = 0) and the stability band survives.
class resonant_af_error : public std::domain_error {
public:
    resonant_af_error(double af, int nearest_n, double band_width)
        : std::domain_error("af = " + std::to_string(af) +
                            " is inside the stability band around n^2 with n = " +
                            std::to_string(nearest_n) +
                            " (band width " + std::to_string(band_width) + ")"),
          af(af), nearest_n(nearest_n), band_width(band_width) {}

    double af;
    int nearest_n;
    double band_width;
};

/// Thrown when a matrix-element ratio is evaluated at an angle where its
/// denominator vanishes.
class singular_angle_error : public std::domain_error {
public:
    explicit singular_angle_error(const std::string& what)
        : std::domain_error(what) {}
};

} // namespace hillrand
