#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mnnr {

/// Raised when a numerical procedure cannot deliver the requested accuracy.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power-law path loss h = nu * d^-beta with an exclusion ball of radius R
/// around the observer.
struct PathLossModel {
    double beta = 4.0;
    double power = 1.0;
    double exclusion_radius = 1.0;
};

/// Throws std::domain_error unless beta > 2, power > 0 and R >= 0.
void validate(const PathLossModel& pl);

/// Rayleigh: nu ~ Exp(mean P) with uniform phase. None: nu == P.
enum class FadingMode { rayleigh, none };

/// Signal of a cooperating pair at the observer.
struct CooperationScheme {
    enum class Kind { nc, of1, of2, ph };
    Kind kind = Kind::nc;
    /// Probability that the first member transmits under OF2.
    double q = 0.5;

    static CooperationScheme nc() { return {Kind::nc, 0.5}; }
    static CooperationScheme of1() { return {Kind::of1, 0.5}; }
    static CooperationScheme of2(double q) { return {Kind::of2, q}; }
    static CooperationScheme ph() { return {Kind::ph, 0.5}; }

    friend bool operator==(const CooperationScheme&, const CooperationScheme&) = default;
};

/// "NC", "OF1", "OF2(0.5)", "PH".
std::string to_string(const CooperationScheme& scheme);

/// Accepts NC, OF1, PH, OF2 and OF2(q) / OF2:q, case-insensitive.
CooperationScheme parse_scheme(std::string_view text);

std::string to_string(FadingMode mode);
FadingMode parse_fading(std::string_view text);

}  // namespace mnnr
