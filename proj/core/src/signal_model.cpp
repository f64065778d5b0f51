#include "mnnr/signal_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace mnnr {

namespace {

std::string upper(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

}  // namespace

void validate(const PathLossModel& pl) {
    if (!(pl.beta > 2.0) || !std::isfinite(pl.beta))
        throw std::domain_error("path loss exponent must be > 2");
    if (!(pl.power > 0.0) || !std::isfinite(pl.power))
        throw std::domain_error("transmit power must be > 0");
    if (!(pl.exclusion_radius >= 0.0) || !std::isfinite(pl.exclusion_radius))
        throw std::domain_error("exclusion radius must be finite and >= 0");
}

std::string to_string(const CooperationScheme& scheme) {
    switch (scheme.kind) {
        case CooperationScheme::Kind::nc: return "NC";
        case CooperationScheme::Kind::of1: return "OF1";
        case CooperationScheme::Kind::ph: return "PH";
        case CooperationScheme::Kind::of2: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "OF2(%g)", scheme.q);
            return buf;
        }
    }
    return "?";
}

CooperationScheme parse_scheme(std::string_view text) {
    const std::string s = upper(text);
    if (s == "NC") return CooperationScheme::nc();
    if (s == "OF1") return CooperationScheme::of1();
    if (s == "PH") return CooperationScheme::ph();
    if (s.rfind("OF2", 0) == 0) {
        std::string rest = s.substr(3);
        if (rest.empty()) return CooperationScheme::of2(0.5);
        if (rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
        else if (rest.front() == ':') rest = rest.substr(1);
        else throw std::invalid_argument("malformed OF2 scheme: " + std::string(text));
        double q = 0.0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), q);
        if (ec != std::errc{} || ptr != rest.data() + rest.size() || !(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("OF2 probability must be a number in [0, 1]: " +
                                        std::string(text));
        return CooperationScheme::of2(q);
    }
    throw std::invalid_argument("unknown cooperation scheme '" + std::string(text) +
                                "' (expected NC, OF1, OF2(q) or PH)");
}

std::string to_string(FadingMode mode) { return mode == FadingMode::rayleigh ? "rayleigh" : "none"; }

FadingMode parse_fading(std::string_view text) {
    const std::string s = upper(text);
    if (s == "RAYLEIGH" || s == "ON" || s == "TRUE" || s == "1") return FadingMode::rayleigh;
    if (s == "NONE" || s == "OFF" || s == "FALSE" || s == "0") return FadingMode::none;
    throw std::invalid_argument("unknown fading mode '" + std::string(text) + "'");
}

}  // namespace mnnr
