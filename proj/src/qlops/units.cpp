#include "qlops/units.hpp"
#include "qlops/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace qlops::units {

namespace {

bool parse_full_double(const std::string& text, double& out)
{
    if (text.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end != nullptr && *end == '\0';
}

// Shift the decimal exponent of a numeric literal by `shift` without going
// through a multiplication, e.g. ("0.86", -6) -> "0.86e-6".  This keeps the
// conversion a single correctly-rounded strtod.
bool shift_exponent(std::string_view literal, int shift, double& out)
{
    std::string mantissa;
    long exponent = 0;
    const auto epos = literal.find_first_of("eE");
    if (epos == std::string_view::npos) {
        mantissa.assign(literal);
    } else {
        mantissa.assign(literal.substr(0, epos));
        const std::string etail(literal.substr(epos + 1));
        char* end = nullptr;
        exponent = std::strtol(etail.c_str(), &end, 10);
        if (etail.empty() || end == nullptr || *end != '\0')
            return false;
    }
    if (mantissa.empty())
        return false;
    const std::string rebuilt = mantissa + "e" + std::to_string(exponent + shift);
    return parse_full_double(rebuilt, out);
}

// Returns the exponent shift for a recognized suffix and trims it off,
// or 1 (sentinel) when there is no suffix.
int split_suffix(std::string_view& token)
{
    if (token.size() > 2 && token.ends_with("us")) {
        token.remove_suffix(2);
        return -6;
    }
    if (token.size() > 2 && token.ends_with("ms")) {
        token.remove_suffix(2);
        return -3;
    }
    if (token.size() > 1 && token.ends_with("s")) {
        token.remove_suffix(1);
        return 0;
    }
    return 1;
}

} // namespace

double parse_duration(std::string_view token)
{
    std::string_view body = token;
    const int shift = split_suffix(body);
    double value = 0.0;
    bool ok = false;
    if (shift == 1) {
        ok = parse_full_double(std::string(token), value);
    } else if (shift == 0) {
        ok = parse_full_double(std::string(body), value);
    } else {
        ok = shift_exponent(body, shift, value);
    }
    if (!ok)
        throw ParseError("invalid duration literal: '" + std::string(token) + "'");
    return value;
}

bool looks_like_duration(std::string_view token)
{
    try {
        parse_duration(token);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

std::string format_sig(double value, int sig)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, value);
    return buf;
}

std::string format_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

} // namespace qlops::units
