#include <tlab/types.hpp>

#include <charconv>

namespace tlab {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError("not a rational number: '" + whole + "'");
    return value;
}

}  // namespace

std::string format_real(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text, text));
    const auto num = parse_int(std::string_view(text).substr(0, slash), text);
    const auto den = parse_int(std::string_view(text).substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

}  // namespace tlab
