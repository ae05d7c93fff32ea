#ifndef FRACVEL_FORMAT_HPP
#define FRACVEL_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace fracvel {

/// Shortest decimal that round-trips to the same double. All emitted text
/// (CSV cells, expression dumps) goes through here so byte-identical output
/// is a matter of identical inputs, not locale or stream state.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace fracvel

#endif  // FRACVEL_FORMAT_HPP
