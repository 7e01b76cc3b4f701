#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace surf {

// Raised when a serialized structure is truncated, mistagged or inconsistent.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Tag = std::array<char, 4>;

constexpr Tag make_tag(const char (&s)[5]) { return {s[0], s[1], s[2], s[3]}; }

constexpr std::uint8_t kFormatVersion = 0x01;

// All multi-byte integers are little-endian regardless of host order.
void write_u8(std::ostream& os, std::uint8_t v);
void write_u32(std::ostream& os, std::uint32_t v);
void write_u64(std::ostream& os, std::uint64_t v);
void write_string(std::ostream& os, std::string_view s);  // u32 length + bytes
void write_header(std::ostream& os, Tag tag);             // tag + version byte

std::uint8_t read_u8(std::istream& is);
std::uint32_t read_u32(std::istream& is);
std::uint64_t read_u64(std::istream& is);
std::string read_string(std::istream& is);
void read_header(std::istream& is, Tag expected);

std::string tag_string(Tag tag);

// 64-bit FNV-1a.
class Fnv1a {
public:
    void update(const void* data, std::size_t len);
    void update_u32(std::uint32_t v);
    std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace surf
