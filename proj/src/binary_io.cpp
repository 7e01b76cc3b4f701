#include "surf/binary_io.hpp"

#include <istream>
#include <ostream>

namespace surf {

namespace {

void put_bytes(std::ostream& os, const unsigned char* p, std::size_t n) {
    os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!os) throw std::runtime_error("write failed");
}

void get_bytes(std::istream& is, unsigned char* p, std::size_t n) {
    is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is.gcount()) != n) throw format_error("unexpected end of data");
}

}  // namespace

void write_u8(std::ostream& os, std::uint8_t v) { put_bytes(os, &v, 1); }

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(os, b, 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(os, b, 8);
}

void write_string(std::ostream& os, std::string_view s) {
    write_u32(os, static_cast<std::uint32_t>(s.size()));
    put_bytes(os, reinterpret_cast<const unsigned char*>(s.data()), s.size());
}

void write_header(std::ostream& os, Tag tag) {
    put_bytes(os, reinterpret_cast<const unsigned char*>(tag.data()), tag.size());
    write_u8(os, kFormatVersion);
}

std::uint8_t read_u8(std::istream& is) {
    unsigned char b;
    get_bytes(is, &b, 1);
    return b;
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    get_bytes(is, b, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t read_u64(std::istream& is) {
    unsigned char b[8];
    get_bytes(is, b, 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::string read_string(std::istream& is) {
    const auto len = read_u32(is);
    std::string s(len, '\0');
    get_bytes(is, reinterpret_cast<unsigned char*>(s.data()), len);
    return s;
}

void read_header(std::istream& is, Tag expected) {
    Tag got{};
    get_bytes(is, reinterpret_cast<unsigned char*>(got.data()), got.size());
    if (got != expected) {
        throw format_error("bad tag: expected " + tag_string(expected) + ", got " + tag_string(got));
    }
    const auto version = read_u8(is);
    if (version != kFormatVersion) {
        throw format_error("unsupported version " + std::to_string(version) + " for " + tag_string(expected));
    }
}

std::string tag_string(Tag tag) { return std::string(tag.begin(), tag.end()); }

void Fnv1a::update(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        state_ ^= p[i];
        state_ *= 0x100000001b3ULL;
    }
}

void Fnv1a::update_u32(std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    update(b, 4);
}

}  // namespace surf
