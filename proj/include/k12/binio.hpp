#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "k12/errors.hpp"

namespace k12::binio {

// Little-endian binary writer/reader over a file. All multi-byte values go
// through explicit byte shifts so files are identical on any host.

class Writer {
public:
    explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open for writing: " + path);
    }

    void u8(uint8_t v) { out_.put(static_cast<char>(v)); }
    void u16(uint16_t v) { put_le(v, 2); }
    void u32(uint32_t v) { put_le(v, 4); }
    void u64(uint64_t v) { put_le(v, 8); }
    void i32(int32_t v) { put_le(static_cast<uint32_t>(v), 4); }

    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_le(bits, 4);
    }

    void bytes(const void* data, size_t n) { out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n)); }

    void str(std::string_view s) { bytes(s.data(), s.size()); }

    void close() {
        out_.close();
        if (!out_) throw IoError("write failed: " + path_);
    }

private:
    void put_le(uint64_t v, int n) {
        char buf[8];
        for (int i = 0; i < n; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        out_.write(buf, n);
    }

    std::string path_;
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open for reading: " + path);
    }

    uint8_t u8() { return static_cast<uint8_t>(get_le(1)); }
    uint16_t u16() { return static_cast<uint16_t>(get_le(2)); }
    uint32_t u32() { return static_cast<uint32_t>(get_le(4)); }
    uint64_t u64() { return get_le(8); }
    int32_t i32() { return static_cast<int32_t>(get_le(4)); }

    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    void bytes(void* data, size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in_.gcount()) != n)
            throw CorruptError("truncated file: " + path_);
    }

    std::string str(size_t n) {
        std::string s(n, '\0');
        bytes(s.data(), n);
        return s;
    }

    bool at_eof() {
        in_.peek();
        return in_.eof();
    }

    const std::string& path() const { return path_; }

private:
    uint64_t get_le(int n) {
        char buf[8];
        in_.read(buf, n);
        if (in_.gcount() != n) throw CorruptError("truncated file: " + path_);
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
        return v;
    }

    std::string path_;
    std::ifstream in_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
std::vector<std::string> read_lines(const std::string& path);

} // namespace k12::binio
