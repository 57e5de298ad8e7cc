#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "chaofuzz/image.hpp"

namespace chaofuzz::imgio {

/// Ciphertext file: "ACFZ", version, then width, height and payload length
/// as big-endian u32, then the payload (a multiple of 64 bytes).
struct CipherContainer {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Bytes payload;
    friend bool operator==(const CipherContainer&, const CipherContainer&) = default;
};

inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::size_t kContainerHeaderBytes = 4 + 1 + 4 + 4 + 4;

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

/// Binary PGM (P5, maxval 255) or 8-bit grayscale PNG, detected by signature.
GrayImage load_gray(const std::filesystem::path& path);
GrayImage decode_pgm(std::span<const std::uint8_t> data);
GrayImage decode_png(std::span<const std::uint8_t> data);

/// Writes "P5\n<w> <h>\n255\n" followed by the pixels.
void store_gray(const GrayImage& img, const std::filesystem::path& path);
Bytes encode_pgm(const GrayImage& img);

Bytes encode_container(const CipherContainer& container);
CipherContainer decode_container(std::span<const std::uint8_t> data);
void store_cipher(const CipherContainer& container, const std::filesystem::path& path);
CipherContainer load_cipher(const std::filesystem::path& path);

}  // namespace chaofuzz::imgio
