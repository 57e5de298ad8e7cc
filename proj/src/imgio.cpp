#include "chaofuzz/imgio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

#include "chaofuzz/error.hpp"

namespace chaofuzz::imgio {

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
constexpr std::array<std::uint8_t, 4> kContainerMagic = {'A', 'C', 'F', 'Z'};

class PgmHeaderReader {
public:
    explicit PgmHeaderReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t number() {
        skip_space_and_comments();
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
            if (value > (std::size_t{1} << 32)) throw Error(ErrorCode::CorruptHeader, "dimension overflow");
            value = value * 10 + (data_[pos_++] - '0');
            ++digits;
        }
        if (digits == 0) throw Error(ErrorCode::CorruptHeader, "expected a number in PGM header");
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
            throw Error(ErrorCode::CorruptHeader, "missing separator before PGM raster");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (std::isspace(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 2;
};

void put_u32(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> data, std::size_t at) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | data[at + i];
    return v;
}

}  // namespace

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoError, "read failed on " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed on " + path.string());
}

GrayImage decode_pgm(std::span<const std::uint8_t> data) {
    if (data.size() < 2 || data[0] != 'P') throw Error(ErrorCode::UnsupportedFormat, "not a PNM file");
    if (data[1] != '5') {
        throw Error(ErrorCode::UnsupportedFormat,
                    std::string("PNM variant P") + static_cast<char>(data[1]) + " is not supported");
    }
    PgmHeaderReader header(data);
    const std::size_t width = header.number();
    const std::size_t height = header.number();
    const std::size_t maxval = header.number();
    if (maxval != 255) throw Error(ErrorCode::MaxvalNot255, "maxval " + std::to_string(maxval));
    if (width < 2 || height < 2) throw Error(ErrorCode::CorruptHeader, "image smaller than 2x2");
    const std::size_t offset = header.raster_offset();
    if (data.size() - offset < width * height) {
        throw Error(ErrorCode::CorruptHeader, "raster is shorter than width*height");
    }
    Bytes pixels(data.begin() + static_cast<std::ptrdiff_t>(offset),
                 data.begin() + static_cast<std::ptrdiff_t>(offset + width * height));
    return GrayImage(width, height, std::move(pixels));
}

GrayImage decode_png(std::span<const std::uint8_t> data) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
        throw Error(ErrorCode::CorruptHeader, std::string("PNG: ") + image.message);
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    const bool wide = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
    if (color || alpha || wide) {
        png_image_free(&image);
        throw Error(ErrorCode::UnsupportedFormat, "only 8-bit grayscale PNG is accepted");
    }
    image.format = PNG_FORMAT_GRAY;
    if (image.width < 2 || image.height < 2) {
        png_image_free(&image);
        throw Error(ErrorCode::CorruptHeader, "image smaller than 2x2");
    }
    Bytes pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::CorruptHeader, "PNG: " + msg);
    }
    return GrayImage(image.width, image.height, std::move(pixels));
}

GrayImage load_gray(const std::filesystem::path& path) {
    const Bytes data = read_file(path);
    if (data.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), data.begin())) {
        return decode_png(data);
    }
    return decode_pgm(data);
}

Bytes encode_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), img.bytes().begin(), img.bytes().end());
    return out;
}

void store_gray(const GrayImage& img, const std::filesystem::path& path) {
    write_file(path, encode_pgm(img));
}

Bytes encode_container(const CipherContainer& c) {
    if (c.payload.size() % 64 != 0 ||
        c.payload.size() < static_cast<std::uint64_t>(c.width) * c.height ||
        c.payload.size() > 0xFFFFFFFFu) {
        throw Error(ErrorCode::LengthMismatch, "payload violates container invariants");
    }
    Bytes out(kContainerMagic.begin(), kContainerMagic.end());
    out.push_back(kContainerVersion);
    put_u32(out, c.width);
    put_u32(out, c.height);
    put_u32(out, static_cast<std::uint32_t>(c.payload.size()));
    out.insert(out.end(), c.payload.begin(), c.payload.end());
    return out;
}

CipherContainer decode_container(std::span<const std::uint8_t> data) {
    if (data.size() < kContainerMagic.size() ||
        !std::equal(kContainerMagic.begin(), kContainerMagic.end(), data.begin())) {
        throw Error(ErrorCode::BadMagic, "not an ACFZ container");
    }
    if (data.size() < kContainerHeaderBytes) throw Error(ErrorCode::LengthMismatch, "truncated header");
    if (data[4] != kContainerVersion) {
        throw Error(ErrorCode::UnknownVersion, "container version " + std::to_string(data[4]));
    }
    CipherContainer c;
    c.width = get_u32(data, 5);
    c.height = get_u32(data, 9);
    const std::uint32_t padded = get_u32(data, 13);
    if (data.size() - kContainerHeaderBytes != padded) {
        throw Error(ErrorCode::LengthMismatch, "declared payload " + std::to_string(padded) +
                                                   " bytes, file holds " +
                                                   std::to_string(data.size() - kContainerHeaderBytes));
    }
    if (padded % 64 != 0 || padded < static_cast<std::uint64_t>(c.width) * c.height ||
        c.width < 2 || c.height < 2) {
        throw Error(ErrorCode::LengthMismatch, "payload length inconsistent with dimensions");
    }
    c.payload.assign(data.begin() + kContainerHeaderBytes, data.end());
    return c;
}

void store_cipher(const CipherContainer& container, const std::filesystem::path& path) {
    write_file(path, encode_container(container));
}

CipherContainer load_cipher(const std::filesystem::path& path) {
    return decode_container(read_file(path));
}

}  // namespace chaofuzz::imgio
