#include "chaofuzz/image.hpp"

#include <string>

#include "chaofuzz/error.hpp"

namespace chaofuzz {

namespace {
void check_dims(std::size_t width, std::size_t height) {
    if (width < 2 || height < 2) {
        throw Error(ErrorCode::InvalidArgument, "image must be at least 2x2, got " +
                                                    std::to_string(width) + "x" +
                                                    std::to_string(height));
    }
}
}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : width_(width), height_(height), pixels_(width * height, 0) {
    check_dims(width, height);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, Bytes pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != width * height) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pixel buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                        std::to_string(width * height));
    }
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::WrongLength: return "WrongLength";
        case ErrorCode::UnknownVersion: return "UnknownVersion";
        case ErrorCode::NonzeroPadding: return "NonzeroPadding";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::BlockAlignment: return "BlockAlignment";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::CorruptHeader: return "CorruptHeader";
        case ErrorCode::MaxvalNot255: return "MaxvalNot255";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace chaofuzz
