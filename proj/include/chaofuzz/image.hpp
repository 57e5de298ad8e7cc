#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chaofuzz {

using Bytes = std::vector<std::uint8_t>;

/// M x N grid of 8-bit intensities stored row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height);
    GrayImage(std::size_t width, std::size_t height, Bytes pixels);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::uint8_t& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }
    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }
    const Bytes& bytes() const noexcept { return pixels_; }

    bool same_shape(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    Bytes pixels_;
};

}  // namespace chaofuzz
