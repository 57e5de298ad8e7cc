#include "chaofuzz/pipeline.hpp"

#include "chaofuzz/error.hpp"
#include "chaofuzz/phase1.hpp"

namespace chaofuzz {

void RunConfig::validate() const {
    if (!(map.mu > 0.0 && map.mu < 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "mu must lie in (0,2)");
    }
    phase2.validate();
}

namespace {
GrayImage unpad(std::span<const std::uint8_t> data, std::size_t width, std::size_t height) {
    return GrayImage(width, height, Bytes(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(width * height)));
}
}  // namespace

GrayImage EncryptResult::cipher_image() const {
    return unpad(container.payload, container.width, container.height);
}

GrayImage EncryptResult::companion_image() const {
    return unpad(outcome.companion_cipher, container.width, container.height);
}

GrayImage companion_of(const GrayImage& img) {
    GrayImage twin = img;
    twin.at(0, 0) ^= 0x01;
    return twin;
}

Digest512 image_hash(const GrayImage& img) { return sha512(img.pixels()); }

Bytes pad_to_block(std::span<const std::uint8_t> data, std::size_t block) {
    Bytes out(data.begin(), data.end());
    out.resize((data.size() + block - 1) / block * block, 0);
    return out;
}

EncryptResult encrypt(const GrayImage& img, const MasterKey& master, const RunConfig& config) {
    config.validate();
    const DerivedSeeds seeds = derive_seeds(master);
    const GrayImage twin = companion_of(img);

    GrayImage pre, pre_twin;
    Digest512 hash{}, twin_hash{};
#pragma omp parallel sections
    {
#pragma omp section
        {
            hash = image_hash(img);
            pre = phase1::phase1_encrypt(img, seeds, config.map);
        }
#pragma omp section
        {
            twin_hash = image_hash(twin);
            pre_twin = phase1::phase1_encrypt(twin, seeds, config.map);
        }
    }

    const Bytes padded = pad_to_block(pre.pixels(), phase2::kHashBlockBytes);
    const Bytes padded_twin = pad_to_block(pre_twin.pixels(), phase2::kHashBlockBytes);

    EncryptResult result;
    result.outcome =
        phase2::run_phase2(padded, padded_twin, seeds, hash, twin_hash, config.phase2, config.map);
    result.container.width = static_cast<std::uint32_t>(img.width());
    result.container.height = static_cast<std::uint32_t>(img.height());
    result.container.payload = result.outcome.cipher;
    result.key = {master, hash, result.outcome.aes_flag, result.outcome.xor_count};
    return result;
}

GrayImage decrypt(const imgio::CipherContainer& container, const DecryptionKey& key,
                  const chaos::MapParams& params) {
    const std::size_t pixels = std::size_t{container.width} * container.height;
    if (container.payload.size() % phase2::kHashBlockBytes != 0 || container.payload.size() < pixels) {
        throw Error(ErrorCode::LengthMismatch, "container payload does not cover the image");
    }
    const DerivedSeeds seeds = derive_seeds(key.master);

    Bytes data = container.payload;
    for (unsigned round = 0; round < key.xor_count; ++round) {
        data = phase2::xor_by_hash_inverse(data, key.image_hash);
    }
    if (key.aes_flag) data = phase2::aes_chaos_decrypt(data, seeds.phase2_key, seeds.x_aes, params);

    return phase1::phase1_decrypt(unpad(data, container.width, container.height), seeds, params);
}

}  // namespace chaofuzz
