#include "chaofuzz/phase2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chaofuzz/error.hpp"
#include "chaofuzz/metrics.hpp"

namespace chaofuzz::phase2 {

namespace {

void require_multiple(std::span<const std::uint8_t> data, std::size_t block, const char* what) {
    if (data.empty() || data.size() % block != 0) {
        throw Error(ErrorCode::BlockAlignment, std::string(what) + " needs a non-empty multiple of " +
                                                   std::to_string(block) + " bytes, got " +
                                                   std::to_string(data.size()));
    }
}

AesBlock load_block(std::span<const std::uint8_t> data, std::size_t index) {
    AesBlock b{};
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(index * kAesBlockBytes), kAesBlockBytes,
                b.begin());
    return b;
}

void store_block(Bytes& out, std::size_t index, const AesBlock& b) {
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(index * kAesBlockBytes));
}

chaos::TentMapState perturb(chaos::TentMapState state, const AesBlock& previous_cipher) {
    const unsigned sum = std::accumulate(previous_cipher.begin(), previous_cipher.end(), 0u);
    const double shifted = state.x + static_cast<double>(sum) / 4096.0;
    state.x = shifted - std::floor(shifted);
    return state;
}

// Shared walk for both directions. `cipher_of` yields the ciphertext of the
// block just processed, which drives both the key chain and the whitening.
template <typename Transform>
Bytes aes_chaos_walk(std::span<const std::uint8_t> data, const AesKey128& key, double x_aes,
                     const chaos::MapParams& params, Transform&& transform) {
    require_multiple(data, kAesBlockBytes, "AES-Chaos");
    const std::size_t blocks = data.size() / kAesBlockBytes;
    auto [order, state] = chaos::sort_index_permutation(chaos::seed(x_aes, params), blocks);

    Bytes out(data.size());
    AesBlock chain_key = key;
    for (std::size_t t = 0; t < blocks; ++t) {
        if (t > 0) state = perturb(state, chain_key);
        auto [whitening, next] = chaos::keystream_bytes(state, kAesBlockBytes);
        state = next;
        const std::size_t index = order.indices[t];
        AesBlock whiten{};
        std::copy(whitening.begin(), whitening.end(), whiten.begin());
        auto [result, cipher] = transform(load_block(data, index), whiten, chain_key);
        store_block(out, index, result);
        chain_key = cipher;
    }
    return out;
}

}  // namespace

Bytes aes_chaos_encrypt(std::span<const std::uint8_t> data, const AesKey128& key, double x_aes,
                        const chaos::MapParams& params) {
    return aes_chaos_walk(data, key, x_aes, params,
                          [](AesBlock block, const AesBlock& whiten, const AesKey128& k) {
                              for (std::size_t i = 0; i < block.size(); ++i) block[i] ^= whiten[i];
                              const AesBlock c = aes128_encrypt_block(block, k);
                              return std::pair{c, c};
                          });
}

Bytes aes_chaos_decrypt(std::span<const std::uint8_t> data, const AesKey128& key, double x_aes,
                        const chaos::MapParams& params) {
    return aes_chaos_walk(data, key, x_aes, params,
                          [](const AesBlock& cipher, const AesBlock& whiten, const AesKey128& k) {
                              AesBlock plain = aes128_decrypt_block(cipher, k);
                              for (std::size_t i = 0; i < plain.size(); ++i) plain[i] ^= whiten[i];
                              return std::pair{plain, cipher};
                          });
}

Bytes xor_by_hash(std::span<const std::uint8_t> data, const Digest512& hash) {
    require_multiple(data, kHashBlockBytes, "XOR-by-hash");
    Bytes out(data.begin(), data.end());
    for (std::size_t i = 0; i < kHashBlockBytes; ++i) out[i] ^= hash[i];
    for (std::size_t i = kHashBlockBytes; i < out.size(); ++i) out[i] ^= out[i - kHashBlockBytes];
    return out;
}

Bytes xor_by_hash_inverse(std::span<const std::uint8_t> data, const Digest512& hash) {
    require_multiple(data, kHashBlockBytes, "XOR-by-hash");
    Bytes out(data.size());
    for (std::size_t i = 0; i < kHashBlockBytes; ++i) out[i] = data[i] ^ hash[i];
    for (std::size_t i = kHashBlockBytes; i < out.size(); ++i) {
        out[i] = data[i] ^ data[i - kHashBlockBytes];
    }
    return out;
}

void Phase2Config::validate() const {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(t1) || !unit(t2)) throw Error(ErrorCode::InvalidArgument, "T1 and T2 must lie in [0,1]");
    if (!(sec >= 0.0 && sec <= 100.0)) throw Error(ErrorCode::InvalidArgument, "SEC must lie in [0,100]");
    if (max_xor_rounds > kMaxXorRounds) {
        throw Error(ErrorCode::InvalidArgument, "at most 15 XOR rounds fit in the key");
    }
    fis1.validate();
    fis2.validate();
}

Phase2Outcome run_phase2(std::span<const std::uint8_t> pre, std::span<const std::uint8_t> companion,
                         const DerivedSeeds& seeds, const Digest512& hash,
                         const Digest512& companion_hash, const Phase2Config& config,
                         const chaos::MapParams& params) {
    config.validate();
    if (pre.size() != companion.size()) {
        throw Error(ErrorCode::DimensionMismatch, "companion stream has a different length");
    }
    require_multiple(pre, kHashBlockBytes, "phase 2");

    Phase2Outcome out;
    out.cipher.assign(pre.begin(), pre.end());
    out.companion_cipher.assign(companion.begin(), companion.end());

    out.pre_entropy = metrics::entropy(pre);
    out.s_dive = fis::evaluate(config.fis1, {{"Entropy", out.pre_entropy}, {"SEC", config.sec}});
    if (out.s_dive < config.t1) {
        out.aes_flag = true;
#pragma omp parallel sections
        {
#pragma omp section
            out.cipher = aes_chaos_encrypt(out.cipher, seeds.phase2_key, seeds.x_aes, params);
#pragma omp section
            out.companion_cipher =
                aes_chaos_encrypt(out.companion_cipher, seeds.phase2_key, seeds.x_aes, params);
        }
    }

    while (true) {
        const double n = metrics::npcr(out.cipher, out.companion_cipher);
        const double u = metrics::uaci(out.cipher, out.companion_cipher);
        const double d = fis::evaluate(config.fis2, {{"UACI", u}, {"NPCR", n}, {"SEC", config.sec}});
        out.npcr_history.push_back(n);
        out.uaci_history.push_back(u);
        out.d_dive_history.push_back(d);
        if (!(d < config.t2) || out.xor_count >= config.max_xor_rounds) break;
#pragma omp parallel sections
        {
#pragma omp section
            out.cipher = xor_by_hash(out.cipher, hash);
#pragma omp section
            out.companion_cipher = xor_by_hash(out.companion_cipher, companion_hash);
        }
        ++out.xor_count;
    }
    return out;
}

}  // namespace chaofuzz::phase2
