// chaofuzz command-line front end.
//
// Exit status:
//   0  success
//   1  usage error
//   2  unreadable/invalid input image or unwritable output
//   3  bad key file (missing, unreadable, wrong length)
//   4  internal invariant failure
//   5  container or decryption-key integrity failure
//   6  dimension mismatch between analyzed images
//   7  FIS configuration failed to parse or validate

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaofuzz/error.hpp"
#include "chaofuzz/fis.hpp"
#include "chaofuzz/imgio.hpp"
#include "chaofuzz/keyschedule.hpp"
#include "chaofuzz/metrics.hpp"
#include "chaofuzz/pipeline.hpp"

namespace {

using namespace chaofuzz;

enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kBadInput = 2,
    kBadKey = 3,
    kInternal = 4,
    kIntegrity = 5,
    kDimensions = 6,
    kBadFisConfig = 7,
};

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw Failure{code, message}; }

template <typename F>
auto guarded(int code, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        fail(code, e.what());
    }
}

fis::FisConfig load_fis_file(const std::string& path) {
    const Bytes text = guarded(kBadInput, [&] { return imgio::read_file(path); });
    return guarded(kBadFisConfig, [&] {
        return fis::load_fis_config(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()));
    });
}

MasterKey load_master_key(const std::string& path) {
    const Bytes data = guarded(kBadKey, [&] { return imgio::read_file(path); });
    if (data.size() != 64) {
        fail(kBadKey, "master key file must hold 64 bytes, found " + std::to_string(data.size()));
    }
    MasterKey key;
    std::copy(data.begin(), data.end(), key.bytes.begin());
    return key;
}

DecryptionKey load_decryption_key(const std::string& path) {
    const Bytes data = guarded(kBadKey, [&] { return imgio::read_file(path); });
    try {
        return unpack_decryption_key(data);
    } catch (const Error& e) {
        fail(e.code() == ErrorCode::WrongLength ? kBadKey : kIntegrity, e.what());
    }
}

/// Loads a PGM/PNG image, or the unpadded pixels of an ACFZ container.
GrayImage load_analyzable(const std::string& path) {
    const Bytes data = guarded(kBadInput, [&] { return imgio::read_file(path); });
    return guarded(kBadInput, [&] {
        if (data.size() >= 4 && std::equal(data.begin(), data.begin() + 4, "ACFZ")) {
            const auto c = imgio::decode_container(data);
            return GrayImage(c.width, c.height,
                             Bytes(c.payload.begin(), c.payload.begin() + std::ptrdiff_t{c.width} * c.height));
        }
        if (data.size() >= 8 && data[0] == 0x89 && data[1] == 'P') return imgio::decode_png(data);
        return imgio::decode_pgm(data);
    });
}

void print_metrics(std::ostream& os, const metrics::SecurityReport& report) {
    os << metrics::report_to_text(report);
}

struct Options {
    // keygen
    std::string out;
    std::optional<std::uint64_t> seed;
    // encrypt / decrypt
    std::string in;
    std::string key;
    std::string deckey;
    double sec = phase2::kDefaultSec;
    double mu = chaos::kDefaultMu;
    double t1 = phase2::kDefaultT1;
    double t2 = phase2::kDefaultT2;
    std::size_t burn_in = chaos::kDefaultBurnIn;
    std::string fis1;
    std::string fis2;
    // analyze
    std::vector<std::string> images;
    std::string hist;
    // fis
    std::string fis_config;
    std::string builtin;
    bool dump = false;
    std::vector<std::string> assignments;
};

int cmd_keygen(const Options& o) {
    MasterKey key;
    if (o.seed) {
        std::mt19937_64 rng(*o.seed);
        for (auto& b : key.bytes) b = static_cast<std::uint8_t>(rng() >> 56);
    } else {
        std::random_device rd;
        for (auto& b : key.bytes) b = static_cast<std::uint8_t>(rd());
    }
    guarded(kBadInput, [&] { imgio::write_file(o.out, key.bytes); });
    std::cout << "wrote 64-byte master key to " << o.out << '\n';
    return kOk;
}

RunConfig run_config(const Options& o) {
    RunConfig config;
    config.map.mu = o.mu;
    config.map.burn_in = o.burn_in;
    config.phase2.sec = o.sec;
    config.phase2.t1 = o.t1;
    config.phase2.t2 = o.t2;
    if (!o.fis1.empty()) config.phase2.fis1 = load_fis_file(o.fis1);
    if (!o.fis2.empty()) config.phase2.fis2 = load_fis_file(o.fis2);
    return config;
}

int cmd_encrypt(const Options& o) {
    const RunConfig config = run_config(o);
    guarded(kUsage, [&] { config.validate(); });
    const GrayImage img = guarded(kBadInput, [&] { return imgio::load_gray(o.in); });
    const MasterKey master = load_master_key(o.key);

    const EncryptResult result = guarded(kInternal, [&] { return encrypt(img, master, config); });
    if (result.key.xor_count > phase2::kMaxXorRounds) fail(kInternal, "xor round count out of range");
    if (decrypt(result.container, result.key, config.map) != img) {
        fail(kInternal, "round-trip self check failed");
    }

    guarded(kBadInput, [&] {
        imgio::store_cipher(result.container, o.out);
        imgio::write_file(o.deckey, pack_decryption_key(result.key));
    });

    const auto& oc = result.outcome;
    std::cout << std::fixed << std::setprecision(6);
    std::cout << "pre_entropy " << oc.pre_entropy << '\n';
    std::cout << "s_dive " << oc.s_dive << '\n';
    std::cout << "aes_flag " << (oc.aes_flag ? 1 : 0) << '\n';
    std::cout << "xor_count " << int{oc.xor_count} << '\n';
    std::cout << "d_dive " << oc.d_dive_history.back() << '\n';
    const GrayImage cipher = result.cipher_image();
    const GrayImage twin = result.companion_image();
    print_metrics(std::cout, metrics::build_report(cipher, &twin));
    return kOk;
}

int cmd_decrypt(const Options& o) {
    const Bytes raw = guarded(kBadInput, [&] { return imgio::read_file(o.in); });
    const auto container = guarded(kIntegrity, [&] { return imgio::decode_container(raw); });
    const DecryptionKey key = load_decryption_key(o.deckey);
    chaos::MapParams params{o.mu, o.burn_in};
    if (!(params.mu > 0.0 && params.mu < 2.0)) fail(kUsage, "mu must lie in (0,2)");

    const GrayImage plain = guarded(kIntegrity, [&] { return decrypt(container, key, params); });
    if (image_hash(plain) != key.image_hash) {
        std::cerr << "warning: recovered image does not match the hash in the decryption key\n";
    }
    guarded(kBadInput, [&] { imgio::store_gray(plain, o.out); });
    std::cout << "wrote " << plain.width() << "x" << plain.height() << " image to " << o.out << '\n';
    return kOk;
}

int cmd_analyze(const Options& o) {
    const GrayImage a = load_analyzable(o.images.at(0));
    std::optional<GrayImage> b;
    if (o.images.size() > 1) b = load_analyzable(o.images[1]);
    if (b && !a.same_shape(*b)) fail(kDimensions, "images have different dimensions");

    const auto report = metrics::build_report(a, b ? &*b : nullptr);
    print_metrics(std::cout, report);
    if (!o.out.empty()) {
        const std::string json = metrics::report_to_json(report) + "\n";
        guarded(kBadInput, [&] {
            imgio::write_file(o.out, std::span(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
        });
    }
    if (!o.hist.empty()) {
        const std::string csv = metrics::histogram_to_csv(report.histogram);
        guarded(kBadInput, [&] {
            imgio::write_file(o.hist, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
        });
    }
    return kOk;
}

int cmd_fis(const Options& o) {
    fis::FisConfig config;
    if (!o.builtin.empty()) {
        if (o.builtin == "fis1") {
            config = fis::fis1_default();
        } else if (o.builtin == "fis2") {
            config = fis::fis2_default();
        } else {
            fail(kUsage, "unknown builtin '" + o.builtin + "' (expected fis1 or fis2)");
        }
    } else if (!o.fis_config.empty()) {
        config = load_fis_file(o.fis_config);
    } else {
        fail(kUsage, "give a config file or --builtin");
    }

    if (o.dump) {
        std::cout << fis::serialize_fis_config(config);
        return kOk;
    }

    fis::Inputs inputs;
    for (const auto& a : o.assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) fail(kUsage, "expected name=value, got '" + a + "'");
        try {
            inputs[a.substr(0, eq)] = std::stod(a.substr(eq + 1));
        } catch (const std::exception&) {
            fail(kUsage, "not a number in '" + a + "'");
        }
    }
    const auto ev = guarded(kBadFisConfig, [&] { return fis::evaluate_detailed(config, inputs); });
    std::cout << std::setprecision(6) << std::fixed;
    for (std::size_t i = 0; i < config.rules.size(); ++i) {
        std::cout << "rule " << (i + 1) << " firing " << ev.firing_strengths[i] << '\n';
    }
    std::cout << config.output.name << ' ' << ev.output << '\n';
    return kOk;
}

void add_tuning_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--sec", o.sec, "Requested security level, 0-100")->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--t1", o.t1, "S-Dive threshold gating AES-Chaos")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--t2", o.t2, "D-Dive threshold gating XOR-by-hash")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--fis1", o.fis1, "FIS1 configuration file");
    cmd->add_option("--fis2", o.fis2, "FIS2 configuration file");
}

void add_map_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--mu", o.mu, "Tent map parameter");
    cmd->add_option("--burn-in", o.burn_in, "Discarded tent-map iterations per stream");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaotic two-phase image cipher with fuzzy-gated AES and hash rounds"};
    app.require_subcommand(1);
    Options o;

    auto* keygen = app.add_subcommand("keygen", "Write a random 64-byte master key");
    keygen->add_option("-o,--out", o.out, "Key file")->required();
    keygen->add_option("--seed", o.seed, "Deterministic seed (testing only)");

    auto* enc = app.add_subcommand("encrypt", "Encrypt a grayscale image");
    enc->add_option("-i,--in", o.in, "Input PGM or PNG")->required();
    enc->add_option("-k,--key", o.key, "64-byte master key file")->required();
    enc->add_option("-o,--out", o.out, "Cipher container to write")->required();
    enc->add_option("-d,--deckey", o.deckey, "Decryption key file to write")->required();
    add_tuning_flags(enc, o);
    add_map_flags(enc, o);

    auto* dec = app.add_subcommand("decrypt", "Decrypt a cipher container");
    dec->add_option("-i,--in", o.in, "Cipher container")->required();
    dec->add_option("-d,--deckey", o.deckey, "130-byte decryption key file")->required();
    dec->add_option("-o,--out", o.out, "PGM image to write")->required();
    add_map_flags(dec, o);

    auto* analyze = app.add_subcommand("analyze", "Security metrics for one image or an image pair");
    analyze->add_option("images", o.images, "Image (and optional second image)")->required()->expected(1, 2);
    analyze->add_option("-o,--out", o.out, "Write the report as JSON");
    analyze->add_option("--hist", o.hist, "Write the histogram as 256 comma-separated counts");

    auto* fis_cmd = app.add_subcommand("fis", "Evaluate a fuzzy inference system");
    fis_cmd->add_option("-c,--config", o.fis_config, "FIS configuration file");
    fis_cmd->add_option("--builtin", o.builtin, "Use a built-in system: fis1 or fis2");
    fis_cmd->add_flag("--dump", o.dump, "Print the configuration instead of evaluating");
    fis_cmd->add_option("inputs", o.assignments, "Input values as name=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*keygen) return cmd_keygen(o);
        if (*enc) return cmd_encrypt(o);
        if (*dec) return cmd_decrypt(o);
        if (*analyze) return cmd_analyze(o);
        if (*fis_cmd) return cmd_fis(o);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
