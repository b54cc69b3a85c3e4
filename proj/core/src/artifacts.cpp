#include "uavplan/artifacts.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace uavplan {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), end);
}

namespace {

constexpr std::array<std::uint32_t, 64> kRoundConstants = {
    0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u, 0x923f82a4u,
    0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u, 0x72be5d74u, 0x80deb1feu,
    0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u, 0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu,
    0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau, 0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u,
    0xc6e00bf3u, 0xd5a79147u, 0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu,
    0x53380d13u, 0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
    0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u, 0x19a4c116u,
    0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au, 0x5b9cca4fu, 0x682e6ff3u,
    0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u, 0x90befffau, 0xa4506cebu, 0xbef9a3f7u,
    0xc67178f2u};

std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

void compress(std::array<std::uint32_t, 8>& state, const unsigned char* block) {
    std::array<std::uint32_t, 64> w{};
    for (int i = 0; i < 16; ++i)
        w[static_cast<std::size_t>(i)] =
            (static_cast<std::uint32_t>(block[4 * i]) << 24) |
            (static_cast<std::uint32_t>(block[4 * i + 1]) << 16) |
            (static_cast<std::uint32_t>(block[4 * i + 2]) << 8) |
            static_cast<std::uint32_t>(block[4 * i + 3]);
    for (std::size_t i = 16; i < 64; ++i) {
        const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }

    auto [a, b, c, d, e, f, g, h] = state;
    for (std::size_t i = 0; i < 64; ++i) {
        const std::uint32_t big_s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const std::uint32_t ch = (e & f) ^ (~e & g);
        const std::uint32_t t1 = h + big_s1 + ch + kRoundConstants[i] + w[i];
        const std::uint32_t big_s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        const std::uint32_t t2 = big_s0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    state[0] += a;
    state[1] += b;
    state[2] += c;
    state[3] += d;
    state[4] += e;
    state[5] += f;
    state[6] += g;
    state[7] += h;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    std::array<std::uint32_t, 8> state = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                          0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};

    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::size_t size = data.size();
    std::size_t offset = 0;
    for (; offset + 64 <= size; offset += 64) compress(state, bytes + offset);

    // Final block(s): remainder, 0x80 marker, zero padding, 64-bit bit length.
    std::array<unsigned char, 128> tail{};
    const std::size_t rest = size - offset;
    for (std::size_t i = 0; i < rest; ++i) tail[i] = bytes[offset + i];
    tail[rest] = 0x80;
    const std::size_t tail_len = rest + 1 + 8 <= 64 ? 64 : 128;
    const std::uint64_t bit_len = static_cast<std::uint64_t>(size) * 8;
    for (int i = 0; i < 8; ++i)
        tail[tail_len - 8 + static_cast<std::size_t>(i)] =
            static_cast<unsigned char>(bit_len >> (56 - 8 * i));
    compress(state, tail.data());
    if (tail_len == 128) compress(state, tail.data() + 64);

    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(64, '0');
    for (std::size_t i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            out[8 * i + static_cast<std::size_t>(j)] =
                kHex[(state[i] >> (28 - 4 * j)) & 0xfu];
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read failed: " + path.string());
    return std::move(buffer).str();
}

std::string render_trajectory_csv(const SampledPath& path, const Kinematics& kin,
                                  const LinkTrace& trace) {
    const std::size_t n = path.positions.size();
    if (kin.velocities.size() + 1 != n || kin.accelerations.size() + 2 != n)
        throw std::invalid_argument("trajectory csv: kinematics size mismatch");
    if (static_cast<std::size_t>(trace.rates.cols()) != n)
        throw std::invalid_argument("trajectory csv: link trace size mismatch");
    const auto node_count = static_cast<std::size_t>(trace.rates.rows());

    std::string out = "t,x,y,z,vx,vy,vz,speed,ax,ay,az";
    for (std::size_t k = 0; k < node_count; ++k) {
        const std::string id = std::to_string(k + 1);
        out += ",rate_" + id + ",active_" + id;
    }
    out += "\n";

    for (std::size_t i = 0; i < n; ++i) {
        const double t = path.mission_time * (static_cast<double>(i) * path.delta_tbar);
        out += format_double(t);
        for (int c = 0; c < 3; ++c) out += "," + format_double(path.positions[i](c));
        if (i < kin.velocities.size()) {
            for (int c = 0; c < 3; ++c) out += "," + format_double(kin.velocities[i](c));
            out += "," + format_double(kin.speeds[i]);
        } else {
            out += ",,,,";
        }
        if (i < kin.accelerations.size()) {
            for (int c = 0; c < 3; ++c) out += "," + format_double(kin.accelerations[i](c));
        } else {
            out += ",,,";
        }
        for (std::size_t k = 0; k < node_count; ++k) {
            out += "," + format_double(trace.rates(static_cast<Eigen::Index>(k),
                                                   static_cast<Eigen::Index>(i)));
            out += trace.active[k][i] ? ",1" : ",0";
        }
        out += "\n";
    }
    return out;
}

std::string render_history_csv(std::span<const GenerationStats> history) {
    std::string out = "generation,best_feasible_objective,min_violation,feasible_count\n";
    for (const GenerationStats& row : history) {
        out += std::to_string(row.generation);
        out += "," + format_double(row.best_feasible_objective);
        out += "," + format_double(row.min_violation);
        out += "," + std::to_string(row.feasible_count);
        out += "\n";
    }
    return out;
}

} // namespace uavplan
