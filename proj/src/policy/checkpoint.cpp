// Copyright 2026 The FlowQ-Net Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flowq/policy/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace flowq {

namespace {

constexpr char kMagic[4] = {'F', 'Q', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream &out, const T &value)
{
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

void put_doubles(std::ostream &out, const std::vector<double> &v)
{
    out.write(reinterpret_cast<const char *>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

template <typename T>
T get(std::istream &in, const std::string &path)
{
    T value{};
    if (!in.read(reinterpret_cast<char *>(&value), sizeof(T))) {
        throw std::runtime_error("checkpoint " + path + " is truncated");
    }
    return value;
}

std::vector<double> get_doubles(std::istream &in, std::size_t n, const std::string &path)
{
    std::vector<double> v(n);
    if (!in.read(reinterpret_cast<char *>(v.data()), static_cast<std::streamsize>(n * sizeof(double)))) {
        throw std::runtime_error("checkpoint " + path + " is truncated");
    }
    return v;
}

} // namespace

void save_checkpoint(const std::string &path, const Checkpoint &ckpt)
{
    const std::size_t n = ckpt.policy.size();
    if (ckpt.adam.size() != n || ckpt.adam_log_z.size() != 1) {
        throw std::invalid_argument("save_checkpoint: optimizer state shape mismatch");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write checkpoint " + path);
    }
    const std::string header = nlohmann::json{{"config", ckpt.policy.config()}, {"meta", ckpt.meta}}.dump();
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint64_t>(header.size()));
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    put(out, static_cast<std::uint64_t>(n));
    put_doubles(out, ckpt.policy.params());
    put(out, ckpt.policy.log_z());
    put(out, static_cast<std::int64_t>(ckpt.adam.step));
    put_doubles(out, ckpt.adam.m);
    put_doubles(out, ckpt.adam.v);
    put(out, static_cast<std::int64_t>(ckpt.adam_log_z.step));
    put_doubles(out, ckpt.adam_log_z.m);
    put_doubles(out, ckpt.adam_log_z.v);
    if (!out) {
        throw std::runtime_error("failed while writing checkpoint " + path);
    }
}

Checkpoint load_checkpoint(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint " + path);
    }
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error(path + " is not a policy checkpoint");
    }
    const auto version = get<std::uint32_t>(in, path);
    if (version != kVersion) {
        throw std::runtime_error("checkpoint " + path + " has unsupported version " +
                                 std::to_string(version));
    }
    const auto header_len = get<std::uint64_t>(in, path);
    if (header_len > (std::uint64_t{1} << 30)) {
        throw std::runtime_error("checkpoint " + path + " has a corrupt header length");
    }
    std::string header(header_len, '\0');
    if (!in.read(header.data(), static_cast<std::streamsize>(header_len))) {
        throw std::runtime_error("checkpoint " + path + " is truncated");
    }
    nlohmann::json doc;
    PolicyConfig config;
    try {
        doc = nlohmann::json::parse(header);
        config = doc.at("config").get<PolicyConfig>();
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error("checkpoint " + path + " has a corrupt header: " + e.what());
    }
    const auto n = get<std::uint64_t>(in, path);
    if (n != TransformerPolicy::param_count(config)) {
        throw std::runtime_error("checkpoint " + path + " parameter count does not match its config");
    }
    std::vector<double> params = get_doubles(in, n, path);
    const double log_z = get<double>(in, path);
    Checkpoint ckpt{TransformerPolicy(config, std::move(params), log_z), AdamState(n), AdamState(1),
                    doc.value("meta", nlohmann::json::object())};
    ckpt.adam.step = get<std::int64_t>(in, path);
    ckpt.adam.m = get_doubles(in, n, path);
    ckpt.adam.v = get_doubles(in, n, path);
    ckpt.adam_log_z.step = get<std::int64_t>(in, path);
    ckpt.adam_log_z.m = get_doubles(in, 1, path);
    ckpt.adam_log_z.v = get_doubles(in, 1, path);
    return ckpt;
}

} // namespace flowq
