// SPDX-License-Identifier: Apache-2.0
//
// sbar - Bayesian channel reconstruction for fluid antenna arrays
// Copyright (C) 2026 The sbar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sbar/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "sbar/error.hpp"

namespace sbar::io {

using nlohmann::json;

namespace {

constexpr char kKernelMagic[8] = {'S', 'B', 'A', 'R', 'K', 'R', 'N', '\0'};
constexpr char kPlanMagic[8] = {'S', 'B', 'A', 'R', 'P', 'L', 'N', '\0'};

class LeWriter {
public:
    void bytes(const char* p, std::size_t n) { out_.append(p, n); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(char(std::uint8_t(v >> (8 * i))));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(char(std::uint8_t(v >> (8 * i))));
    }
    void i64(std::int64_t v) { u64(std::uint64_t(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void c128(Complex v) {
        f64(v.real());
        f64(v.imag());
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class LeReader {
public:
    explicit LeReader(const std::string& in) : in_(in) {}
    void expect_magic(const char (&magic)[8], const char* what) {
        need(8);
        if (std::memcmp(in_.data() + pos_, magic, 8) != 0)
            throw Error(ErrorCode::Format, std::string("not a binary ") + what + " file");
        pos_ += 8;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(in_[pos_ + std::size_t(i)])) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(in_[pos_ + std::size_t(i)])) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::int64_t i64() { return std::int64_t(u64()); }
    double f64() { return std::bit_cast<double>(u64()); }
    Complex c128() {
        const double re = f64();
        return {re, f64()};
    }
    // Guards element counts read from a header before allocating.
    void need_elements(std::uint64_t count, std::size_t elem_size) {
        if (count > (in_.size() - pos_) / elem_size) throw Error(ErrorCode::Format, "truncated file");
    }
    void expect_end() {
        if (pos_ != in_.size()) throw Error(ErrorCode::Format, "trailing bytes after payload");
    }

private:
    void need(std::size_t n) {
        if (in_.size() - pos_ < n) throw Error(ErrorCode::Format, "truncated file");
    }
    const std::string& in_;
    std::size_t pos_ = 0;
};

std::uint32_t kind_code(KernelKind k) {
    switch (k) {
    case KernelKind::Exponential: return 0;
    case KernelKind::Bessel: return 1;
    case KernelKind::TrainedCovariance: return 2;
    }
    return 0;
}

KernelKind kind_from_code(std::uint32_t c) {
    switch (c) {
    case 0: return KernelKind::Exponential;
    case 1: return KernelKind::Bessel;
    case 2: return KernelKind::TrainedCovariance;
    default: throw Error(ErrorCode::Format, "unknown kernel kind code " + std::to_string(c));
    }
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    if (s.empty() || s.size() > 16) throw Error(ErrorCode::Format, "bad 64-bit hex value '" + s + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= std::uint64_t(c - '0');
        else if (c >= 'a' && c <= 'f') v |= std::uint64_t(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= std::uint64_t(c - 'A' + 10);
        else throw Error(ErrorCode::Format, "bad 64-bit hex value '" + s + "'");
    }
    return v;
}

// Complex arrays are stored as interleaved [re0, im0, re1, im1, ...].
template <class Vec>
json interleave(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i].real());
        arr.push_back(v[i].imag());
    }
    return arr;
}

CVector deinterleave(const json& arr) {
    if (!arr.is_array() || arr.size() % 2 != 0)
        throw Error(ErrorCode::Format, "complex array must hold an even number of reals");
    CVector v(Eigen::Index(arr.size() / 2));
    for (std::size_t i = 0; i < arr.size() / 2; ++i)
        v[Eigen::Index(i)] = Complex(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
    return v;
}

json real_array(const RVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

RVector real_vector(const json& arr) {
    if (!arr.is_array()) throw Error(ErrorCode::Format, "expected a number array");
    RVector v(Eigen::Index(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) v[Eigen::Index(i)] = arr[i].get<double>();
    return v;
}

json parse_json(const std::string& text, const char* expected_format) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Format, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != expected_format)
        throw Error(ErrorCode::Format, std::string("expected a ") + expected_format + " document");
    if (j.value("version", 0) != kFormatVersion)
        throw Error(ErrorCode::Format, "unsupported version " + std::to_string(j.value("version", 0)));
    return j;
}

template <class F>
auto with_json_errors(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Format, std::string("bad field: ") + e.what());
    }
}

} // namespace

FileFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".json" ? FileFormat::Json : FileFormat::Binary;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::Io, "read failed on " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed on " + path.string());
}

std::string encode_kernel(const Kernel& kernel, FileFormat format) {
    const auto& m = kernel.matrix();
    const auto& h = kernel.hyperparams();
    if (format == FileFormat::Binary) {
        LeWriter w;
        w.bytes(kKernelMagic, 8);
        w.u32(kFormatVersion);
        w.u32(kind_code(kernel.kind()));
        w.u64(std::uint64_t(m.rows()));
        w.f64(h.alpha);
        w.f64(h.eta);
        w.i64(h.order);
        w.f64(h.jitter);
        w.f64(kernel.carrier_hz());
        w.u64(kernel.fingerprint());
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) w.c128(m(i, j));
        return w.take();
    }
    json j;
    j["format"] = "sbar-kernel";
    j["version"] = kFormatVersion;
    j["kind"] = std::string(to_string(kernel.kind()));
    j["N"] = m.rows();
    j["alpha"] = h.alpha;
    j["eta"] = h.eta;
    j["order"] = h.order;
    j["jitter"] = h.jitter;
    j["carrier_hz"] = kernel.carrier_hz();
    j["fingerprint"] = hex64(kernel.fingerprint());
    json cols = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) cols.push_back(interleave(CVector(m.col(c))));
    j["columns"] = std::move(cols);
    return j.dump(1) + "\n";
}

Kernel decode_kernel(const std::string& bytes) {
    if (!bytes.empty() && bytes.front() == '{') {
        const json j = parse_json(bytes, "sbar-kernel");
        return with_json_errors([&] {
            const auto kind = parse_kernel_kind(j.at("kind").get<std::string>());
            if (!kind) throw Error(ErrorCode::Format, "unknown kernel kind");
            const auto n = j.at("N").get<std::size_t>();
            const json& cols = j.at("columns");
            if (!cols.is_array() || cols.size() != n) throw Error(ErrorCode::Format, "kernel must have N columns");
            CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            for (std::size_t c = 0; c < n; ++c) {
                const CVector col = deinterleave(cols[c]);
                if (col.size() != Eigen::Index(n)) throw Error(ErrorCode::Format, "kernel column length != N");
                m.col(Eigen::Index(c)) = col;
            }
            KernelHyperparams h{j.at("alpha").get<double>(), j.at("eta").get<double>(), j.at("order").get<int>(),
                                j.at("jitter").get<double>()};
            Kernel k(*kind, std::move(m), h, j.at("carrier_hz").get<double>());
            if (k.fingerprint() != parse_hex64(j.at("fingerprint").get<std::string>()))
                throw Error(ErrorCode::FingerprintMismatch, "kernel contents do not match stored fingerprint");
            return k;
        });
    }
    LeReader r(bytes);
    r.expect_magic(kKernelMagic, "kernel");
    if (r.u32() != kFormatVersion) throw Error(ErrorCode::Format, "unsupported kernel file version");
    const KernelKind kind = kind_from_code(r.u32());
    const std::uint64_t n = r.u64();
    KernelHyperparams h;
    h.alpha = r.f64();
    h.eta = r.f64();
    h.order = int(r.i64());
    h.jitter = r.f64();
    const double carrier = r.f64();
    const std::uint64_t fp = r.u64();
    r.need_elements(n, 16);
    r.need_elements(n * n, 16);
    CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = r.c128();
    r.expect_end();
    Kernel k(kind, std::move(m), h, carrier);
    if (k.fingerprint() != fp)
        throw Error(ErrorCode::FingerprintMismatch, "kernel contents do not match stored fingerprint");
    return k;
}

std::string encode_plan(const SamplingPlan& plan, FileFormat format) {
    const auto& w = plan.weights();
    if (format == FileFormat::Binary) {
        LeWriter out;
        out.bytes(kPlanMagic, 8);
        out.u32(kFormatVersion);
        out.u32(0);
        out.u64(plan.num_ports());
        out.u64(plan.num_timeslots());
        out.u64(plan.antennas_per_slot());
        out.f64(plan.noise_power());
        out.u64(plan.kernel_fingerprint());
        out.u64(plan.id());
        for (PortIndex k : plan.order()) out.u64(k + 1);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) out.c128(w(r, c));
        for (Eigen::Index n = 0; n < plan.posterior_variance().size(); ++n) out.f64(plan.posterior_variance()[n]);
        return out.take();
    }
    json j;
    j["format"] = "sbar-plan";
    j["version"] = kFormatVersion;
    j["N"] = plan.num_ports();
    j["P"] = plan.num_timeslots();
    j["M"] = plan.antennas_per_slot();
    j["noise_power"] = plan.noise_power();
    j["kernel_fingerprint"] = hex64(plan.kernel_fingerprint());
    j["plan_id"] = hex64(plan.id());
    json order = json::array();
    for (PortIndex k : plan.order()) order.push_back(k + 1);
    j["order"] = std::move(order);
    json rows = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) rows.push_back(interleave(CVector(w.row(r).transpose())));
    j["weights"] = std::move(rows);
    j["posterior_variance"] = real_array(plan.posterior_variance());
    return j.dump(1) + "\n";
}

namespace {

SamplingPlan assemble_plan(std::uint64_t n, std::uint64_t p, std::uint64_t m, const std::vector<std::uint64_t>& order1,
                           RowMajorCMatrix w, RVector var, double noise, std::uint64_t kernel_fp,
                           std::uint64_t stored_id) {
    PortList order;
    order.reserve(order1.size());
    for (std::uint64_t k : order1) {
        if (k == 0 || k > n) throw Error(ErrorCode::Format, "plan port index out of range 1..N");
        order.push_back(PortIndex(k - 1));
    }
    SamplingPlan plan(n, p, m, std::move(order), std::move(w), std::move(var), noise, kernel_fp);
    if (plan.id() != stored_id) throw Error(ErrorCode::FingerprintMismatch, "plan id does not match contents");
    return plan;
}

} // namespace

SamplingPlan decode_plan(const std::string& bytes) {
    if (!bytes.empty() && bytes.front() == '{') {
        const json j = parse_json(bytes, "sbar-plan");
        return with_json_errors([&] {
            const auto n = j.at("N").get<std::uint64_t>();
            const auto p = j.at("P").get<std::uint64_t>();
            const auto m = j.at("M").get<std::uint64_t>();
            const auto order1 = j.at("order").get<std::vector<std::uint64_t>>();
            const json& rows = j.at("weights");
            if (!rows.is_array() || rows.size() != order1.size())
                throw Error(ErrorCode::Format, "weights must have one row per measurement");
            RowMajorCMatrix w(Eigen::Index(rows.size()), Eigen::Index(n));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const CVector row = deinterleave(rows[r]);
                if (row.size() != Eigen::Index(n)) throw Error(ErrorCode::Format, "weight row length != N");
                w.row(Eigen::Index(r)) = row.transpose();
            }
            return assemble_plan(n, p, m, order1, std::move(w), real_vector(j.at("posterior_variance")),
                                 j.at("noise_power").get<double>(),
                                 parse_hex64(j.at("kernel_fingerprint").get<std::string>()),
                                 parse_hex64(j.at("plan_id").get<std::string>()));
        });
    }
    LeReader r(bytes);
    r.expect_magic(kPlanMagic, "plan");
    if (r.u32() != kFormatVersion) throw Error(ErrorCode::Format, "unsupported plan file version");
    r.u32();
    const std::uint64_t n = r.u64(), p = r.u64(), m = r.u64();
    const double noise = r.f64();
    const std::uint64_t kernel_fp = r.u64();
    const std::uint64_t id = r.u64();
    r.need_elements(p, 8);
    r.need_elements(p * m, 8);
    std::vector<std::uint64_t> order(p * m);
    for (auto& k : order) k = r.u64();
    r.need_elements(n, 16);
    r.need_elements(order.size() * n, 16);
    RowMajorCMatrix w(Eigen::Index(order.size()), Eigen::Index(n));
    for (Eigen::Index row = 0; row < w.rows(); ++row)
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(row, c) = r.c128();
    r.need_elements(n, 8);
    RVector var(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < var.size(); ++i) var[i] = r.f64();
    r.expect_end();
    return assemble_plan(n, p, m, order, std::move(w), std::move(var), noise, kernel_fp, id);
}

void save_kernel(const Kernel& kernel, const std::filesystem::path& path, FileFormat format) {
    write_file(path, encode_kernel(kernel, format));
}
void save_kernel(const Kernel& kernel, const std::filesystem::path& path) {
    save_kernel(kernel, path, format_for_path(path));
}
Kernel load_kernel(const std::filesystem::path& path) { return decode_kernel(read_file(path)); }

void save_plan(const SamplingPlan& plan, const std::filesystem::path& path, FileFormat format) {
    write_file(path, encode_plan(plan, format));
}
void save_plan(const SamplingPlan& plan, const std::filesystem::path& path) {
    save_plan(plan, path, format_for_path(path));
}
SamplingPlan load_plan(const std::filesystem::path& path) { return decode_plan(read_file(path)); }

void save_observation(const PilotObservation& y, const std::filesystem::path& path) {
    json j;
    j["format"] = "sbar-observation";
    j["version"] = kFormatVersion;
    j["plan_id"] = hex64(y.plan_id);
    j["noise_power"] = y.noise_power;
    j["values"] = interleave(y.values);
    write_file(path, j.dump(1) + "\n");
}

PilotObservation load_observation(const std::filesystem::path& path) {
    const json j = parse_json(read_file(path), "sbar-observation");
    return with_json_errors([&] {
        PilotObservation y;
        y.plan_id = parse_hex64(j.at("plan_id").get<std::string>());
        y.noise_power = j.at("noise_power").get<double>();
        y.values = deinterleave(j.at("values"));
        return y;
    });
}

void save_channel(const ChannelRealization& h, const std::filesystem::path& path) {
    json j;
    j["format"] = "sbar-channel";
    j["version"] = kFormatVersion;
    j["model"] = h.model == ChannelModel::Ssc ? "ssc" : "external";
    j["values"] = interleave(h.values);
    write_file(path, j.dump(1) + "\n");
}

ChannelRealization load_channel(const std::filesystem::path& path) {
    const json j = parse_json(read_file(path), "sbar-channel");
    return with_json_errors([&] {
        ChannelRealization h;
        h.model = j.value("model", "external") == "ssc" ? ChannelModel::Ssc : ChannelModel::External;
        h.values = deinterleave(j.at("values"));
        return h;
    });
}

void save_reconstruction(const Reconstruction& r, const std::filesystem::path& path) {
    json j;
    j["format"] = "sbar-estimate";
    j["version"] = kFormatVersion;
    j["estimate"] = interleave(r.estimate);
    j["post_variance"] = real_array(r.post_variance);
    j["real_lo"] = real_array(r.real_lo);
    j["real_hi"] = real_array(r.real_hi);
    j["imag_lo"] = real_array(r.imag_lo);
    j["imag_hi"] = real_array(r.imag_hi);
    write_file(path, j.dump(1) + "\n");
}

} // namespace sbar::io
