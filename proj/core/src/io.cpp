#include "dnmc/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dnmc/errors.hpp"

namespace dnmc {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError(std::string(what) + ": not valid JSON");
    return j;
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw FormatError(std::string(what) + ": expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void append_u32_le(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xffu));
}

void append_f64_le(std::vector<unsigned char>& out, double d) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t read_u32_le(std::span<const unsigned char> b, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

double read_f64_le(std::span<const unsigned char> b, std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
    return std::bit_cast<double>(v);
}

constexpr char kMagic[5] = {'D', 'N', 'M', 'C', '1'};

} // namespace

Manifest parse_manifest(const std::string& text) {
    const json j = parse_json(text, "manifest");
    if (!j.is_object()) throw FormatError("manifest: expected a JSON object");
    Manifest m;
    if (!j.contains("schema_version") || !j["schema_version"].is_string())
        throw FormatError("manifest: missing schema_version");
    m.schema_version = j["schema_version"].get<std::string>();
    if (m.schema_version != "1")
        throw FormatError("manifest: unrecognized schema_version '" + m.schema_version + "'");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw FormatError("manifest: dim must be a non-negative integer");
    m.dim = j["dim"].get<std::size_t>();
    if (!j.contains("backend") || !j["backend"].is_string())
        throw FormatError("manifest: missing backend");
    m.backend = j["backend"].get<std::string>();
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw FormatError("manifest: seed must be a non-negative integer");
        m.seed = j["seed"].get<std::uint64_t>();
    }
    if (m.backend == "rotation") {
        if (!j.contains("angles") || !j["angles"].is_array())
            throw FormatError("manifest: rotation backend needs an angles array");
        for (const auto& a : j["angles"]) m.angles.push_back(number_list(a, "manifest angles"));
    } else if (m.backend == "dense") {
        if (!j.contains("matrices") || !j["matrices"].is_array())
            throw FormatError("manifest: dense backend needs a matrices array");
        for (const auto& a : j["matrices"]) m.matrices.push_back(number_list(a, "manifest matrices"));
    } else {
        throw FormatError("manifest: backend must be 'rotation' or 'dense'");
    }
    return m;
}

std::string format_manifest(const Manifest& m) {
    json j;
    j["schema_version"] = m.schema_version;
    j["dim"] = m.dim;
    j["backend"] = m.backend;
    j["seed"] = m.seed;
    if (m.backend == "rotation")
        j["angles"] = m.angles;
    else
        j["matrices"] = m.matrices;
    return j.dump(2) + "\n";
}

BasisPtr make_basis(const Manifest& m) {
    if (m.dim == 0) throw FormatError("manifest: dim must be positive");
    if (m.backend == "rotation") {
        if (m.dim % 2 != 0) throw FormatError("manifest: rotation backend needs an even dim");
        if (m.angles.empty()) throw FormatError("manifest: no axes");
        std::vector<BlockRotation> rs;
        rs.reserve(m.angles.size());
        for (const auto& a : m.angles) {
            if (a.size() != m.dim / 2)
                throw FormatError("manifest: each angle list must have dim/2 entries");
            rs.push_back(BlockRotation::from_angles(a));
        }
        return AxisBasis::make_rotation(std::move(rs));
    }
    if (m.matrices.empty()) throw FormatError("manifest: no axes");
    std::vector<DenseTransform> ts;
    ts.reserve(m.matrices.size());
    for (const auto& raw : m.matrices) {
        if (raw.size() != m.dim * m.dim)
            throw FormatError("manifest: each matrix must have dim*dim entries");
        ts.emplace_back(Matrix(m.dim, m.dim, raw));
    }
    return AxisBasis::make_dense(std::move(ts));
}

Manifest load_manifest(const std::string& path) { return parse_manifest(read_file(path)); }

void save_manifest(const Manifest& m, const std::string& path) { write_file(path, format_manifest(m)); }

std::vector<unsigned char> encode_tensor(const Tensor& t) {
    std::vector<unsigned char> out;
    out.reserve(5 + 4 + 4 * t.rank() + 8 * t.size());
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    if (t.rank() > 0xffffffffull) throw FormatError("tensor: rank too large");
    append_u32_le(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t d : t.shape) {
        if (d > 0xffffffffull) throw FormatError("tensor: dimension too large");
        append_u32_le(out, static_cast<std::uint32_t>(d));
    }
    for (double x : t.data) append_f64_le(out, x);
    return out;
}

Tensor decode_tensor(std::span<const unsigned char> bytes) {
    if (bytes.size() < 9 || std::memcmp(bytes.data(), kMagic, 5) != 0)
        throw FormatError("tensor: bad magic");
    const std::uint32_t rank = read_u32_le(bytes, 5);
    std::size_t at = 9;
    if (bytes.size() < at + 4ull * rank) throw FormatError("tensor: truncated header");
    std::vector<std::size_t> shape(rank);
    for (std::uint32_t i = 0; i < rank; ++i) {
        shape[i] = read_u32_le(bytes, at);
        at += 4;
    }
    const std::size_t n = shape_product(shape);
    if (bytes.size() != at + 8 * n) throw FormatError("tensor: payload length does not match dims");
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i, at += 8) data[i] = read_f64_le(bytes, at);
    return Tensor(std::move(shape), std::move(data));
}

Tensor load_tensor(const std::string& path) {
    const std::string raw = read_file(path);
    return decode_tensor(
        std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(raw.data()), raw.size()));
}

void save_tensor(const Tensor& t, const std::string& path) { write_file(path, encode_tensor(t)); }

std::vector<Element> parse_elements(const std::string& text, const BasisPtr& basis) {
    if (!basis) throw Error("parse_elements: no basis");
    const json j = parse_json(text, "elements");
    if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
        throw FormatError("elements: expected {\"elements\": [...]}");
    std::vector<Element> out;
    for (const auto& e : j["elements"]) {
        if (!e.is_object() || !e.contains("content") || !e.contains("powers"))
            throw FormatError("elements: each entry needs content and powers");
        Vec content = number_list(e["content"], "element content");
        if (!e["powers"].is_array()) throw FormatError("element powers: expected an array of integers");
        std::vector<std::int64_t> powers;
        for (const auto& p : e["powers"]) {
            if (!p.is_number_integer()) throw FormatError("element powers: expected an array of integers");
            powers.push_back(p.get<std::int64_t>());
        }
        out.push_back(make_element(std::move(content), std::move(powers), basis));
    }
    return out;
}

std::string format_elements(std::span<const Element> elements) {
    json arr = json::array();
    for (const auto& e : elements) {
        json je;
        je["content"] = e.content;
        je["powers"] = e.powers;
        arr.push_back(std::move(je));
    }
    json j;
    j["elements"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::vector<Element> load_elements(const std::string& path, const BasisPtr& basis) {
    return parse_elements(read_file(path), basis);
}

void save_elements(std::span<const Element> elements, const std::string& path) {
    write_file(path, format_elements(elements));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return std::move(ss).str();
}

void write_file(const std::string& path, std::span<const unsigned char> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_file(const std::string& path, const std::string& text) {
    write_file(path, std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(text.data()),
                                                    text.size()));
}

} // namespace dnmc
