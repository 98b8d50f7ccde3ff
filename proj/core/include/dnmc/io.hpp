#ifndef DNMC_IO_HPP
#define DNMC_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dnmc/algebra.hpp"
#include "dnmc/tensor.hpp"

namespace dnmc {

/// Self-describing text config naming a basis: backend, dimension and the
/// per-axis transforms (angle lists or row-major matrices).
struct Manifest {
    std::string schema_version = "1";
    std::size_t dim = 0;
    std::string backend; ///< "rotation" | "dense"
    std::vector<std::vector<double>> angles;  ///< rotation: one list (d/2) per axis
    std::vector<std::vector<double>> matrices; ///< dense: one row-major d*d block per axis
    std::uint64_t seed = 0;

    std::size_t axes() const { return backend == "rotation" ? angles.size() : matrices.size(); }
};

Manifest parse_manifest(const std::string& text);
std::string format_manifest(const Manifest& m);
Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& m, const std::string& path);

/// Validates and instantiates the basis the manifest describes.
BasisPtr make_basis(const Manifest& m);

// Binary tensor container: "DNMC1" magic, u32 rank, u32 dims[rank], then
// rank-major float64 payload; everything little-endian. Round-trips are
// bit-exact.
Tensor load_tensor(const std::string& path);
void save_tensor(const Tensor& t, const std::string& path);
Tensor decode_tensor(std::span<const unsigned char> bytes);
std::vector<unsigned char> encode_tensor(const Tensor& t);

/// Element lists ride in the same text format as the manifest:
/// {"elements": [{"content": [...], "powers": [...]}, ...]}.
std::vector<Element> parse_elements(const std::string& text, const BasisPtr& basis);
std::string format_elements(std::span<const Element> elements);
std::vector<Element> load_elements(const std::string& path, const BasisPtr& basis);
void save_elements(std::span<const Element> elements, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::span<const unsigned char> bytes);
void write_file(const std::string& path, const std::string& text);

} // namespace dnmc

#endif // DNMC_IO_HPP
