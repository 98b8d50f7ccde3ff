#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <unistd.h>
#include <vector>

#include "dnmc/errors.hpp"
#include "dnmc/io.hpp"

using namespace dnmc;

namespace {

std::string temp_path(const char* stem) {
    return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/dnmc_io_" +
           stem + "_" + std::to_string(::getpid());
}

Manifest rotation_manifest() {
    Manifest m;
    m.dim = 4;
    m.backend = "rotation";
    m.angles = {{0.5, -1.25}, {2.0, 0.0}};
    m.seed = 42;
    return m;
}

} // namespace

TEST_CASE("tensor bytes follow the documented layout") {
    const Tensor t({2}, {1.0, 2.0});
    const std::vector<unsigned char> bytes = encode_tensor(t);
    REQUIRE(bytes.size() == 5 + 4 + 4 + 16);
    CHECK(std::memcmp(bytes.data(), "DNMC1", 5) == 0);
    const unsigned char want[] = {
        1, 0, 0, 0,                         // rank, little-endian
        2, 0, 0, 0,                         // dims[0]
        0, 0, 0, 0, 0, 0, 0xf0, 0x3f,       // 1.0
        0, 0, 0, 0, 0, 0, 0,    0x40,       // 2.0
    };
    CHECK(std::memcmp(bytes.data() + 5, want, sizeof want) == 0);
}

TEST_CASE("tensor round-trips are bit-exact, including the awkward values") {
    const Tensor t({2, 3}, {-0.0, 5e-324, 1e308, -1e-308, 0.25, std::numeric_limits<double>::min()});
    const Tensor back = decode_tensor(encode_tensor(t));
    REQUIRE(back.shape == t.shape);
    REQUIRE(back.data.size() == t.data.size());
    CHECK(std::memcmp(back.data.data(), t.data.data(), t.data.size() * sizeof(double)) == 0);
    CHECK(std::signbit(back.data[0]));
}

TEST_CASE("rank-0 tensors carry one scalar") {
    const Tensor t({}, {3.5});
    const Tensor back = decode_tensor(encode_tensor(t));
    CHECK(back.rank() == 0);
    CHECK(back.data == std::vector<double>{3.5});
}

TEST_CASE("corrupt tensor bytes are rejected") {
    std::vector<unsigned char> good = encode_tensor(Tensor({3}, {1.0, 2.0, 3.0}));

    std::vector<unsigned char> bad_magic = good;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS((void)decode_tensor(bad_magic), FormatError);

    std::vector<unsigned char> truncated(good.begin(), good.end() - 3);
    CHECK_THROWS_AS((void)decode_tensor(truncated), FormatError);

    std::vector<unsigned char> trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS((void)decode_tensor(trailing), FormatError);

    std::vector<unsigned char> header_only(good.begin(), good.begin() + 7);
    CHECK_THROWS_AS((void)decode_tensor(header_only), FormatError);
}

TEST_CASE("tensor files round-trip through disk") {
    const std::string path = temp_path("tensor");
    const Tensor t({2, 2}, {1.0, -2.5, 3.25, 0.0});
    save_tensor(t, path);
    const Tensor back = load_tensor(path);
    CHECK(back.shape == t.shape);
    CHECK(back.data == t.data);
    std::remove(path.c_str());
    CHECK_THROWS_AS((void)load_tensor(path), IoError);
}

TEST_CASE("manifests round-trip through text") {
    const Manifest m = rotation_manifest();
    const Manifest back = parse_manifest(format_manifest(m));
    CHECK(back.schema_version == "1");
    CHECK(back.dim == 4);
    CHECK(back.backend == "rotation");
    CHECK(back.angles == m.angles);
    CHECK(back.seed == 42);
    CHECK(back.axes() == 2);
}

TEST_CASE("dense manifests carry row-major matrices") {
    Manifest m;
    m.dim = 2;
    m.backend = "dense";
    m.matrices = {{0.0, -1.0, 1.0, 0.0}, {2.0, 0.0, 0.0, 0.5}};
    const Manifest back = parse_manifest(format_manifest(m));
    CHECK(back.matrices == m.matrices);

    const BasisPtr basis = make_basis(back);
    REQUIRE(basis);
    CHECK(basis->dim() == 2);
    CHECK(basis->axes() == 2);
    CHECK_FALSE(basis->rotation_backend());
}

TEST_CASE("make_basis instantiates what the manifest names") {
    const BasisPtr basis = make_basis(rotation_manifest());
    REQUIRE(basis);
    CHECK(basis->dim() == 4);
    CHECK(basis->axes() == 2);
    CHECK(basis->rotation_backend());
    CHECK(basis->commuting_verified());
}

TEST_CASE("bad manifests are rejected with a format error") {
    CHECK_THROWS_AS((void)parse_manifest("not json"), FormatError);
    CHECK_THROWS_AS((void)parse_manifest("[1,2]"), FormatError);

    Manifest m = rotation_manifest();
    m.schema_version = "2";
    CHECK_THROWS_AS((void)parse_manifest(format_manifest(m)), FormatError);

    m = rotation_manifest();
    m.dim = 5; // odd dim cannot be block-rotated
    CHECK_THROWS_AS((void)make_basis(m), FormatError);

    m = rotation_manifest();
    m.angles[1] = {1.0}; // wrong per-axis angle count
    CHECK_THROWS_AS((void)make_basis(m), FormatError);

    m = rotation_manifest();
    m.angles.clear();
    CHECK_THROWS_AS((void)make_basis(m), FormatError);

    m = rotation_manifest();
    m.backend = "sparse";
    CHECK_THROWS_AS((void)parse_manifest(format_manifest(m)), FormatError);

    Manifest d;
    d.dim = 2;
    d.backend = "dense";
    d.matrices = {{1.0, 2.0, 3.0}}; // not dim*dim entries
    CHECK_THROWS_AS((void)make_basis(d), FormatError);
}

TEST_CASE("manifest files round-trip through disk") {
    const std::string path = temp_path("manifest");
    save_manifest(rotation_manifest(), path);
    const Manifest back = load_manifest(path);
    CHECK(back.angles == rotation_manifest().angles);
    std::remove(path.c_str());
    CHECK_THROWS_AS((void)load_manifest(path), IoError);
}

TEST_CASE("element lists round-trip with signed powers") {
    const BasisPtr basis = make_basis(rotation_manifest());
    std::vector<Element> elems;
    elems.push_back(make_element({1.0, -2.0, 0.5, 0.0}, {3, -7}, basis));
    elems.push_back(make_element({0.0, 0.0, 0.0, -1e-3}, {0, 0}, basis));

    const std::vector<Element> back = parse_elements(format_elements(elems), basis);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].content == elems[i].content);
        CHECK(back[i].powers == elems[i].powers);
        CHECK(back[i].basis == basis);
    }
}

TEST_CASE("element parsing validates shape against the basis") {
    const BasisPtr basis = make_basis(rotation_manifest());
    CHECK_THROWS_AS((void)parse_elements("{}", basis), FormatError);
    CHECK_THROWS_AS(
        (void)parse_elements(R"({"elements":[{"content":[1,2],"powers":[0,0]}]})", basis),
        DimMismatch);
    CHECK_THROWS_AS(
        (void)parse_elements(R"({"elements":[{"content":[1,2,3,4],"powers":[0]}]})", basis),
        AxisMismatch);
    CHECK_THROWS_AS(
        (void)parse_elements(R"({"elements":[{"content":[1,2,3,4],"powers":[0.5,0]}]})", basis),
        FormatError);
}
