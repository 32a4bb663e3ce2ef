// Bundled benchmark datasets. CSV with a header row, UTF-8, decimal point;
// loaders verify row counts and a frozen FNV-1a checksum of the file bytes.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace evid {

struct RadiataData {
    // 42 specimens: compression strength, density, resin-adjusted density.
    std::vector<double> y, x, z;
};

struct PimaData {
    // 532 women: incidence plus the seven covariates, raw (unstandardised).
    std::vector<int> type;
    std::vector<double> npreg, glu, bp, skin, bmi, ped, age;
    std::size_t rows() const { return type.size(); }
};

struct GalaxyData {
    std::vector<double> velocity_km_s;  // 82 galaxies
};

namespace dataset {

// Directory the loaders read from by default (set at configure time,
// overridable from the CLI).
std::filesystem::path default_dir();

std::uint64_t fnv1a_file(const std::filesystem::path& path);

RadiataData load_radiata(const std::filesystem::path& dir = default_dir());
PimaData load_pima(const std::filesystem::path& dir = default_dir());
GalaxyData load_galaxy(const std::filesystem::path& dir = default_dir());

}  // namespace dataset
}  // namespace evid
