#include "evidencer/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace evid::dataset {

namespace {

constexpr std::uint64_t kRadiataChecksum = 0xf4c72b216a413450ULL;
constexpr std::uint64_t kPimaChecksum = 0xe365004861dd2656ULL;
constexpr std::uint64_t kGalaxyChecksum = 0x32d82e79ac673c29ULL;

std::vector<std::vector<double>> load_csv(const std::filesystem::path& path,
                                          const std::string& expected_header,
                                          std::size_t expected_rows,
                                          std::uint64_t expected_checksum) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("dataset file missing: " + path.string());
    if (fnv1a_file(path) != expected_checksum)
        throw std::runtime_error("dataset checksum mismatch: " + path.string());

    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dataset file: " + path.string());
    if (line != expected_header)
        throw std::runtime_error("unexpected header in " + path.string() + ": " + line);

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || p != cell.data() + cell.size())
                throw std::runtime_error("bad numeric cell '" + cell + "' in " + path.string());
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != expected_rows)
        throw std::runtime_error(path.string() + ": expected " + std::to_string(expected_rows) +
                                 " rows, found " + std::to_string(rows.size()));
    return rows;
}

}  // namespace

std::filesystem::path default_dir() { return EVIDENCER_DATA_DIR; }

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

RadiataData load_radiata(const std::filesystem::path& dir) {
    auto rows = load_csv(dir / "radiata.csv", "y,x,z", 42, kRadiataChecksum);
    RadiataData d;
    for (const auto& r : rows) {
        d.y.push_back(r[0]);
        d.x.push_back(r[1]);
        d.z.push_back(r[2]);
    }
    return d;
}

PimaData load_pima(const std::filesystem::path& dir) {
    auto rows = load_csv(dir / "pima.csv", "npreg,glu,bp,skin,bmi,ped,age,type", 532, kPimaChecksum);
    PimaData d;
    for (const auto& r : rows) {
        d.npreg.push_back(r[0]);
        d.glu.push_back(r[1]);
        d.bp.push_back(r[2]);
        d.skin.push_back(r[3]);
        d.bmi.push_back(r[4]);
        d.ped.push_back(r[5]);
        d.age.push_back(r[6]);
        d.type.push_back(static_cast<int>(r[7]));
    }
    return d;
}

GalaxyData load_galaxy(const std::filesystem::path& dir) {
    auto rows = load_csv(dir / "galaxy.csv", "velocity_km_s", 82, kGalaxyChecksum);
    GalaxyData d;
    for (const auto& r : rows) d.velocity_km_s.push_back(r[0]);
    return d;
}

}  // namespace evid::dataset
