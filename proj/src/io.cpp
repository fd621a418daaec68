#include "symplab/io.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "symplab/errors.hpp"

namespace symplab::io {

namespace fs = std::filesystem;

namespace {

std::uint64_t to_little(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i)
            r |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
        bits = r;
    }
    return bits;
}

double from_little(std::uint64_t bits) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i)
            r |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
        bits = r;
    }
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

fs::path temp_name(const fs::path& p) {
    fs::path t = p;
    t += ".tmp";
    return t;
}

void commit(const fs::path& tmp, const fs::path& p) {
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move " + tmp.string() + " to " + p.string() +
                          ": " + ec.message());
    }
}

void write_blocks(const fs::path& p, const GridSpec& g,
                  std::initializer_list<const std::vector<double>*> comps) {
    const fs::path tmp = temp_name(p);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out << "SFLD2 " << g.nx << " " << g.ny << " " << comps.size() << "\n";
        for (const std::vector<double>* c : comps) {
            for (double v : *c) {
                const std::uint64_t bits = to_little(v);
                out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
            }
        }
        if (!out) throw ConfigError("short write to " + tmp.string());
    }
    commit(tmp, p);
}

GridSpec read_header(std::ifstream& in, const fs::path& p, int want_comp) {
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("cannot read header of " + p.string());
    std::istringstream hs(line);
    std::string magic;
    int nx = 0, ny = 0, nc = 0;
    hs >> magic >> nx >> ny >> nc;
    if (!hs || magic != "SFLD2")
        throw ConfigError(p.string() + " is not an SFLD2 file");
    if (nc != want_comp)
        throw ConfigError(p.string() + " holds " + std::to_string(nc) +
                          " components, expected " +
                          std::to_string(want_comp));
    return GridSpec(nx, ny);
}

void read_block(std::ifstream& in, const fs::path& p,
                std::vector<double>& dst) {
    for (double& v : dst) {
        std::uint64_t bits;
        in.read(reinterpret_cast<char*>(&bits), sizeof bits);
        if (!in) throw ConfigError("truncated data in " + p.string());
        v = from_little(bits);
    }
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sample_name(const char* stem, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%03d.sfld2", stem, k);
    return buf;
}

} // namespace

void write_field(const fs::path& p, const ScalarField& f) {
    write_blocks(p, f.grid, {&f.v});
}

void write_field(const fs::path& p, const VectorField& f) {
    write_blocks(p, f.grid, {&f.vx, &f.vy});
}

void write_field(const fs::path& p, const OneForm& f) {
    write_blocks(p, f.grid, {&f.cx, &f.cy});
}

void write_field(const fs::path& p, const DisplacementField& f) {
    write_blocks(p, f.grid, {&f.dx, &f.dy});
}

ScalarField read_scalar(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    ScalarField f(read_header(in, p, 1));
    read_block(in, p, f.v);
    return f;
}

VectorField read_vector(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    VectorField f(read_header(in, p, 2));
    read_block(in, p, f.vx);
    read_block(in, p, f.vy);
    return f;
}

OneForm read_oneform(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    OneForm f(read_header(in, p, 2));
    read_block(in, p, f.cx);
    read_block(in, p, f.cy);
    return f;
}

DisplacementField read_displacement(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    DisplacementField f(read_header(in, p, 2));
    read_block(in, p, f.dx);
    read_block(in, p, f.dy);
    return f;
}

namespace {

template <class Emit>
void csv_body(const fs::path& p, const GridSpec& g, const char* header,
              Emit emit) {
    const fs::path tmp = temp_name(p);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out << header << "\n";
        out.precision(17);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                out << g.x(i) << "," << g.y(j);
                emit(out, g.idx(i, j));
                out << "\n";
            }
        if (!out) throw ConfigError("short write to " + tmp.string());
    }
    commit(tmp, p);
}

} // namespace

void write_csv(const fs::path& p, const ScalarField& f) {
    csv_body(p, f.grid, "x,y,value",
             [&](std::ofstream& out, std::size_t n) { out << "," << f.v[n]; });
}

void write_csv(const fs::path& p, const VectorField& f) {
    csv_body(p, f.grid, "x,y,vx,vy", [&](std::ofstream& out, std::size_t n) {
        out << "," << f.vx[n] << "," << f.vy[n];
    });
}

void write_csv_table(const fs::path& p, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    const fs::path tmp = temp_name(p);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out.precision(17);
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << row[i];
            out << "\n";
        }
        if (!out) throw ConfigError("short write to " + tmp.string());
    }
    commit(tmp, p);
}

void write_json(const fs::path& p, nlohmann::json j) {
    j["timestamp"] = utc_now();
    const fs::path tmp = temp_name(p);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string());
        out << j.dump(2) << "\n";
        if (!out) throw ConfigError("short write to " + tmp.string());
    }
    commit(tmp, p);
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open " + p.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse " + p.string() + ": " + e.what());
    }
    return j;
}

void write_isotopy(const fs::path& dir, const Isotopy& iso) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create " + dir.string());
    const GridSpec& g = iso.generator[0].grid;
    for (int k = 0; k < iso.nt(); ++k) {
        write_field(dir / sample_name("gen", k), iso.generator[k]);
        write_field(dir / sample_name("map", k), iso.flow[k]);
    }
    nlohmann::json m;
    m["n_t"] = iso.nt();
    m["substeps"] = iso.substeps;
    m["consistency_residual"] = iso.consistency_residual;
    m["grid"] = {{"nx", g.nx}, {"ny", g.ny}};
    write_json(dir / "manifest.json", m);
}

Isotopy read_isotopy(const fs::path& dir) {
    const nlohmann::json m = read_json(dir / "manifest.json");
    Isotopy iso;
    const int nt = m.at("n_t").get<int>();
    iso.substeps = m.at("substeps").get<int>();
    iso.consistency_residual = m.at("consistency_residual").get<double>();
    for (int k = 0; k < nt; ++k) {
        iso.generator.samples.push_back(
            read_vector(dir / sample_name("gen", k)));
        iso.flow.samples.push_back(
            read_displacement(dir / sample_name("map", k)));
    }
    return iso;
}

} // namespace symplab::io
