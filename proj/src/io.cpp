#include "wrtkit/io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little, "payloads are little-endian");

namespace wrtkit {

namespace {

constexpr const char* kMagic = "wrtkit-v1";

std::size_t dims_product(const std::vector<int>& dims) {
    std::size_t p = 1;
    for (int d : dims) {
        if (d <= 0) throw DataError("container: non-positive dimension");
        p *= (std::size_t)d;
    }
    return p;
}

std::string payload_name(const std::string& path) {
    return std::filesystem::path(path).filename().string() + ".bin";
}

}  // namespace

void write_container(const std::string& path, const Container& c) {
    if (c.kind != "volume" && c.kind != "raysino" && c.kind != "planesino" && c.kind != "counts" &&
        c.kind != "slice")
        throw DataError("container: unknown kind '" + c.kind + "'");
    std::size_t count = dims_product(c.dims);
    std::ostringstream head;
    head << "magic = " << kMagic << "\n";
    head << "kind = " << c.kind << "\n";
    head << "dtype = " << c.dtype << "\n";
    head << "dims =";
    for (int d : c.dims) head << " " << d;
    head << "\n";
    head.precision(17);
    head << "r = " << c.r << "\n";
    head << "payload = " << payload_name(path) << "\n";
    for (const auto& [k, v] : c.extra) head << k << " = " << v << "\n";

    std::ofstream hf(path, std::ios::binary);
    if (!hf) throw DataError("container: cannot write " + path);
    hf << head.str();
    hf.close();

    std::ofstream pf(path + ".bin", std::ios::binary);
    if (!pf) throw DataError("container: cannot write " + path + ".bin");
    if (c.dtype == "f64") {
        if (c.f64.size() != count) throw DataError("container: payload size does not match dims");
        pf.write(reinterpret_cast<const char*>(c.f64.data()), (std::streamsize)(count * 8));
    } else if (c.dtype == "u32") {
        if (c.u32.size() != count) throw DataError("container: payload size does not match dims");
        pf.write(reinterpret_cast<const char*>(c.u32.data()), (std::streamsize)(count * 4));
    } else {
        throw DataError("container: unknown dtype '" + c.dtype + "'");
    }
}

Container read_container(const std::string& path) {
    std::ifstream hf(path, std::ios::binary);
    if (!hf) throw DataError("container: cannot open " + path);
    Container c;
    std::string payload;
    std::string line;
    bool magic_seen = false;
    while (std::getline(hf, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw DataError("container: malformed header line: " + line);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "magic") {
            if (val != kMagic) throw DataError("container: bad magic '" + val + "'");
            magic_seen = true;
        } else if (key == "kind") {
            c.kind = val;
        } else if (key == "dtype") {
            c.dtype = val;
        } else if (key == "dims") {
            std::istringstream is(val);
            int d;
            while (is >> d) c.dims.push_back(d);
        } else if (key == "r") {
            c.r = std::stod(val);
        } else if (key == "payload") {
            payload = val;
        } else {
            c.extra[key] = val;
        }
    }
    if (!magic_seen) throw DataError("container: missing magic in " + path);
    if (c.dims.empty()) throw DataError("container: missing dims in " + path);
    std::size_t count = dims_product(c.dims);

    std::filesystem::path pp = std::filesystem::path(path).parent_path() / payload;
    std::ifstream pf(pp, std::ios::binary);
    if (!pf) throw DataError("container: cannot open payload " + pp.string());
    if (c.dtype == "f64") {
        c.f64.resize(count);
        pf.read(reinterpret_cast<char*>(c.f64.data()), (std::streamsize)(count * 8));
    } else if (c.dtype == "u32") {
        c.u32.resize(count);
        pf.read(reinterpret_cast<char*>(c.u32.data()), (std::streamsize)(count * 4));
    } else {
        throw DataError("container: unknown dtype '" + c.dtype + "'");
    }
    if ((std::size_t)pf.gcount() != count * (c.dtype == "f64" ? 8 : 4))
        throw DataError("container: payload shorter than dims require");
    return c;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Container to_container(const VolumeGrid& vol) {
    Container c;
    c.kind = "volume";
    c.dtype = "f64";
    c.dims = {vol.grid.n, vol.grid.n, vol.grid.n};
    c.r = vol.grid.r;
    c.f64 = vol.values;
    return c;
}

Container to_container(const RaySinogram& sino) {
    Container c;
    c.kind = "raysino";
    c.dtype = "f64";
    c.dims = {sino.grid.nz, sino.grid.nphi, sino.grid.ns};
    c.r = sino.grid.r;
    c.f64 = sino.values;
    return c;
}

Container to_container(const PlaneSinogram& sino) {
    Container c;
    c.kind = "planesino";
    c.dtype = "f64";
    c.dims = {sino.grid.npsi, sino.grid.nphi, sino.grid.ns};
    c.r = sino.grid.r;
    c.f64 = sino.values;
    return c;
}

Container to_container(const CountSinogram& counts) {
    Container c;
    c.kind = "counts";
    c.dtype = "u32";
    c.dims = {counts.grid.nz, counts.grid.nphi, counts.grid.ns};
    c.r = counts.grid.r;
    c.u32 = counts.values;
    c.extra["c_n"] = fmt(counts.c_n);
    c.extra["seed"] = std::to_string(counts.seed);
    return c;
}

Container to_container(const SliceImage& img) {
    Container c;
    c.kind = "slice";
    c.dtype = "f64";
    c.dims = {img.grid.n, img.grid.n};
    c.r = img.grid.r;
    c.f64 = img.values;
    return c;
}

VolumeGrid volume_from(const Container& c) {
    if (c.kind != "volume" || c.dims.size() != 3 || c.dims[0] != c.dims[1] || c.dims[1] != c.dims[2])
        throw DataError("expected a cubic volume container");
    VolumeGrid vol(CartesianGrid(c.dims[0], c.r));
    vol.values = c.f64;
    return vol;
}

RaySinogram raysino_from(const Container& c) {
    if (c.kind != "raysino" || c.dims.size() != 3) throw DataError("expected a raysino container");
    RaySinogram s(RayGrid(c.dims[0], c.dims[2], c.dims[1], c.r));
    s.values = c.f64;
    return s;
}

PlaneSinogram planesino_from(const Container& c) {
    if (c.kind != "planesino" || c.dims.size() != 3) throw DataError("expected a planesino container");
    PlaneSinogram s(PlaneGrid(c.dims[2], c.dims[1], c.dims[0], c.r));
    s.values = c.f64;
    return s;
}

CountSinogram counts_from(const Container& c) {
    if (c.kind != "counts" || c.dims.size() != 3) throw DataError("expected a counts container");
    CountSinogram s(RayGrid(c.dims[0], c.dims[2], c.dims[1], c.r));
    s.values = c.u32;
    auto it = c.extra.find("c_n");
    if (it != c.extra.end()) s.c_n = std::stod(it->second);
    it = c.extra.find("seed");
    if (it != c.extra.end()) s.seed = std::stoull(it->second);
    return s;
}

SliceImage slice_from(const Container& c) {
    if (c.kind != "slice" || c.dims.size() != 2 || c.dims[0] != c.dims[1])
        throw DataError("expected a square slice container");
    SliceImage img(CartesianGrid(c.dims[0], c.r));
    img.values = c.f64;
    return img;
}

void write_pgm16(const std::string& path, const double* data, int width, int height) {
    double lo = data[0], hi = data[0];
    for (std::size_t i = 0; i < (std::size_t)width * height; ++i) {
        lo = std::min(lo, data[i]);
        hi = std::max(hi, data[i]);
    }
    double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    f << "P5\n" << width << " " << height << "\n65535\n";
    for (int row = 0; row < height; ++row)
        for (int col = 0; col < width; ++col) {
            // image rows top to bottom = decreasing y
            double v = data[(std::size_t)col + (std::size_t)width * (height - 1 - row)];
            std::uint16_t q = (std::uint16_t)std::lround((v - lo) * scale);
            unsigned char bytes[2] = {(unsigned char)(q >> 8), (unsigned char)(q & 0xFF)};
            f.write(reinterpret_cast<const char*>(bytes), 2);
        }
}

std::string dump_phantom(const PhantomSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    os << "scale_cm_per_unit = " << spec.scale_cm_per_unit << "\n";
    os << "attenuation = " << (spec.attenuation ? "true" : "false") << "\n";
    for (const auto& prim : spec.primitives) {
        if (std::holds_alternative<Ellipsoid>(prim)) {
            const auto& e = std::get<Ellipsoid>(prim);
            os << "ellipsoid " << e.center[0] << " " << e.center[1] << " " << e.center[2] << " "
               << e.semi_axes[0] << " " << e.semi_axes[1] << " " << e.semi_axes[2] << " "
               << e.rot_z * 180.0 / kPi << " " << e.value << "\n";
        } else {
            const auto& s = std::get<SphericalShell>(prim);
            os << "shell " << s.center[0] << " " << s.center[1] << " " << s.center[2] << " "
               << s.r_inner << " " << s.r_outer << " " << s.value << "\n";
        }
    }
    return os.str();
}

PhantomSpec parse_phantom(const std::string& text) {
    PhantomSpec spec;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "scale_cm_per_unit") {
            std::string eq;
            ls >> eq >> spec.scale_cm_per_unit;
        } else if (head == "attenuation") {
            std::string eq, v;
            ls >> eq >> v;
            spec.attenuation = (v == "true" || v == "1");
        } else if (head == "ellipsoid") {
            Ellipsoid e;
            double rot_deg;
            if (!(ls >> e.center[0] >> e.center[1] >> e.center[2] >> e.semi_axes[0] >>
                  e.semi_axes[1] >> e.semi_axes[2] >> rot_deg >> e.value))
                throw DataError("phantom spec: malformed ellipsoid line: " + line);
            e.rot_z = rot_deg * kPi / 180.0;
            spec.primitives.push_back(e);
        } else if (head == "shell") {
            SphericalShell s;
            if (!(ls >> s.center[0] >> s.center[1] >> s.center[2] >> s.r_inner >> s.r_outer >>
                  s.value))
                throw DataError("phantom spec: malformed shell line: " + line);
            spec.primitives.push_back(s);
        } else {
            throw DataError("phantom spec: unknown directive '" + head + "'");
        }
    }
    if (spec.primitives.empty()) throw DataError("phantom spec: no primitives");
    return spec;
}

PhantomSpec load_phantom_arg(const std::string& name_or_path) {
    if (name_or_path == "a1" || name_or_path == "a2" || name_or_path == "f1" || name_or_path == "f2")
        return phantom_by_name(name_or_path);
    std::ifstream f(name_or_path);
    if (!f) throw DataError("phantom: no such built-in name or file: " + name_or_path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_phantom(os.str());
}

}  // namespace wrtkit
