#include "wrtkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace wrtkit {

double rel_error(const std::vector<double>& noisy, const std::vector<double>& reference) {
    if (noisy.size() != reference.size()) throw DataError("rel_error: shape mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        num += sqr(noisy[i] - reference[i]);
        den += sqr(reference[i]);
    }
    if (den <= 0.0) throw DataError("rel_error: reference image is identically zero");
    return std::sqrt(num / den);
}

std::vector<double> volume_slice_z(const VolumeGrid& vol, int iz) {
    const int n = vol.grid.n;
    if (iz < 0 || iz >= n) throw DataError("volume_slice_z: index out of range");
    auto begin = vol.values.begin() + (std::size_t)n * n * iz;
    return std::vector<double>(begin, begin + (std::size_t)n * n);
}

namespace {

std::string cell_key(const ErrorRecord& r) {
    std::ostringstream os;
    os << r.activity << "/" << r.attenuation << "/n=" << r.n_level;
    return os.str();
}

}  // namespace

std::string render_table(const std::vector<ErrorRecord>& records) {
    // columns: (activity, attenuation, n); rows: method; multiple seeds are
    // averaged for display, per-seed values live in the flat rows
    std::vector<std::string> cols, methods;
    std::map<std::string, std::map<std::string, std::pair<double, int>>> agg;
    for (const auto& r : records) {
        std::string c = cell_key(r);
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
        auto& cell = agg[r.method][c];
        cell.first += r.eps;
        cell.second += 1;
    }
    std::ostringstream os;
    os << "relative reconstruction errors (mean over seeds)\n";
    int w = 14;
    os << std::string(10, ' ');
    for (const auto& c : cols) {
        os << "|";
        std::string t = c;
        if ((int)t.size() > w - 1) t = t.substr(0, w - 1);
        os << t << std::string(w - 1 - t.size(), ' ');
    }
    os << "\n";
    for (const auto& m : methods) {
        std::string name = m;
        name.resize(10, ' ');
        os << name;
        for (const auto& c : cols) {
            os << "|";
            auto it = agg[m].find(c);
            char buf[32];
            if (it == agg[m].end() || it->second.second == 0)
                std::snprintf(buf, sizeof buf, "%*s", w - 1, "-");
            else
                std::snprintf(buf, sizeof buf, "%*.4f", w - 1, it->second.first / it->second.second);
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

std::string render_rows(const std::vector<ErrorRecord>& records) {
    std::ostringstream os;
    os << "activity,attenuation,n_level,method,seed,eps\n";
    for (const auto& r : records)
        os << r.activity << "," << r.attenuation << "," << r.n_level << "," << r.method << ","
           << r.seed << "," << r.eps << "\n";
    return os.str();
}

}  // namespace wrtkit
