#include "bohmlab/io.hpp"

#include <cstdio>
#include <fstream>

#include "bohmlab/errors.hpp"

namespace bohmlab::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("io: cannot open '" + path.string() + "' for writing");
    return out;
}

// 17 significant digits round-trip a double exactly.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const ComplexField& psi, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "x,re,im\n";
    for (std::size_t i = 0; i < psi.grid.n; ++i)
        out << fmt(psi.grid.x(i)) << ',' << fmt(psi.values[i].real()) << ','
            << fmt(psi.values[i].imag()) << '\n';
}

void write_csv(const PolarField& polar, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "x,A,S\n";
    for (std::size_t i = 0; i < polar.grid.n; ++i)
        out << fmt(polar.grid.x(i)) << ',' << fmt(polar.amplitude[i]) << ','
            << fmt(polar.phase[i]) << '\n';
}

void write_csv(const BohmPotentialField& vb, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "x,V_B,masked\n";
    for (std::size_t i = 0; i < vb.grid.n; ++i)
        out << fmt(vb.grid.x(i)) << ',' << fmt(vb.values[i]) << ','
            << (vb.mask[i] ? 1 : 0) << '\n';
}

void write_series_csv(const std::vector<ComplexField>& series,
                      const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,x,re,im\n";
    for (const auto& psi : series)
        for (std::size_t i = 0; i < psi.grid.n; ++i)
            out << fmt(psi.time) << ',' << fmt(psi.grid.x(i)) << ','
                << fmt(psi.values[i].real()) << ',' << fmt(psi.values[i].imag()) << '\n';
}

nlohmann::json to_json(const ResidualReport& report) {
    return nlohmann::json{
        {"l_inf", report.l_inf},
        {"l2", report.l2},
        {"masked_fraction", report.masked_fraction},
        {"grid",
         {{"x_min", report.grid.x_min},
          {"x_max", report.grid.x_max},
          {"n", report.grid.n},
          {"periodic", report.grid.periodic}}},
        {"time", report.time}};
}

nlohmann::json to_json(const std::vector<evolve::Observables>& obs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : obs)
        arr.push_back({{"t", o.t},
                       {"norm", o.norm},
                       {"energy", o.energy},
                       {"x_peak", o.x_peak},
                       {"x_mean", o.x_mean}});
    return arr;
}

} // namespace bohmlab::io
