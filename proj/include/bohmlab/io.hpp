#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "bohmlab/bohm.hpp"
#include "bohmlab/evolve.hpp"
#include "bohmlab/field.hpp"

namespace bohmlab::io {

/// CSV schema `x,re,im`, one header line, 17 significant digits.
void write_csv(const ComplexField& psi, const std::filesystem::path& path);

/// CSV schema `x,A,S`.
void write_csv(const PolarField& polar, const std::filesystem::path& path);

/// CSV schema `x,V_B,masked`.
void write_csv(const BohmPotentialField& vb, const std::filesystem::path& path);

/// Long-format snapshot series, schema `t,x,re,im`.
void write_series_csv(const std::vector<ComplexField>& series,
                      const std::filesystem::path& path);

/// Residual report as JSON: keys l_inf, l2, masked_fraction, grid, time.
nlohmann::json to_json(const ResidualReport& report);

/// Observables as a JSON array of {t, norm, energy, x_peak, x_mean}.
nlohmann::json to_json(const std::vector<evolve::Observables>& obs);

} // namespace bohmlab::io
