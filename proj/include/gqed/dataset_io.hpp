#pragma once

#include <iosfwd>
#include <string>

#include "gqed/sweeps.hpp"

namespace gqed::io {

enum class Format { Csv, Json };

/// 17 significant digits: doubles survive a write/read round trip exactly.
std::string format_double(double value);

std::string to_csv(const sweeps::SweepDataset& dataset);
std::string to_json(const sweeps::SweepDataset& dataset);

/// Writes to the given path, or to stdout when the path is empty.
void write_dataset(const sweeps::SweepDataset& dataset, const std::string& path, Format format);

sweeps::SweepDataset read_csv(std::istream& in);

}  // namespace gqed::io
