#pragma once

#include <filesystem>
#include <iosfwd>

#include "cachemodel/profiler.hpp"

namespace cachemodel {

/// Structured text form of a CoreProfile: a small header, then one section
/// per metric (histograms as `distance count`, tables as `r s count`, address
/// distributions as `hexaddr count`). Serialization is canonical, so
/// write(read(x)) is byte-identical to write(x).
void write_profile(const CoreProfile& p, std::ostream& out);
void write_profile(const CoreProfile& p, const std::filesystem::path& path);

CoreProfile read_profile(std::istream& in);
CoreProfile read_profile(const std::filesystem::path& path);

/// Common histogram text format used by model and simulator outputs.
void write_histogram(const Histogram1D& h, std::ostream& out);
Histogram1D read_histogram(std::istream& in);
void write_histogram(const Histogram1D& h, const std::filesystem::path& path);
Histogram1D read_histogram(const std::filesystem::path& path);

}  // namespace cachemodel
