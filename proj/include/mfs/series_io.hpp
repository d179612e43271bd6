#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "mfs/series.hpp"

namespace mfs {

/// On-disk form of a truncated series. Schema (JSON):
///   {
///     "dim":   d,
///     "order": N,
///     "kind":  "moments" | "cumulants" | "s-transform" | "generic",
///     "series": [ degree_0, ..., degree_N ]
///   }
/// where degree_n is an array of D = d*d rows (output basis index o, basis =
/// matrix units ordered i*d + j) and each row is an array of D^n entries
/// (row-major over the argument basis indices), every entry a [re, im] pair.
struct SeriesFile {
    enum class Kind { Moments, Cumulants, STransform, Generic };

    Kind kind = Kind::Generic;
    MultiSeries<std::complex<double>> series;
};

std::string to_string(SeriesFile::Kind kind);
SeriesFile::Kind kind_from_string(const std::string &s);

/// Serialize with round-trip-exact number formatting.
std::string serialize_series(const SeriesFile &file);
void write_series_file(const std::string &path, const SeriesFile &file);

/// Throws ParseError on malformed input or shape inconsistencies.
SeriesFile parse_series(const std::string &text);
SeriesFile read_series_file(const std::string &path);

} // namespace mfs
