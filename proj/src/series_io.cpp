#include "mfs/series_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mfs {

using nlohmann::json;

std::string to_string(SeriesFile::Kind kind) {
    switch (kind) {
    case SeriesFile::Kind::Moments:
        return "moments";
    case SeriesFile::Kind::Cumulants:
        return "cumulants";
    case SeriesFile::Kind::STransform:
        return "s-transform";
    case SeriesFile::Kind::Generic:
        return "generic";
    }
    return "generic";
}

SeriesFile::Kind kind_from_string(const std::string &s) {
    if (s == "moments")
        return SeriesFile::Kind::Moments;
    if (s == "cumulants")
        return SeriesFile::Kind::Cumulants;
    if (s == "s-transform")
        return SeriesFile::Kind::STransform;
    if (s == "generic")
        return SeriesFile::Kind::Generic;
    throw ParseError("unknown series kind \"" + s + "\"");
}

std::string serialize_series(const SeriesFile &file) {
    const auto &series = file.series;
    const int D = series.algebra().basis_size();
    json degrees = json::array();
    for (int n = 0; n <= series.order(); ++n) {
        const auto &comp = series.component(n);
        json rows = json::array();
        for (int o = 0; o < D; ++o) {
            json row = json::array();
            const auto r = comp.row(o);
            for (Eigen::Index u = 0; u < r.size(); ++u)
                row.push_back(json::array({r(u).real(), r(u).imag()}));
            rows.push_back(std::move(row));
        }
        degrees.push_back(std::move(rows));
    }
    json j{{"dim", series.algebra().dim()},
           {"order", series.order()},
           {"kind", to_string(file.kind)},
           {"series", std::move(degrees)}};
    return j.dump(2) + "\n";
}

void write_series_file(const std::string &path, const SeriesFile &file) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open \"" + path + "\" for writing");
    out << serialize_series(file);
    if (!out)
        throw Error("failed writing \"" + path + "\"");
}

namespace {

double number_at(const json &v, const char *what) {
    if (!v.is_number())
        throw ParseError(std::string(what) + " must be a number");
    return v.get<double>();
}

} // namespace

SeriesFile parse_series(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("series file must be a JSON object");
    for (const char *key : {"dim", "order", "kind", "series"})
        if (!j.contains(key))
            throw ParseError(std::string("missing field \"") + key + "\"");

    if (!j["dim"].is_number_integer() || !j["order"].is_number_integer())
        throw ParseError("\"dim\" and \"order\" must be integers");
    const int dim = j["dim"].get<int>();
    const int order = j["order"].get<int>();
    if (dim < 1)
        throw ParseError("\"dim\" must be >= 1");
    if (order < 0)
        throw ParseError("\"order\" must be >= 0");
    if (!j["kind"].is_string())
        throw ParseError("\"kind\" must be a string");
    const auto kind = kind_from_string(j["kind"].get<std::string>());

    const Algebra<std::complex<double>> alg(dim);
    const int D = alg.basis_size();
    SeriesFile file{kind, MultiSeries<std::complex<double>>(alg, order)};

    const json &degrees = j["series"];
    if (!degrees.is_array() || static_cast<int>(degrees.size()) != order + 1)
        throw ParseError("\"series\" must be an array of order+1 degree tensors");
    for (int n = 0; n <= order; ++n) {
        auto &comp = file.series.component(n);
        const json &rows = degrees[static_cast<std::size_t>(n)];
        if (!rows.is_array() || static_cast<int>(rows.size()) != D)
            throw ParseError("degree " + std::to_string(n) + " must have " + std::to_string(D) +
                             " rows");
        for (int o = 0; o < D; ++o) {
            const json &row = rows[static_cast<std::size_t>(o)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != comp.arg_space())
                throw ParseError("degree " + std::to_string(n) + " row " + std::to_string(o) +
                                 " must have " + std::to_string(comp.arg_space()) + " entries");
            for (Eigen::Index u = 0; u < comp.arg_space(); ++u) {
                const json &entry = row[static_cast<std::size_t>(u)];
                if (!entry.is_array() || entry.size() != 2)
                    throw ParseError("coefficients must be [re, im] pairs");
                comp.coef(o, u) = {number_at(entry[0], "re"), number_at(entry[1], "im")};
            }
        }
    }
    return file;
}

SeriesFile read_series_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open \"" + path + "\" for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series(buf.str());
}

} // namespace mfs
