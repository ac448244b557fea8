#include "parma/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace parma::io {

using nlohmann::json;

namespace {

const std::set<std::string> kModelKeys = {"schema_version", "period", "ar_order", "ma_order",
                                          "drift",          "ar",     "ma",       "sigma2"};

int read_int(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<double> read_row(const json& v, const std::string& field) {
    if (!v.is_array()) throw ParseError("field '" + field + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw ParseError("field '" + field + "[" + std::to_string(i) + "]' must be a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<std::vector<double>> read_rows(const json& doc, const char* key, int order) {
    if (!doc.contains(key)) {
        if (order == 0) return {};
        throw ParseError(std::string("missing field '") + key + "'");
    }
    const json& v = doc.at(key);
    if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t m = 0; m < v.size(); ++m) {
        rows.push_back(read_row(v[m], std::string(key) + "[" + std::to_string(m) + "]"));
    }
    return rows;
}

} // namespace

ModelSpec parse_model(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model file must hold a JSON object");
    for (const auto& item : doc.items()) {
        if (!kModelKeys.count(item.key())) throw ParseError("unknown field '" + item.key() + "'");
    }
    const int version = read_int(doc, "schema_version");
    if (version != kModelSchemaVersion) {
        throw ParseError("field 'schema_version': unsupported version " + std::to_string(version));
    }
    ModelSpec spec;
    spec.l = read_int(doc, "period");
    spec.p = read_int(doc, "ar_order");
    spec.q = read_int(doc, "ma_order");
    if (!doc.contains("drift")) throw ParseError("missing field 'drift'");
    if (!doc.contains("sigma2")) throw ParseError("missing field 'sigma2'");
    spec.drift = read_row(doc.at("drift"), "drift");
    spec.sigma2 = read_row(doc.at("sigma2"), "sigma2");
    spec.ar = read_rows(doc, "ar", spec.p);
    spec.ma = read_rows(doc, "ma", spec.q);
    return spec;
}

ModelSpec read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    return parse_model(in);
}

void write_model(std::ostream& os, const ModelSpec& spec) {
    json doc = json::object();
    doc["schema_version"] = kModelSchemaVersion;
    doc["period"] = spec.l;
    doc["ar_order"] = spec.p;
    doc["ma_order"] = spec.q;
    doc["drift"] = spec.drift;
    doc["ar"] = spec.ar;
    doc["ma"] = spec.ma;
    doc["sigma2"] = spec.sigma2;
    os << doc.dump(2) << "\n";
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    return out;
}

template <class T>
T parse_cell(const std::string& cell, const char* column, std::size_t line_no) {
    std::istringstream ss(cell);
    T v{};
    ss >> v;
    if (ss.fail() || !ss.eof()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad '" + column + "' value '" + cell +
                         "'");
    }
    return v;
}

} // namespace

Series parse_series(std::istream& in, const SeasonClock& clock) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("series file is empty");
    ++line_no;
    const auto header = split_csv(line);
    Series out;
    if (header == std::vector<std::string>{"time", "season", "value", "eps"}) {
        out.has_eps = true;
    } else if (header != std::vector<std::string>{"time", "season", "value"}) {
        throw ParseError("series header must be 'time,season,value' or 'time,season,value,eps'");
    }
    const std::size_t columns = out.has_eps ? 4 : 3;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() != columns) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(columns) + " columns");
        }
        SeriesPoint pt;
        pt.time = parse_cell<long long>(cells[0], "time", line_no);
        pt.season = parse_cell<int>(cells[1], "season", line_no);
        pt.value = parse_cell<double>(cells[2], "value", line_no);
        if (out.has_eps) pt.eps = parse_cell<double>(cells[3], "eps", line_no);
        if (pt.season != clock.season(pt.time)) {
            throw ParseError("line " + std::to_string(line_no) + ": field 'season' is " +
                             std::to_string(pt.season) + " but time " + std::to_string(pt.time) +
                             " falls in season " + std::to_string(clock.season(pt.time)));
        }
        if (!out.points.empty() && pt.time != out.points.back().time + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": field 'time' is not consecutive");
        }
        out.points.push_back(pt);
    }
    return out;
}

Series read_series_file(const std::string& path, const SeasonClock& clock) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open series file '" + path + "'");
    return parse_series(in, clock);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace parma::io
