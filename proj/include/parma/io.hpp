#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "parma/model.hpp"

namespace parma::io {

/// Malformed input file; the message names the offending field or line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kModelSchemaVersion = 1;

/// Model document (JSON):
///
///   {
///     "schema_version": 1,
///     "period": l, "ar_order": p, "ma_order": q,
///     "drift":  [phi_{0,1}, ..., phi_{0,l}],
///     "ar":     [[phi_{1,1}, ..., phi_{1,l}], ..., [phi_{p,1}, ..., phi_{p,l}]],
///     "ma":     [[theta_{1,1}, ..., theta_{1,l}], ...],
///     "sigma2": [sigma2_1, ..., sigma2_l]
///   }
///
/// One row per lag, one column per season. "ar" and "ma" may be omitted when
/// the order is 0. Unknown keys are rejected. Shapes are not checked here;
/// that is validate()'s job.
ModelSpec parse_model(std::istream& in);
ModelSpec read_model_file(const std::string& path);
void write_model(std::ostream& os, const ModelSpec& spec);

/// A row of a series file "time,season,value[,eps]".
struct SeriesPoint {
    Time time = 0;
    int season = 0;
    double value = 0.0;
    double eps = 0.0;
};

struct Series {
    std::vector<SeriesPoint> points;
    bool has_eps = false;
};

/// Parses a series file and checks that times are consecutive and every season
/// column agrees with the clock.
Series parse_series(std::istream& in, const SeasonClock& clock);
Series read_series_file(const std::string& path, const SeasonClock& clock);

/// Fixed 12 significant digits.
std::string format_number(double v);

} // namespace parma::io
