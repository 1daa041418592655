#include "qlops/error_rates.hpp"
#include "qlops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qlops::rates {

double p0_from_pl(double p_l, long k, int d)
{
    if (k < 1 || d < 1)
        throw DomainError("p0_from_pl: k and d must be at least 1");
    if (!(p_l >= 0.0) || p_l >= 1.0)
        throw DomainError("p0_from_pl: p_L must lie in [0, 1)");
    // expm1/log1p keep precision for the tiny rates this usually sees.
    return -std::expm1(std::log1p(-p_l) / (static_cast<double>(k) * d));
}

double pl_from_p0(double p0, long k, int d)
{
    if (k < 1 || d < 1)
        throw DomainError("pl_from_p0: k and d must be at least 1");
    if (!(p0 >= 0.0) || p0 >= 1.0)
        throw DomainError("pl_from_p0: p0 must lie in [0, 1)");
    return -std::expm1(static_cast<double>(k) * d * std::log1p(-p0));
}

FitResult fit_log_linear(const std::vector<FitSample>& samples)
{
    if (samples.size() < 2)
        throw DomainError("fit_log_linear: need at least two samples");
    std::set<int> distances;
    for (const FitSample& s : samples) {
        if (!(s.p0 > 0.0 && s.p0 < 1.0))
            throw DomainError("fit_log_linear: p0 must lie in (0, 1)");
        distances.insert(s.d);
    }
    if (distances.size() < 2)
        throw DomainError("fit_log_linear: all samples share one distance");

    double mean_d = 0.0;
    double mean_y = 0.0;
    for (const FitSample& s : samples) {
        mean_d += s.d;
        mean_y += std::log(s.p0);
    }
    mean_d /= static_cast<double>(samples.size());
    mean_y /= static_cast<double>(samples.size());

    double sxx = 0.0;
    double sxy = 0.0;
    for (const FitSample& s : samples) {
        const double dx = s.d - mean_d;
        sxx += dx * dx;
        sxy += dx * (std::log(s.p0) - mean_y);
    }

    FitResult result;
    result.model.slope = sxy / sxx;
    result.model.intercept = mean_y - result.model.slope * mean_d;
    result.model.d_min = *distances.begin();
    result.model.d_max = *distances.rbegin();
    for (const FitSample& s : samples) {
        const double r = std::log(s.p0) - (result.model.intercept + result.model.slope * s.d);
        result.residuals.push_back(r);
        result.max_abs_residual = std::max(result.max_abs_residual, std::abs(r));
    }
    return result;
}

double predict_p0(const FitModel& model, int d)
{
    if (d < 1)
        throw DomainError("predict_p0: d must be at least 1");
    return std::exp(model.intercept + model.slope * d);
}

bool in_fitted_range(const FitModel& model, int d)
{
    return d >= model.d_min && d <= model.d_max;
}

int match_distance(const FitModel& model, double target_p0, int d_min, int d_max,
                   MatchParity parity)
{
    if (!(model.slope < 0.0))
        throw DomainError("match_distance: fit slope must be negative");
    if (!(target_p0 > 0.0))
        throw DomainError("match_distance: target must be positive");
    if (d_min < 1 || d_max < d_min)
        throw DomainError("match_distance: empty distance range");

    int d = d_min;
    if (parity == MatchParity::Odd && d % 2 == 0)
        ++d;
    const int step = (parity == MatchParity::Odd) ? 2 : 1;
    for (; d <= d_max; d += step) {
        if (predict_p0(model, d) <= target_p0)
            return d;
    }
    throw InfeasibleError("match_distance: no distance in [" + std::to_string(d_min) + ", " +
                          std::to_string(d_max) + "] reaches target p0");
}

std::vector<CalibrationSample> read_calibration_csv(const std::string& path)
{
    std::ifstream stream(path);
    if (!stream)
        throw IoError("cannot open '" + path + "'");
    std::vector<CalibrationSample> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        // Tolerate a header row and blank lines.
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        CalibrationSample sample;
        double d_raw = 0.0;
        double k_raw = 0.0;
        if (!(fields >> d_raw >> sample.p_l >> k_raw)) {
            if (line_no == 1)
                continue;
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected columns d, p_L, k");
        }
        sample.d = static_cast<int>(d_raw);
        sample.k = static_cast<long>(k_raw);
        samples.push_back(sample);
    }
    return samples;
}

FitResult fit_from_calibration(const std::vector<CalibrationSample>& samples)
{
    std::vector<FitSample> converted;
    converted.reserve(samples.size());
    for (const CalibrationSample& s : samples)
        converted.push_back({s.d, p0_from_pl(s.p_l, s.k, s.d)});
    return fit_log_linear(converted);
}

} // namespace qlops::rates
