#include "mpesens/covariation.hpp"

#include <stdexcept>

namespace mpesens {

CovariationLine covariation_line(const std::vector<double>& row, int x) {
    const int m = static_cast<int>(row.size());
    CovariationLine line;
    line.offset.assign(m, 0.0);
    line.slope.assign(m, 0.0);
    line.slope[x] = 1.0;

    double others = 0.0;
    for (int v = 0; v < m; ++v)
        if (v != x) others += row[v];

    if (others > 0.0) {
        for (int v = 0; v < m; ++v) {
            if (v == x) continue;
            double share = row[v] / others;
            line.offset[v] = share;
            line.slope[v] = -share;
        }
    } else {
        line.uniform_fallback = true;
        double share = 1.0 / static_cast<double>(m - 1);
        for (int v = 0; v < m; ++v) {
            if (v == x) continue;
            line.offset[v] = share;
            line.slope[v] = -share;
        }
    }
    return line;
}

std::vector<double> apply_covariation(const std::vector<double>& row, int x, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("co-varied parameter value must lie in [0,1]");
    CovariationLine line = covariation_line(row, x);
    std::vector<double> out(row.size());
    for (std::size_t v = 0; v < row.size(); ++v)
        out[v] = line.offset[v] + line.slope[v] * t;
    return out;
}

}  // namespace mpesens
