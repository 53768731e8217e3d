#ifndef MPESENS_COVARIATION_HPP
#define MPESENS_COVARIATION_HPP

#include <vector>

namespace mpesens {

// Single-CPT-cell perturbation scheme: when theta(x|u) moves to t, the other
// entries of the row share the remaining mass 1-t in proportion to their
// current values, so every entry stays linear in t. Binary rows reduce to
// the complement. If the row puts all mass on x (theta = 1), the remaining
// mass is spread uniformly instead.
struct CovariationLine {
    // entry_v(t) = offset[v] + slope[v] * t
    std::vector<double> offset;
    std::vector<double> slope;
    bool uniform_fallback = false;  // theta(x|u) was 1; proportional scheme undefined
};

CovariationLine covariation_line(const std::vector<double>& row, int x);

// The row with theta(x|u) set to t and co-varying entries adjusted; sums to
// 1 within 1e-12. Throws std::invalid_argument when t is outside [0,1].
std::vector<double> apply_covariation(const std::vector<double>& row, int x, double t);

}  // namespace mpesens

#endif
