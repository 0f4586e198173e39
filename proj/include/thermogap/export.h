#ifndef THERMOGAP_EXPORT_H
#define THERMOGAP_EXPORT_H

#include <string>
#include <vector>

#include "thermogap/core.h"
#include "thermogap/gap.h"

namespace thermogap {

/// 17 significant digits, shortest of %e / %f form ("%.17g"); round-trips every double.
std::string format_double(double v);

inline constexpr const char *kConeCsvHeader = "q,p0,p1,feasible,rho10_max,case_id,g00_star,g11_star";
inline constexpr const char *kGapCsvHeader =
    "q,epsilon,delta,ento_max,to_max,delta10,bound_main,bound_refined,f_q,certified";
inline constexpr const char *kSimulateCsvHeader =
    "sample,g00,g11,g01,g02,g10,g12,g20,g21,g22,rho10,bound_eq7,in_window";

/// LF-terminated CSV text, header first.
std::string cone_csv(const std::vector<ConeRecord> &records);
std::string gap_csv(const std::vector<GapRecord> &records);
std::string simulate_csv(const std::vector<GapSample> &samples);

/// Parses text produced by cone_csv. Throws std::runtime_error on malformed input.
std::vector<ConeRecord> parse_cone_csv(const std::string &text);

/// Heatmap of rho10_max over the feasible lattice with the reachable-population
/// hexagon drawn as a closed polyline and a min/max annotated color bar.
std::string cone_svg(const std::vector<ConeRecord> &records, double q, int grid);

}  // namespace thermogap

#endif
