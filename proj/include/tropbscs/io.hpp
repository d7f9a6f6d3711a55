#pragma once

// Text interchange: JSON matrices/configs/plans and CSV traces.
//
// Matrices are JSON arrays of rows; numbers are finite entries and the string
// "-inf" stands for 𝟘, e.g. [[5, "-inf"], [0, 105]]. A flat array is read as
// a column vector.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tropbscs/bscs.hpp"
#include "tropbscs/dynamics.hpp"
#include "tropbscs/matrix.hpp"
#include "tropbscs/network.hpp"

namespace tropbscs::io {

Matrix matrix_from_json(std::string_view text);
Vector vector_from_json(std::string_view text);
std::string to_json(const Matrix& a);
std::string to_json(const Vector& x);
std::string to_json(Trop x);

/// {"dist": {"exp": {"mean": 25}}, "b": 5, "c": 100, "m": 4}; the dist key is
/// one of "exp" {mean}, "uniform" {lo, hi}, "det" {a}.
bscs::StationParams station_from_json(std::string_view text);
std::string to_json(const bscs::StationParams& params);

struct NetworkConfig {
    std::vector<network::NetworkStation> stations;
    std::size_t fleet = 0;  // 0 when the file does not set "M"
};

/// Either [{a, b, c, r}, ...] or {"stations": [...], "M": 12}.
NetworkConfig network_from_json(std::string_view text);

/// {counts, objective, thresholds, saturated, warning?}
std::string plan_to_json(const network::AllocationPlan& plan,
                         const std::vector<network::NetworkStation>& stations);

/// Header k,x,y,lambda_hat; rows at k = stride, 2·stride, ...
std::string trace_to_csv(const bscs::SimTrace& trace, std::size_t stride = 1);

/// Header k,lambda_hat; rows at stride, then a final line exact,<λ>.
std::string figure_to_csv(const bscs::SimTrace& trace, std::size_t stride, double exact);

/// Header k,norm,estimate.
std::string growth_to_csv(const GrowthTrace& trace);

/// Shortest decimal text that reads back to the same double ("-inf" for -inf).
std::string format_number(double v);

}  // namespace tropbscs::io
