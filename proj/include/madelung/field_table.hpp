#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "madelung/power_sum.hpp"

namespace madelung {

/// Row-major samples of one complex field over a grid: columns x, t, re, im.
struct FieldTable {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<cplx> value;

    std::size_t rows() const { return value.size(); }
    void push(double xi, double ti, cplx v);
};

/// CSV text with header "x,t,re,im" and 17-significant-digit doubles, so a
/// write/read round trip is bit-exact.
std::string to_csv_text(const FieldTable& table);

/// to_csv_text written to a file. Throws IoError.
void write_csv(const FieldTable& table, const std::filesystem::path& path);

/// Throws IoError on filesystem failure, SchemaError on malformed content.
FieldTable read_csv(const std::filesystem::path& path);

/// Element-wise comparison result of two tables on the same grid.
struct DiffReport {
    double max_abs = 0.0;
    double max_rel = 0.0;
    std::size_t worst_row = 0;
    double tol = 0.0;
    bool passed = true;
};

/// Throws GridMismatch unless both tables sample identical (x, t) rows.
/// passed = (max_abs <= tol).
DiffReport compare(const FieldTable& a, const FieldTable& b, double tol);

}  // namespace madelung
