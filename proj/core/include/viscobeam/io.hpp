#pragma once

#include "viscobeam/convergence.hpp"

#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace viscobeam {

/// Wide error table, one column group per thickness:
/// dof,h,(e0_w,r0_w,e1_w,r1_w,e0_t,r0_t,e1_t,r1_t,e0_g,r0_g) per d.
/// Errors use scientific notation, rates two decimals; output is
/// byte-stable for identical inputs.
void write_convergence_csv(const std::string& path, const std::vector<ThicknessTable>& tables);

/// Long format for figure-style studies: h,error,series.
struct SeriesPoint {
    double h = 0.0;
    double error = 0.0;
    std::string series;
};
void write_series_csv(const std::string& path, const std::vector<SeriesPoint>& points);

/// Plain-text gnuplot script that plots a long-format series CSV.
void write_gnuplot_script(const std::string& path, const std::string& csv_name,
                          const std::vector<std::string>& series);

/// Human-readable rate summary of the last rows of each table.
std::string rates_summary(const std::vector<ThicknessTable>& tables);

/// MatrixMarket coordinate output (debug dumps).
void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& m);

} // namespace viscobeam
