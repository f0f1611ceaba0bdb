#include "viscobeam/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace viscobeam {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string rate_cell(double r) { return std::isnan(r) ? "--" : fmt("%.2f", r); }

} // namespace

void write_convergence_csv(const std::string& path, const std::vector<ThicknessTable>& tables) {
    if (tables.empty()) throw std::invalid_argument("write_convergence_csv: no tables");
    std::ofstream out = open_out(path);

    out << "dof,h";
    for (const ThicknessTable& t : tables) {
        const std::string d = fmt("%g", t.thickness);
        for (const char* col :
             {"e0_w", "r0_w", "e1_w", "r1_w", "e0_theta", "r0_theta", "e1_theta", "r1_theta",
              "e0_gamma", "r0_gamma"})
            out << "," << col << "_d" << d;
    }
    out << "\n";

    const std::size_t n_rows = tables.front().rows.size();
    for (std::size_t i = 0; i < n_rows; ++i) {
        const ErrorReport& first = tables.front().rows[i];
        out << first.dof << "," << fmt("%g", first.h);
        for (const ThicknessTable& t : tables) {
            const ErrorReport& row = t.rows[i];
            out << "," << fmt("%.4e", row.w.e0) << "," << rate_cell(row.w.r0) << ","
                << fmt("%.4e", row.w.e1) << "," << rate_cell(row.w.r1) << ","
                << fmt("%.4e", row.theta.e0) << "," << rate_cell(row.theta.r0) << ","
                << fmt("%.4e", row.theta.e1) << "," << rate_cell(row.theta.r1) << ","
                << fmt("%.4e", row.gamma_e0) << "," << rate_cell(row.gamma_r0);
        }
        out << "\n";
    }
}

void write_series_csv(const std::string& path, const std::vector<SeriesPoint>& points) {
    std::ofstream out = open_out(path);
    out << "h,error,series\n";
    for (const SeriesPoint& p : points)
        out << fmt("%g", p.h) << "," << fmt("%.6e", p.error) << "," << p.series << "\n";
}

void write_gnuplot_script(const std::string& path, const std::string& csv_name,
                          const std::vector<std::string>& series) {
    std::ofstream out = open_out(path);
    out << "set logscale xy\nset datafile separator ','\n"
        << "set xlabel 'h'\nset ylabel 'error'\nset key outside\n";
    out << "plot";
    bool first = true;
    for (const std::string& s : series) {
        if (!first) out << ",";
        first = false;
        out << " '" << csv_name << "' using 1:(strcol(3) eq '" << s
            << "' ? $2 : 1/0) with linespoints title '" << s << "'";
    }
    out << "\n";
}

std::string rates_summary(const std::vector<ThicknessTable>& tables) {
    std::ostringstream os;
    for (const ThicknessTable& t : tables) {
        if (t.rows.empty()) continue;
        const ErrorReport& last = t.rows.back();
        os << "d=" << fmt("%g", t.thickness) << "  h=" << fmt("%g", last.h)
           << "  r0(w)=" << rate_cell(last.w.r0) << "  r1(w)=" << rate_cell(last.w.r1)
           << "  r0(theta)=" << rate_cell(last.theta.r0)
           << "  r1(theta)=" << rate_cell(last.theta.r1)
           << "  r0(gamma)=" << rate_cell(last.gamma_r0) << "\n";
    }
    return os.str();
}

void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& m) {
    std::ofstream out = open_out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            out << it.row() + 1 << " " << it.col() + 1 << " " << fmt("%.17g", it.value()) << "\n";
}

} // namespace viscobeam
