#include "madelung/field_table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

constexpr const char* kHeader = "x,t,re,im";

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
    // from_chars round-trips every finite double we write, including
    // subnormals, which strtod-based parsers report as an ERANGE failure.
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) {
        throw SchemaError("bad numeric field '" + token + "' in " + path.string());
    }
    if (ptr != last) {
        throw SchemaError("trailing characters in field '" + token + "' in " + path.string());
    }
    return v;
}

}  // namespace

void FieldTable::push(double xi, double ti, cplx v) {
    x.push_back(xi);
    t.push_back(ti);
    value.push_back(v);
}

std::string to_csv_text(const FieldTable& table) {
    std::string out(kHeader);
    out += '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out += format_g17(table.x[i]);
        out += ',';
        out += format_g17(table.t[i]);
        out += ',';
        out += format_g17(table.value[i].real());
        out += ',';
        out += format_g17(table.value[i].imag());
        out += '\n';
    }
    return out;
}

void write_csv(const FieldTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << to_csv_text(table);
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

FieldTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError("empty table file " + path.string());
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kHeader) {
        throw SchemaError("unexpected header '" + line + "' in " + path.string());
    }
    FieldTable table;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string token;
        double vals[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(row, token, ',')) {
                throw SchemaError("short row '" + line + "' in " + path.string());
            }
            vals[i] = parse_double(token, path);
        }
        if (std::getline(row, token, ',')) {
            throw SchemaError("extra columns in row '" + line + "' in " + path.string());
        }
        table.push(vals[0], vals[1], cplx(vals[2], vals[3]));
    }
    return table;
}

DiffReport compare(const FieldTable& a, const FieldTable& b, double tol) {
    if (a.rows() != b.rows()) {
        std::ostringstream msg;
        msg << "row count mismatch: " << a.rows() << " vs " << b.rows();
        throw GridMismatch(msg.str());
    }
    DiffReport report;
    report.tol = tol;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a.x[i] != b.x[i] || a.t[i] != b.t[i]) {
            std::ostringstream msg;
            msg << "grid mismatch at row " << i << ": (" << a.x[i] << ", " << a.t[i]
                << ") vs (" << b.x[i] << ", " << b.t[i] << ")";
            throw GridMismatch(msg.str());
        }
        const double abs_diff = std::abs(a.value[i] - b.value[i]);
        const double scale = std::max(std::abs(a.value[i]), std::abs(b.value[i]));
        const double rel_diff = scale > 0.0 ? abs_diff / scale : 0.0;
        if (abs_diff > report.max_abs) {
            report.max_abs = abs_diff;
            report.worst_row = i;
        }
        report.max_rel = std::max(report.max_rel, rel_diff);
    }
    report.passed = report.max_abs <= tol;
    return report;
}

}  // namespace madelung
