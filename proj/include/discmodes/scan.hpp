#pragma once

#include <string>
#include <vector>

#include "discmodes/normalization.hpp"

namespace discmodes {

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
};

struct GridSpec {
    AxisSpec f56, ft56, ft3, ftp, ftm;
    long n_min = -5, n_max = 5;
    double rho0 = 1.0;
    std::vector<Sign> sign_set = {Sign::plus, Sign::minus};
    // Window reading for branch B records; when both are listed,
    // shifted_index takes precedence for the mode list.
    std::vector<WindowConvention> conventions = {WindowConvention::shifted_index};
    bool verify = false;      // per-point profile residual check
    bool quad_check = false;  // per-point three-way reconciliation over n_range
    QuadratureOptions quadrature;
    double residual_tol = 1e-8;
};

/// One (grid point, printed window sign, branch) cell.  The sign indexes the
/// +/- of the printed window; reconciliation runs against the mode that
/// window describes.  Field order is the serialization order.
struct ScanRecord {
    double f56 = 0.0, ft56 = 0.0, ft3 = 0.0, ftp = 0.0, ftm = 0.0;
    Sign sign = Sign::plus;
    Branch branch = Branch::A;
    WindowConvention convention = WindowConvention::shifted_index;
    double window_lower = 0.0;
    double window_upper = 0.0;
    std::vector<long> modes;     // integers strictly inside the window
    bool degenerate = false;     // D = 0 with nonzero coupling
    bool ftp_zero = false;
    bool checked = false;        // reconciliation ran without error
    bool agree = true;           // meaningful when checked
    double max_residual = -1.0;  // verify: max relative residual; -1 when not run
    std::string note;            // per-point error text, empty when clean

    bool operator==(const ScanRecord&) const = default;
};

enum class ExecutionPolicy { serial, parallel };

/// Deterministic sweep: lexicographic over (f56, ft56, ft3, ftp, ftm), then
/// sign, then branch.  Per-point failures land in the record note; the two
/// policies produce identical records.
std::vector<ScanRecord> scan(const GridSpec& g, ExecutionPolicy policy = ExecutionPolicy::serial);

/// Grid axis values; count = 1 collapses to min.
std::vector<double> axis_values(const AxisSpec& axis);

GridSpec validate_grid(const GridSpec& g);

}  // namespace discmodes
