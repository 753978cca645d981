#include "tropix/pipeline.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>

#include "tropix/barcode.hpp"
#include "tropix/error.hpp"
#include "tropix/io.hpp"
#include "tropix/metrics.hpp"
#include "tropix/tropical.hpp"

namespace tropix {

namespace {

// sum over bars of (birth + death)^2 (death - birth), the degree-(2,1)
// power sum in birth-death coordinates
double p21(const barcode& b) {
    double total = 0.0;
    for (const interval& bar : b.bars()) {
        double birth = bar.x;
        double death = bar.x + bar.d;
        total += (birth + death) * (birth + death) * (death - birth);
    }
    return total;
}

}  // namespace

std::vector<demo_row> demo_nonlipschitz(std::span<const double> x_values) {
    if (x_values.empty()) throw empty_dataset_error("demo_nonlipschitz: empty sweep");

    std::vector<barcode> barcodes;
    barcodes.push_back(normalize({}));
    for (double x : x_values) barcodes.push_back(normalize({{x, 1.0}}));
    batch_result batch = batch_tropicalize(barcodes);

    std::vector<demo_row> rows;
    rows.reserve(x_values.size());
    const tropical_vector& empty_image = batch.vectors[0];
    double empty_p21 = p21(barcodes[0]);
    for (std::size_t k = 0; k < x_values.size(); ++k) {
        demo_row row;
        row.x = x_values[k];
        row.p21_diff = p21(barcodes[k + 1]) - empty_p21;
        row.bottleneck = bottleneck_distance(barcodes[0], barcodes[k + 1]);
        const tropical_vector& image = batch.vectors[k + 1];
        for (std::size_t c = 0; c < image.values.size(); ++c)
            row.tropical_diff =
                std::max(row.tropical_diff, std::abs(image.values[c] - empty_image.values[c]));
        rows.push_back(row);
    }
    return rows;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw dimension_mismatch_error("log_log_slope: length mismatch");
    std::vector<double> u, v;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] > 0.0 && y[k] > 0.0) {
            u.push_back(std::log(x[k]));
            v.push_back(std::log(y[k]));
        }
    if (u.size() < 2) throw degenerate_input_error("log_log_slope: fewer than 2 usable pairs");

    double mean_u = 0.0, mean_v = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        mean_u += u[k];
        mean_v += v[k];
    }
    mean_u /= static_cast<double>(u.size());
    mean_v /= static_cast<double>(u.size());

    double cov = 0.0, var = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cov += (u[k] - mean_u) * (v[k] - mean_v);
        var += (u[k] - mean_u) * (u[k] - mean_u);
    }
    if (var == 0.0) throw degenerate_input_error("log_log_slope: degenerate abscissa");
    return cov / var;
}

void save_demo_table(const std::string& path, std::span<const demo_row> rows,
                     const std::string& manifest_ref) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << "# demo-table v1\n";
    out << "# manifest: " << manifest_ref << "\n";
    out << "x,p21_diff,bottleneck,tropical_diff\n";
    for (const demo_row& row : rows)
        out << format_double(row.x) << ',' << format_double(row.p21_diff) << ','
            << format_double(row.bottleneck) << ',' << format_double(row.tropical_diff) << '\n';
}

}  // namespace tropix
