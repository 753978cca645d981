#include "tropix/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tropix/error.hpp"
#include "tropix/io.hpp"
#include "tropix/metrics.hpp"
#include "tropix/persistence.hpp"
#include "tropix/pipeline.hpp"
#include "tropix/projection.hpp"
#include "tropix/stats.hpp"
#include "tropix/tropical.hpp"

namespace tropix {

namespace {

std::string manifest_ref_for(const std::string& output) {
    return std::filesystem::path(output + ".manifest").filename().string();
}

std::string data_basename(const std::string& output) {
    return std::filesystem::path(output).filename().string();
}

// zero-padded so the sorted manifest keys keep the input order readable
std::string input_label(const char* stem, std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s.%04zu", stem, k);
    return buf;
}

run_manifest base_manifest(const char* command) {
    run_manifest m;
    m.set("tool", "tropix");
    m.set("command", command);
    return m;
}

std::vector<barcode> load_barcodes(const std::vector<std::string>& paths,
                                   std::optional<double> cap, run_manifest& m) {
    if (paths.size() > 9999) throw validation_error("too many input files");
    std::vector<barcode> out;
    out.reserve(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        m.add_input(input_label("barcode", k), paths[k]);
        out.push_back(load_barcode(paths[k], cap));
    }
    return out;
}

struct ph_options {
    std::string input, output;
    std::string format = "csv";
    int dim = 0;
    std::optional<double> threshold, cap;
};

void run_ph(const ph_options& o) {
    matrix_format fmt = o.format == "csv" ? matrix_format::csv : matrix_format::phylip_lower;
    distance_matrix dm = load_distance_matrix(o.input, fmt);
    double threshold = o.threshold ? *o.threshold : enclosing_radius(dm);
    double cap = o.cap ? *o.cap : threshold;
    if (cap < threshold)
        throw validation_error("cap " + format_double(cap) + " is below the threshold " +
                               format_double(threshold));

    barcode b = o.dim == 0 ? rips_h0(dm, threshold) : rips_h1(dm, threshold);
    if (cap != threshold) {
        // bars cut off at the threshold carry the exact threshold - birth
        // remainder as their length; extend those to the cap
        std::vector<std::pair<double, double>> raw;
        for (const interval& bar : b.bars())
            raw.emplace_back(bar.x, bar.d == threshold - bar.x ? cap - bar.x : bar.d);
        b = normalize(std::move(raw));
    }

    run_manifest m = base_manifest("ph");
    m.add_input("matrix", o.input);
    m.set("format", o.format);
    m.set_count("dim", static_cast<std::size_t>(o.dim));
    m.set_number("threshold", threshold);
    m.set_number("cap", cap);
    save_manifest(o.output + ".manifest", m);
    save_barcode(o.output, b, manifest_ref_for(o.output));
}

struct vectorize_options {
    std::vector<std::string> inputs;
    std::string output;
    std::optional<double> cap;
};

void run_vectorize(const vectorize_options& o) {
    run_manifest m = base_manifest("vectorize");
    std::vector<barcode> barcodes = load_barcodes(o.inputs, o.cap, m);
    batch_result batch = batch_tropicalize(barcodes);

    if (o.cap) m.set_number("cap", *o.cap);
    m.set_count("n", batch.spec.n_max);
    m.set_number("m", batch.spec.m);
    save_manifest(o.output + ".manifest", m);
    save_vectors(o.output, batch.vectors, batch.spec.n_max, manifest_ref_for(o.output));
}

struct dist_options {
    std::vector<std::string> inputs;
    std::string output;
    std::string metric = "bottleneck";
    double p = 2.0;
    std::optional<double> cap;
};

void run_dist(const dist_options& o) {
    run_manifest m = base_manifest("dist");
    std::vector<barcode> barcodes = load_barcodes(o.inputs, o.cap, m);
    metric_kind kind =
        o.metric == "bottleneck" ? metric_kind::bottleneck : metric_kind::wasserstein;
    distance_matrix dm = pairwise_matrix(barcodes, kind, o.p);

    if (o.cap) m.set_number("cap", *o.cap);
    m.set("metric", o.metric);
    if (kind == metric_kind::wasserstein) m.set_number("p", o.p);
    save_manifest(o.output + ".manifest", m);
    save_distance_matrix(o.output, dm, manifest_ref_for(o.output));
}

struct mds_options {
    std::string input, output;
    std::string format = "csv";
    bool emit_gnuplot = false;
};

void run_mds(const mds_options& o) {
    matrix_format fmt = o.format == "csv" ? matrix_format::csv : matrix_format::phylip_lower;
    distance_matrix dm = load_distance_matrix(o.input, fmt);
    projection_result r = classical_mds(dm);

    run_manifest m = base_manifest("mds");
    m.add_input("matrix", o.input);
    m.set("format", o.format);
    save_manifest(o.output + ".manifest", m);
    save_projection(o.output, r, manifest_ref_for(o.output));
    if (o.emit_gnuplot) save_gnuplot_script(o.output + ".gnuplot", data_basename(o.output));
}

struct pca_options {
    std::string input, output;
    bool emit_gnuplot = false;
};

void run_pca(const pca_options& o) {
    vector_file vf = load_vectors(o.input);
    projection_result r = pca(vf.vectors);

    run_manifest m = base_manifest("pca");
    m.add_input("vectors", o.input);
    m.set_count("n", vf.n);
    save_manifest(o.output + ".manifest", m);
    save_projection(o.output, r, manifest_ref_for(o.output));
    if (o.emit_gnuplot) save_gnuplot_script(o.output + ".gnuplot", data_basename(o.output));
}

struct fit_options {
    std::string input, output;
    bool sqrt_transform = false;
};

void run_fit(const fit_options& o) {
    vector_file vf = load_vectors(o.input);
    std::vector<gaussian_model> fits;
    fits.reserve(vf.vectors.size());
    for (const tropical_vector& v : vf.vectors)
        fits.push_back(fit_gaussian(v, o.sqrt_transform));

    run_manifest m = base_manifest("fit");
    m.add_input("vectors", o.input);
    m.set_count("sqrt", o.sqrt_transform ? 1 : 0);
    save_manifest(o.output + ".manifest", m);
    save_fits(o.output, fits, manifest_ref_for(o.output));
}

struct divergence_options {
    std::string input, output;
    std::string kind = "kld";
    bool kstar_linear = false;
};

void run_divergence(const divergence_options& o) {
    std::vector<gaussian_model> models = load_fits(o.input);
    similarity_kind kind = o.kind == "kld"        ? similarity_kind::kld
                           : o.kind == "kld-star" ? similarity_kind::kld_star
                                                  : similarity_kind::hellinger;
    similarity_matrix sm = build_similarity(models, kind, o.kstar_linear);

    run_manifest m = base_manifest("divergence");
    m.add_input("fits", o.input);
    m.set("kind", o.kind);
    if (kind == similarity_kind::kld_star) m.set("kstar", o.kstar_linear ? "linear" : "exp");
    save_manifest(o.output + ".manifest", m);
    save_similarity_matrix(o.output, sm, manifest_ref_for(o.output));
}

struct demo_options {
    std::string output;
    std::vector<double> xs;
};

void run_demo(const demo_options& o) {
    std::vector<double> xs = o.xs;
    if (xs.empty()) xs = {0.0, 1.0, 10.0, 100.0};
    std::vector<demo_row> rows = demo_nonlipschitz(xs);

    run_manifest m = base_manifest("demo-nonlipschitz");
    std::string sweep;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) sweep += ',';
        sweep += format_double(xs[k]);
    }
    m.set("x", sweep);
    save_manifest(o.output + ".manifest", m);
    save_demo_table(o.output, rows, manifest_ref_for(o.output));
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"maps persistence barcodes to Euclidean vectors via max-plus polynomials "
                 "and runs barcode metrics, Vietoris-Rips persistence and Gaussian "
                 "similarity pipelines on top"};
    app.require_subcommand(1);

    ph_options po;
    CLI::App* ph = app.add_subcommand("ph", "persistence barcode of a distance matrix");
    ph->add_option("matrix", po.input, "distance matrix file")->required();
    ph->add_option("-o,--output", po.output, "barcode output file")->required();
    ph->add_option("--format", po.format, "matrix format")
        ->check(CLI::IsMember({"csv", "phylip-lower"}));
    ph->add_option("--dim", po.dim, "homology dimension")->check(CLI::IsMember({0, 1}));
    ph->add_option("--threshold", po.threshold, "filtration threshold (default: enclosing radius)");
    ph->add_option("--cap", po.cap,
                   "death value for bars still alive at the threshold (default: threshold)");

    vectorize_options vo;
    CLI::App* vectorize = app.add_subcommand("vectorize", "map barcodes to tropical coordinates");
    vectorize->add_option("barcodes", vo.inputs, "barcode files")->required();
    vectorize->add_option("-o,--output", vo.output, "vector csv output")->required();
    vectorize->add_option("--cap", vo.cap, "death value for infinite bars in the inputs");

    dist_options dopt;
    CLI::App* dist = app.add_subcommand("dist", "pairwise distance matrix of barcodes");
    dist->add_option("barcodes", dopt.inputs, "barcode files")->required();
    dist->add_option("-o,--output", dopt.output, "distance csv output")->required();
    dist->add_option("--metric", dopt.metric, "barcode metric")
        ->check(CLI::IsMember({"bottleneck", "wasserstein"}));
    dist->add_option("--p", dopt.p, "Wasserstein exponent")->check(CLI::Range(1.0, 16.0));
    dist->add_option("--cap", dopt.cap, "death value for infinite bars in the inputs");

    mds_options mo;
    CLI::App* mds = app.add_subcommand("mds", "classical multidimensional scaling of a matrix");
    mds->add_option("matrix", mo.input, "distance matrix file")->required();
    mds->add_option("-o,--output", mo.output, "projection csv output")->required();
    mds->add_option("--format", mo.format, "matrix format")
        ->check(CLI::IsMember({"csv", "phylip-lower"}));
    mds->add_flag("--emit-gnuplot", mo.emit_gnuplot, "also write a gnuplot script");

    pca_options pco;
    CLI::App* pca_cmd = app.add_subcommand("pca", "principal components of tropical vectors");
    pca_cmd->add_option("vectors", pco.input, "vector csv file")->required();
    pca_cmd->add_option("-o,--output", pco.output, "projection csv output")->required();
    pca_cmd->add_flag("--emit-gnuplot", pco.emit_gnuplot, "also write a gnuplot script");

    fit_options fo;
    CLI::App* fit = app.add_subcommand("fit", "per-vector Gaussian fits");
    fit->add_option("vectors", fo.input, "vector csv file")->required();
    fit->add_option("-o,--output", fo.output, "fits csv output")->required();
    fit->add_flag("--sqrt", fo.sqrt_transform, "fit entrywise square roots");

    divergence_options divo;
    CLI::App* divergence = app.add_subcommand("divergence", "pairwise similarity of fits");
    divergence->add_option("fits", divo.input, "fits csv file")->required();
    divergence->add_option("-o,--output", divo.output, "similarity csv output")->required();
    divergence->add_option("--kind", divo.kind, "similarity kind")
        ->check(CLI::IsMember({"kld", "kld-star", "hellinger"}));
    divergence->add_flag("--kstar-linear", divo.kstar_linear,
                         "store 1 - KLD instead of 1 - exp(-KLD)");

    demo_options dmo;
    CLI::App* demo = app.add_subcommand("demo-nonlipschitz",
                                        "sweep contrasting polynomial growth against "
                                        "bottleneck and tropical stability");
    demo->add_option("-o,--output", dmo.output, "table csv output")->required();
    demo->add_option("--x", dmo.xs, "sweep values (default: 0 1 10 100)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (divergence->parsed() && divo.kstar_linear && divo.kind != "kld-star") {
        std::cerr << "error: --kstar-linear requires --kind kld-star\n";
        return 1;
    }

    try {
        if (ph->parsed()) run_ph(po);
        else if (vectorize->parsed()) run_vectorize(vo);
        else if (dist->parsed()) run_dist(dopt);
        else if (mds->parsed()) run_mds(mo);
        else if (pca_cmd->parsed()) run_pca(pco);
        else if (fit->parsed()) run_fit(fo);
        else if (divergence->parsed()) run_divergence(divo);
        else if (demo->parsed()) run_demo(dmo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace tropix
