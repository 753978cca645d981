#include "tropix/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "tropix/error.hpp"
#include "tropix/persistence.hpp"

namespace tropix {

namespace {

struct source_line {
    std::string text;    // comment stripped, original byte offsets preserved
    std::size_t number;  // 1-based
};

// One field within a line; column is the 1-based byte offset of its start.
struct field {
    std::string_view text;
    std::size_t column;
};

[[noreturn]] void fail_at(const std::string& path, std::size_t line, std::size_t col,
                          const std::string& msg) {
    std::ostringstream os;
    os << path << ':' << line << ':' << col << ": " << msg;
    throw parse_error(os.str());
}

std::vector<source_line> read_data_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open");
    std::vector<source_line> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t") != std::string::npos) out.push_back({line, number});
    }
    return out;
}

std::vector<field> split_whitespace(const std::string& line) {
    std::vector<field> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos == line.size()) break;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        out.push_back({std::string_view(line).substr(start, pos - start), start + 1});
    }
    return out;
}

std::vector<field> split_csv(const std::string& path, const source_line& sl) {
    std::vector<field> out;
    std::size_t pos = 0;
    const std::string& line = sl.text;
    while (true) {
        std::size_t comma = line.find(',', pos);
        std::size_t end = comma == std::string::npos ? line.size() : comma;
        std::size_t start = pos;
        while (start < end && (line[start] == ' ' || line[start] == '\t')) ++start;
        std::size_t stop = end;
        while (stop > start && (line[stop - 1] == ' ' || line[stop - 1] == '\t')) --stop;
        if (stop == start) fail_at(path, sl.number, start + 1, "empty field");
        out.push_back({std::string_view(line).substr(start, stop - start), start + 1});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

bool is_infinite_token(std::string_view t) {
    auto matches = [&](std::string_view word) {
        if (t.size() != word.size()) return false;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (std::tolower(static_cast<unsigned char>(t[k])) != word[k]) return false;
        return true;
    };
    return matches("inf") || matches("infinity");
}

double parse_number(const std::string& path, std::size_t line, const field& f) {
    std::string_view t = f.text;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    std::from_chars_result res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value))
        fail_at(path, line, f.column, "expected a finite number, got '" + std::string(t) + "'");
    return value;
}

std::size_t parse_index(const std::string& path, std::size_t line, const field& f,
                        const char* what) {
    std::size_t value = 0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    std::from_chars_result res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        fail_at(path, line, f.column,
                std::string("expected ") + what + ", got '" + std::string(f.text) + "'");
    return value;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    return out;
}

void write_banner(std::ofstream& out, const char* kind, const std::string& manifest_ref) {
    out << "# " << kind << " v1\n";
    out << "# manifest: " << manifest_ref << "\n";
}

// Death value whose load-side subtraction recovers d exactly. x + d can
// round away from that, so the written value is nudged by ulps until
// (death - x) == d. Succeeds for every bar expressible in birth-death
// coordinates at all, which includes everything a loader or the
// persistence engine produces (both compute d as death - birth); a bar
// whose d carries more precision than any death - x difference can hold
// has no exact text form and degrades to the nearest death.
double death_for(double x, double d) {
    double death = x + d;
    if (death - x == d) return death;
    double lo = death, hi = death;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 64; ++k) {
        lo = std::nextafter(lo, -inf);
        if (lo - x == d) return lo;
        hi = std::nextafter(hi, inf);
        if (hi - x == d) return hi;
    }
    return death;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_square_csv(const std::string& path, const char* kind, std::size_t n,
                      std::span<const double> entries, const std::string& manifest_ref) {
    std::ofstream out = open_output(path);
    write_banner(out, kind, manifest_ref);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ',';
            out << format_double(entries[i * n + j]);
        }
        out << '\n';
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

barcode load_barcode(const std::string& path, std::optional<double> cap) {
    std::vector<std::pair<double, double>> raw;
    for (const source_line& sl : read_data_lines(path)) {
        std::vector<field> fields = split_whitespace(sl.text);
        if (fields.size() != 2)
            fail_at(path, sl.number, fields.empty() ? 1 : fields[0].column,
                    "expected 'birth death'");
        double birth = parse_number(path, sl.number, fields[0]);
        double death;
        if (is_infinite_token(fields[1].text)) {
            if (!cap) {
                std::ostringstream os;
                os << path << ':' << sl.number << ": infinite death requires an explicit cap";
                throw uncapped_infinity_error(os.str());
            }
            death = *cap;
        } else {
            death = parse_number(path, sl.number, fields[1]);
        }
        raw.emplace_back(birth, death - birth);
    }
    return normalize(std::move(raw));
}

void save_barcode(const std::string& path, const barcode& b, const std::string& manifest_ref) {
    std::ofstream out = open_output(path);
    write_banner(out, "barcode", manifest_ref);
    for (const interval& bar : b.bars())
        out << format_double(bar.x) << ' ' << format_double(death_for(bar.x, bar.d)) << '\n';
}

distance_matrix load_distance_matrix(const std::string& path, matrix_format format) {
    std::vector<source_line> lines = read_data_lines(path);
    if (lines.empty()) throw parse_error(path + ": empty matrix file");

    distance_matrix dm;
    if (format == matrix_format::csv) {
        std::size_t n = lines.size();
        std::vector<double> grid;
        grid.reserve(n * n);
        for (const source_line& sl : lines) {
            std::vector<field> fields = split_csv(path, sl);
            if (fields.size() != n)
                fail_at(path, sl.number, fields.back().column,
                        "expected " + std::to_string(n) + " columns in a square matrix, got " +
                            std::to_string(fields.size()));
            for (const field& f : fields) grid.push_back(parse_number(path, sl.number, f));
        }

        double max_dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                max_dev = std::max(max_dev, std::abs(grid[i * n + j] - grid[j * n + i]));
        if (max_dev > 1e-9) {
            std::ostringstream os;
            os << path << ": matrix is asymmetric, max |a_ij - a_ji| = " << format_double(max_dev);
            throw asymmetry_error(os.str());
        }

        dm.n = n;
        dm.entries.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(grid[i * n + i]) > 1e-9) {
                std::ostringstream os;
                os << path << ": nonzero diagonal entry " << format_double(grid[i * n + i])
                   << " at row " << i;
                throw invalid_matrix_error(os.str());
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = 0.5 * (grid[i * n + j] + grid[j * n + i]);
                dm.entries[i * n + j] = dm.entries[j * n + i] = v;
            }
        }
    } else {
        // header form: a count line, then one row per point, first token a
        // name when present; bare form: row k carries the k+1 distances to
        // earlier points, so r rows give an (r+1)-point matrix
        std::vector<field> first = split_whitespace(lines[0].text);
        bool has_header =
            first.size() == 1 &&
            std::all_of(first[0].text.begin(), first[0].text.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });

        std::size_t n;
        std::size_t row_base;  // line index of matrix row 0, and its expected entry count
        if (has_header) {
            n = parse_index(path, lines[0].number, first[0], "a point count");
            if (n == 0) fail_at(path, lines[0].number, first[0].column, "empty matrix");
            if (lines.size() - 1 != n)
                fail_at(path, lines.back().number, 1,
                        "expected " + std::to_string(n) + " rows after the count, got " +
                            std::to_string(lines.size() - 1));
            row_base = 1;
        } else {
            n = lines.size() + 1;
            row_base = 0;
        }

        dm.n = n;
        dm.entries.assign(n * n, 0.0);
        for (std::size_t li = row_base; li < lines.size(); ++li) {
            const source_line& sl = lines[li];
            std::size_t row = has_header ? li - 1 : li + 1;
            std::size_t want = row;  // distances to points 0 .. row-1
            std::vector<field> fields = split_whitespace(sl.text);
            std::size_t skip = 0;
            if (fields.size() == want + 1)
                skip = 1;  // leading name token
            else if (fields.size() != want)
                fail_at(path, sl.number, fields.empty() ? 1 : fields[0].column,
                        "expected " + std::to_string(want) + " distances for row " +
                            std::to_string(row) + ", got " + std::to_string(fields.size()));
            for (std::size_t j = 0; j < want; ++j) {
                double v = parse_number(path, sl.number, fields[skip + j]);
                dm.entries[row * n + j] = dm.entries[j * n + row] = v;
            }
        }
    }

    require_valid_matrix(dm);
    return dm;
}

void save_distance_matrix(const std::string& path, const distance_matrix& dm,
                          const std::string& manifest_ref) {
    write_square_csv(path, "distance-matrix", dm.n, dm.entries, manifest_ref);
}

void save_similarity_matrix(const std::string& path, const similarity_matrix& s,
                            const std::string& manifest_ref) {
    write_square_csv(path, "similarity-matrix", s.n, s.entries, manifest_ref);
}

void save_vectors(const std::string& path, std::span<const tropical_vector> vectors,
                  std::size_t n, const std::string& manifest_ref) {
    std::vector<orbit_index> layout = tropical_layout(n);
    std::ofstream out = open_output(path);
    write_banner(out, "tropical-vectors", manifest_ref);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        if (k) out << ',';
        out << "E_i" << layout[k].i << "_j" << layout[k].j;
    }
    out << '\n';
    for (const tropical_vector& v : vectors) {
        for (std::size_t k = 0; k < v.values.size(); ++k) {
            if (k) out << ',';
            out << format_double(v.values[k]);
        }
        out << '\n';
    }
}

vector_file load_vectors(const std::string& path) {
    std::vector<source_line> lines = read_data_lines(path);
    if (lines.empty()) throw parse_error(path + ": missing header row");

    std::vector<field> header = split_csv(path, lines[0]);
    std::vector<orbit_index> named;
    std::size_t n = 0;
    for (const field& f : header) {
        std::string_view t = f.text;
        std::size_t jpos = t.find("_j");
        if (t.size() < 6 || t.substr(0, 3) != "E_i" || jpos == std::string_view::npos)
            fail_at(path, lines[0].number, f.column,
                    "expected a coordinate label E_i<i>_j<j>, got '" + std::string(t) + "'");
        field ipart{t.substr(3, jpos - 3), f.column + 3};
        field jpart{t.substr(jpos + 2), f.column + jpos + 2};
        orbit_index idx;
        idx.i = parse_index(path, lines[0].number, ipart, "an index");
        idx.j = parse_index(path, lines[0].number, jpart, "an index");
        named.push_back(idx);
        n = std::max(n, idx.i + idx.j);
    }
    std::vector<orbit_index> expected = tropical_layout(n);
    if (named.size() != expected.size() ||
        !std::equal(named.begin(), named.end(), expected.begin()))
        fail_at(path, lines[0].number, header[0].column,
                "header does not list the coordinate layout for n = " + std::to_string(n));

    vector_file out;
    out.n = n;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::vector<field> fields = split_csv(path, lines[li]);
        if (fields.size() != named.size())
            fail_at(path, lines[li].number, fields[0].column,
                    "expected " + std::to_string(named.size()) + " coordinates, got " +
                        std::to_string(fields.size()));
        tropical_vector v;
        v.values.reserve(fields.size());
        for (const field& f : fields) v.values.push_back(parse_number(path, lines[li].number, f));
        out.vectors.push_back(std::move(v));
    }
    return out;
}

void save_fits(const std::string& path, std::span<const gaussian_model> fits,
               const std::string& manifest_ref) {
    std::ofstream out = open_output(path);
    write_banner(out, "gaussian-fits", manifest_ref);
    out << "mu,sigma2\n";
    for (const gaussian_model& g : fits)
        out << format_double(g.mu) << ',' << format_double(g.sigma2) << '\n';
}

std::vector<gaussian_model> load_fits(const std::string& path) {
    std::vector<source_line> lines = read_data_lines(path);
    if (lines.empty()) throw parse_error(path + ": missing header row");
    std::vector<field> header = split_csv(path, lines[0]);
    if (header.size() != 2 || header[0].text != "mu" || header[1].text != "sigma2")
        fail_at(path, lines[0].number, header[0].column, "expected header 'mu,sigma2'");

    std::vector<gaussian_model> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::vector<field> fields = split_csv(path, lines[li]);
        if (fields.size() != 2)
            fail_at(path, lines[li].number, fields[0].column, "expected 'mu,sigma2'");
        gaussian_model g;
        g.mu = parse_number(path, lines[li].number, fields[0]);
        g.sigma2 = parse_number(path, lines[li].number, fields[1]);
        if (g.sigma2 <= 0.0)
            fail_at(path, lines[li].number, fields[1].column, "sigma2 must be positive");
        out.push_back(g);
    }
    return out;
}

void save_projection(const std::string& path, const projection_result& r,
                     const std::string& manifest_ref) {
    std::ofstream out = open_output(path);
    write_banner(out, "projection", manifest_ref);
    out << "# explained: " << format_double(r.explained[0]) << ','
        << format_double(r.explained[1]) << '\n';
    out << "axis0,axis1\n";
    for (const std::array<double, 2>& p : r.coordinates)
        out << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
}

void save_gnuplot_script(const std::string& path, const std::string& data_file) {
    std::ofstream out = open_output(path);
    out << "set datafile separator ','\n";
    out << "set key off\n";
    out << "set size ratio -1\n";
    out << "plot '" << data_file << "' using 1:2 with points pt 7\n";
}

void run_manifest::set(const std::string& key, const std::string& value) {
    entries[key] = value;
}

void run_manifest::set_number(const std::string& key, double value) {
    entries[key] = format_double(value);
}

void run_manifest::set_count(const std::string& key, std::size_t value) {
    entries[key] = std::to_string(value);
}

void run_manifest::add_input(const std::string& label, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open");
    std::ostringstream bytes;
    bytes << in.rdbuf();
    entries["input." + label] = path;
    entries["digest." + label] = fnv1a64_hex(bytes.str());
}

void save_manifest(const std::string& path, const run_manifest& m) {
    std::ofstream out = open_output(path);
    out << "# run-manifest v1\n";
    for (const auto& [key, value] : m.entries) out << key << '=' << value << '\n';
}

}  // namespace tropix
