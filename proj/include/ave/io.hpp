/**
 * @file
 * @brief Matrix Market (coordinate) and vector file formats.
 *
 * Matrices: `%%MatrixMarket matrix coordinate {real|integer|complex}
 * {general|symmetric|skew-symmetric|hermitian}`; written back as general.
 * Vectors: plain text with one entry per line (`re` or `re im`), or a JSON
 * array of numbers / `[re, im]` pairs.
 */

#pragma once

#include "ave/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ave::io {

class format_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that reads back to the same double.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

struct MatrixMarketHeader {
    std::string field;     ///< real, integer, complex
    std::string symmetry;  ///< general, symmetric, skew-symmetric, hermitian

    [[nodiscard]] bool is_complex() const { return field == "complex"; }
};

namespace detail {

[[nodiscard]] inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[nodiscard]] inline std::ifstream open_in(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

[[nodiscard]] inline std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

template <Scalar T>
[[nodiscard]] T make_scalar(double re, double im) {
    if constexpr (is_complex_v<T>) {
        return T(re, im);
    } else {
        if (im != 0.0) {
            throw format_error("complex entry where a real value was expected");
        }
        return re;
    }
}

}  // namespace detail

[[nodiscard]] inline MatrixMarketHeader read_matrix_market_header(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw format_error("Matrix Market: empty input");
    }
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || detail::lower(object) != "matrix") {
        throw format_error("Matrix Market: missing '%%MatrixMarket matrix' banner");
    }
    if (detail::lower(format) != "coordinate") {
        throw format_error("Matrix Market: only the coordinate format is supported");
    }
    MatrixMarketHeader h{ detail::lower(field), detail::lower(symmetry) };
    if (h.field != "real" && h.field != "integer" && h.field != "complex") {
        throw format_error("Matrix Market: unsupported field '" + field + "'");
    }
    if (h.symmetry != "general" && h.symmetry != "symmetric" && h.symmetry != "skew-symmetric" && h.symmetry != "hermitian") {
        throw format_error("Matrix Market: unsupported symmetry '" + symmetry + "'");
    }
    return h;
}

template <Scalar T>
[[nodiscard]] CsrMatrix<T> read_matrix_market(std::istream &in) {
    const MatrixMarketHeader h = read_matrix_market_header(in);
    if (h.is_complex() && !is_complex_v<T>) {
        throw format_error("Matrix Market: complex matrix cannot be read into a real matrix");
    }
    std::string line;
    do {
        if (!std::getline(in, line)) {
            throw format_error("Matrix Market: missing size line");
        }
    } while (line.empty() || line[0] == '%');
    std::size_t nrows = 0, ncols = 0, nnz = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nrows >> ncols >> nnz)) {
            throw format_error("Matrix Market: malformed size line '" + line + "'");
        }
    }
    std::vector<Triplet<T>> t;
    t.reserve(h.symmetry == "general" ? nnz : 2 * nnz);
    std::size_t read = 0;
    while (read < nnz && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') {
            continue;
        }
        std::istringstream ss(line);
        std::size_t i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(ss >> i >> j >> re) || (h.is_complex() && !(ss >> im))) {
            throw format_error("Matrix Market: malformed entry '" + line + "'");
        }
        if (i < 1 || j < 1 || i > nrows || j > ncols) {
            throw format_error("Matrix Market: entry index out of range");
        }
        const T v = detail::make_scalar<T>(re, im);
        if (!is_finite(v)) {
            throw format_error("Matrix Market: non-finite entry");
        }
        t.push_back({ i - 1, j - 1, v });
        if (i != j) {
            if (h.symmetry == "symmetric") {
                t.push_back({ j - 1, i - 1, v });
            } else if (h.symmetry == "skew-symmetric") {
                t.push_back({ j - 1, i - 1, -v });
            } else if (h.symmetry == "hermitian") {
                t.push_back({ j - 1, i - 1, ave::conj(v) });
            }
        }
        ++read;
    }
    if (read != nnz) {
        throw format_error("Matrix Market: expected " + std::to_string(nnz) + " entries, found " + std::to_string(read));
    }
    return CsrMatrix<T>::from_triplets(nrows, ncols, std::move(t));
}

template <Scalar T>
void write_matrix_market(std::ostream &out, const CsrMatrix<T> &A) {
    out << "%%MatrixMarket matrix coordinate " << (is_complex_v<T> ? "complex" : "real") << " general\n";
    out << A.nrows() << ' ' << A.ncols() << ' ' << A.nnz() << '\n';
    for (const auto &e : A.triplets()) {
        out << e.row + 1 << ' ' << e.col + 1 << ' ';
        if constexpr (is_complex_v<T>) {
            out << format_double(e.value.real()) << ' ' << format_double(e.value.imag()) << '\n';
        } else {
            out << format_double(e.value) << '\n';
        }
    }
}

[[nodiscard]] inline bool matrix_market_is_complex(const std::filesystem::path &path) {
    auto in = detail::open_in(path);
    return read_matrix_market_header(in).is_complex();
}

template <Scalar T>
[[nodiscard]] CsrMatrix<T> load_matrix_market(const std::filesystem::path &path) {
    auto in = detail::open_in(path);
    return read_matrix_market<T>(in);
}

template <Scalar T>
void save_matrix_market(const std::filesystem::path &path, const CsrMatrix<T> &A) {
    auto out = detail::open_out(path);
    write_matrix_market(out, A);
}

// ---------------------------------------------------------------------------
// vectors

/// Raw entries of a vector file before choosing a field.
struct RawVector {
    std::vector<std::complex<double>> values;
    bool has_complex{ false };  ///< any entry written with an imaginary part
};

[[nodiscard]] inline RawVector read_vector_text(std::istream &in) {
    RawVector v;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#' || line[first] == '%') {
            continue;
        }
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re)) {
            throw format_error("vector: malformed line '" + line + "'");
        }
        if (ss >> im) {
            v.has_complex = true;
        }
        std::string rest;
        if (ss >> rest) {
            throw format_error("vector: too many values on line '" + line + "'");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw format_error("vector: non-finite entry");
        }
        v.values.emplace_back(re, im);
    }
    return v;
}

[[nodiscard]] inline RawVector read_vector_json(std::istream &in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw format_error(std::string("vector: invalid JSON: ") + e.what());
    }
    if (!j.is_array()) {
        throw format_error("vector: JSON vector must be an array");
    }
    RawVector v;
    for (const auto &e : j) {
        double re = 0.0, im = 0.0;
        if (e.is_number()) {
            re = e.get<double>();
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            re = e[0].get<double>();
            im = e[1].get<double>();
            v.has_complex = true;
        } else {
            throw format_error("vector: JSON entries must be numbers or [re, im] pairs");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw format_error("vector: non-finite entry");
        }
        v.values.emplace_back(re, im);
    }
    return v;
}

[[nodiscard]] inline bool is_json_path(const std::filesystem::path &path) {
    return detail::lower(path.extension().string()) == ".json";
}

[[nodiscard]] inline RawVector load_raw_vector(const std::filesystem::path &path) {
    auto in = detail::open_in(path);
    return is_json_path(path) ? read_vector_json(in) : read_vector_text(in);
}

template <Scalar T>
[[nodiscard]] Vector<T> to_field(const RawVector &raw) {
    Vector<T> out;
    out.reserve(raw.values.size());
    for (const auto &v : raw.values) {
        out.push_back(detail::make_scalar<T>(v.real(), v.imag()));
    }
    return out;
}

template <Scalar T>
[[nodiscard]] Vector<T> load_vector(const std::filesystem::path &path) {
    return to_field<T>(load_raw_vector(path));
}

template <Scalar T>
void write_vector_text(std::ostream &out, const Vector<T> &x) {
    for (const T &v : x) {
        if constexpr (is_complex_v<T>) {
            out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
        } else {
            out << format_double(v) << '\n';
        }
    }
}

template <Scalar T>
[[nodiscard]] nlohmann::json vector_to_json(const Vector<T> &x) {
    nlohmann::json j = nlohmann::json::array();
    for (const T &v : x) {
        if constexpr (is_complex_v<T>) {
            j.push_back({ v.real(), v.imag() });
        } else {
            j.push_back(v);
        }
    }
    return j;
}

template <Scalar T>
void save_vector(const std::filesystem::path &path, const Vector<T> &x) {
    auto out = detail::open_out(path);
    if (is_json_path(path)) {
        out << vector_to_json(x).dump() << '\n';
    } else {
        write_vector_text(out, x);
    }
}

/// 64-bit FNV-1a over the file bytes, as 16 hex digits.
[[nodiscard]] inline std::string file_checksum(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for checksum");
    }
    std::uint64_t h = 14695981039346656037ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ave::io
