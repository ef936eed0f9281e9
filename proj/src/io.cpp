#include "aesspmm/io.hpp"

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aes {

namespace {

constexpr std::uint8_t kFormatVersion = 1;

[[noreturn]] void fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

template <class T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is, const std::string& path) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) fail("TruncatedFile", path);
    return v;
}

template <class T>
void write_vec(std::ostream& os, const std::vector<T>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             std::streamsize(v.size() * sizeof(T)));
}

template <class T>
void read_vec(std::istream& is, std::vector<T>& v, std::size_t n,
              const std::string& path) {
    v.resize(n);
    is.read(reinterpret_cast<char*>(v.data()), std::streamsize(n * sizeof(T)));
    if (!is) fail("TruncatedFile", path);
}

void check_magic(std::istream& is, const char expect[4], const std::string& path) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, expect, 4) != 0) fail("BadMagic", path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("Io: cannot open for writing", path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("Io: cannot open", path);
    return is;
}

CsrMatrix load_edge_list(const std::string& path, std::size_t declared_nodes) {
    std::ifstream is(path);
    if (!is) fail("Io: cannot open", path);
    std::vector<std::uint32_t> rows, cols;
    std::vector<float> vals;
    std::uint64_t max_node = 0;
    bool any = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::uint64_t u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v)) fail("ParseError at line " + std::to_string(lineno), path);
        float w = 1.0f;
        if (float opt; ls >> opt) w = opt;  // optional weight
        std::string rest;
        if (ls >> rest) {
            fail("ParseError at line " + std::to_string(lineno), path);
        }
        if (declared_nodes != 0 && (u >= declared_nodes || v >= declared_nodes)) {
            fail("IndexOutOfDeclaredRange at line " + std::to_string(lineno),
                 path);
        }
        rows.push_back(std::uint32_t(u));
        cols.push_back(std::uint32_t(v));
        vals.push_back(w);
        max_node = std::max({max_node, u, v});
        any = true;
    }
    std::size_t n = declared_nodes != 0 ? declared_nodes : (any ? max_node + 1 : 0);
    return csr_from_triplets(n, n, std::move(rows), std::move(cols),
                             std::move(vals));
}

}  // namespace

CsrMatrix load_graph(const std::string& path, GraphFormat format,
                     std::size_t declared_nodes) {
    if (format == GraphFormat::EdgeListText) {
        return load_edge_list(path, declared_nodes);
    }
    CsrMatrix m = load_csr_binary(path);
    if (declared_nodes != 0 && m.n_rows != declared_nodes) {
        fail("IndexOutOfDeclaredRange", path);
    }
    return m;
}

void save_csr_binary(const CsrMatrix& m, const std::string& path) {
    std::ofstream os = open_out(path);
    os.write("CSRB", 4);
    write_pod(os, kFormatVersion);
    write_pod(os, std::uint64_t(m.n_rows));
    write_pod(os, std::uint64_t(m.n_cols));
    write_pod(os, std::uint64_t(m.nnz()));
    write_vec(os, m.row_ptr);
    write_vec(os, m.col_ind);
    write_vec(os, m.val);
    if (!os) fail("Io: write failed", path);
}

CsrMatrix load_csr_binary(const std::string& path) {
    std::ifstream is = open_in(path);
    check_magic(is, "CSRB", path);
    auto version = read_pod<std::uint8_t>(is, path);
    if (version != kFormatVersion) fail("unsupported CSRB version", path);
    CsrMatrix m;
    m.n_rows = read_pod<std::uint64_t>(is, path);
    m.n_cols = read_pod<std::uint64_t>(is, path);
    auto nnz = read_pod<std::uint64_t>(is, path);
    read_vec(is, m.row_ptr, m.n_rows + 1, path);
    read_vec(is, m.col_ind, nnz, path);
    read_vec(is, m.val, nnz, path);
    ValidationResult vr = validate_csr(m);
    if (!vr.ok()) fail("invalid CSR payload: " + vr.message(), path);
    return m;
}

namespace {

void write_fmat_header(std::ostream& os, std::uint8_t dtype, std::uint64_t rows,
                       std::uint64_t cols) {
    os.write("FMAT", 4);
    write_pod(os, kFormatVersion);
    write_pod(os, dtype);
    write_pod(os, rows);
    write_pod(os, cols);
}

}  // namespace

void save_fmat(const DenseMatrix& m, const std::string& path) {
    std::ofstream os = open_out(path);
    write_fmat_header(os, 0, m.n_rows, m.n_cols);
    write_vec(os, m.data);
    if (!os) fail("Io: write failed", path);
}

void save_fmat(const QuantizedFeatures& qf, const std::string& path) {
    if (qf.params.bits != 8) {
        throw std::invalid_argument("FMAT dtype 1 stores 8-bit codes only");
    }
    std::ofstream os = open_out(path);
    write_fmat_header(os, 1, qf.n_rows, qf.n_cols);
    write_pod(os, qf.params.x_min);
    write_pod(os, qf.params.x_max);
    std::vector<std::uint8_t> bytes(qf.codes.size());
    for (std::size_t i = 0; i < qf.codes.size(); ++i) {
        bytes[i] = std::uint8_t(qf.codes[i]);
    }
    write_vec(os, bytes);
    if (!os) fail("Io: write failed", path);
}

Features load_features(const std::string& path, double* load_ms) {
    auto t0 = std::chrono::steady_clock::now();
    std::ifstream is = open_in(path);
    check_magic(is, "FMAT", path);
    auto version = read_pod<std::uint8_t>(is, path);
    if (version != kFormatVersion) fail("unsupported FMAT version", path);
    auto dtype = read_pod<std::uint8_t>(is, path);
    auto rows = read_pod<std::uint64_t>(is, path);
    auto cols = read_pod<std::uint64_t>(is, path);

    Features out;
    if (dtype == 0) {
        DenseMatrix m;
        m.n_rows = rows;
        m.n_cols = cols;
        read_vec(is, m.data, rows * cols, path);
        out = std::move(m);
    } else if (dtype == 1) {
        QuantizedFeatures qf;
        qf.n_rows = rows;
        qf.n_cols = cols;
        qf.params.x_min = read_pod<float>(is, path);
        qf.params.x_max = read_pod<float>(is, path);
        qf.params.bits = 8;
        std::vector<std::uint8_t> bytes;
        read_vec(is, bytes, rows * cols, path);
        qf.codes.assign(bytes.begin(), bytes.end());
        out = std::move(qf);
    } else {
        fail("UnsupportedDtype", path);
    }
    if (load_ms != nullptr) {
        *load_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    }
    return out;
}

GnnModel load_model_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("Io: cannot open", path);
    std::filesystem::path dir = std::filesystem::path(path).parent_path();

    GnnModel model;
    bool kind_seen = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "kind") {
            std::string kind;
            ls >> kind;
            if (kind == "gcn") {
                model.kind = ModelKind::Gcn;
            } else if (kind == "sage_mean") {
                model.kind = ModelKind::SageMean;
            } else {
                fail("ParseError at line " + std::to_string(lineno), path);
            }
            kind_seen = true;
        } else if (word == "layer") {
            std::string wpath, bpath;
            if (!(ls >> wpath)) {
                fail("ParseError at line " + std::to_string(lineno), path);
            }
            ls >> bpath;
            GnnLayer layer;
            Features w = load_features((dir / wpath).string());
            if (!std::holds_alternative<DenseMatrix>(w)) {
                fail("weight file must be FMAT dtype 0", wpath);
            }
            layer.weight = std::get<DenseMatrix>(std::move(w));
            if (!bpath.empty()) {
                Features b = load_features((dir / bpath).string());
                if (!std::holds_alternative<DenseMatrix>(b)) {
                    fail("bias file must be FMAT dtype 0", bpath);
                }
                layer.bias = std::get<DenseMatrix>(std::move(b)).data;
            }
            model.layers.push_back(std::move(layer));
        } else {
            fail("ParseError at line " + std::to_string(lineno), path);
        }
    }
    if (!kind_seen || model.layers.empty()) {
        fail("manifest needs a kind and at least one layer", path);
    }
    return model;
}

void save_labels(const std::vector<std::uint32_t>& labels,
                 const std::string& path) {
    std::ofstream os = open_out(path);
    os.write("LBLS", 4);
    write_pod(os, kFormatVersion);
    write_pod(os, std::uint64_t(labels.size()));
    write_vec(os, labels);
    if (!os) fail("Io: write failed", path);
}

std::vector<std::uint32_t> load_labels(const std::string& path) {
    std::ifstream is = open_in(path);
    check_magic(is, "LBLS", path);
    auto version = read_pod<std::uint8_t>(is, path);
    if (version != kFormatVersion) fail("unsupported LBLS version", path);
    auto n = read_pod<std::uint64_t>(is, path);
    std::vector<std::uint32_t> labels;
    read_vec(is, labels, n, path);
    return labels;
}

}  // namespace aes
