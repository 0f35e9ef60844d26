#include "dpg/numerics/checkpoint.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dpg::numerics {

namespace {

constexpr const char* kMagic = "dpg-mlp-checkpoint";

[[noreturn]] void corrupt(const std::string& what, std::size_t line) {
    throw std::runtime_error("checkpoint: " + what + " (line " + std::to_string(line) + ")");
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> next(const char* expected_tag) {
        std::string line;
        if (!std::getline(in_, line)) {
            corrupt(std::string("truncated file, expected '") + expected_tag + "'", line_no_ + 1);
        }
        ++line_no_;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty() || tokens.front() != expected_tag) {
            corrupt(std::string("expected '") + expected_tag + "'", line_no_);
        }
        return tokens;
    }

    std::size_t line() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

double parse_real(const std::string& token, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        corrupt("malformed number '" + token + "'", line);
    }
    return value;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(token, &pos);
    } catch (const std::exception&) {
        corrupt("malformed count '" + token + "'", line);
    }
    if (pos != token.size()) corrupt("malformed count '" + token + "'", line);
    return static_cast<std::size_t>(value);
}

void read_values(LineReader& reader, const char* tag, std::size_t expected,
                 double* destination) {
    auto tokens = reader.next(tag);
    if (tokens.size() != expected + 1) {
        corrupt(std::string("'") + tag + "' row has " + std::to_string(tokens.size() - 1) +
                    " values, declared dims require " + std::to_string(expected),
                reader.line());
    }
    for (std::size_t i = 0; i < expected; ++i) {
        destination[i] = parse_real(tokens[i + 1], reader.line());
    }
}

} // namespace

void write_checkpoint(std::ostream& out, const MlpParameters& params) {
    params.validate();
    out << kMagic << ' ' << kCheckpointVersion << '\n';
    out << "hidden " << to_string(params.hidden) << '\n';
    out << "output " << to_string(params.output) << '\n';
    out << "layers " << params.layers.size() << '\n';
    out << std::hexfloat;
    for (const auto& layer : params.layers) {
        out << "layer " << layer.in_dim << ' ' << layer.out_dim << '\n';
        for (std::size_t r = 0; r < layer.out_dim; ++r) {
            out << 'w';
            for (std::size_t c = 0; c < layer.in_dim; ++c) out << ' ' << layer.weight(r, c);
            out << '\n';
        }
        out << 'b';
        for (double b : layer.bias) out << ' ' << b;
        out << '\n';
    }
    out << std::defaultfloat << "end\n";
}

MlpParameters read_checkpoint(std::istream& in) {
    LineReader reader(in);
    auto header = reader.next(kMagic);
    if (header.size() != 2) corrupt("malformed header", reader.line());
    if (header[1] != std::to_string(kCheckpointVersion)) {
        throw std::runtime_error("checkpoint: unsupported format version '" + header[1] +
                                 "' (this build reads version " +
                                 std::to_string(kCheckpointVersion) + ")");
    }

    MlpParameters params;
    try {
        auto hidden = reader.next("hidden");
        if (hidden.size() != 2) corrupt("malformed 'hidden' line", reader.line());
        params.hidden = parse_activation(hidden[1]);
        auto output = reader.next("output");
        if (output.size() != 2) corrupt("malformed 'output' line", reader.line());
        params.output = parse_activation(output[1]);
    } catch (const std::invalid_argument& e) {
        corrupt(e.what(), reader.line());
    }

    auto count_line = reader.next("layers");
    if (count_line.size() != 2) corrupt("malformed 'layers' line", reader.line());
    const std::size_t n_layers = parse_count(count_line[1], reader.line());

    for (std::size_t k = 0; k < n_layers; ++k) {
        auto dims = reader.next("layer");
        if (dims.size() != 3) corrupt("malformed 'layer' line", reader.line());
        const std::size_t in_dim = parse_count(dims[1], reader.line());
        const std::size_t out_dim = parse_count(dims[2], reader.line());
        if (in_dim == 0 || out_dim == 0) corrupt("zero layer dimension", reader.line());
        if (k > 0 && params.layers.back().out_dim != in_dim) {
            corrupt("layer " + std::to_string(k) + " in_dim does not chain", reader.line());
        }
        DenseLayer layer(in_dim, out_dim);
        for (std::size_t r = 0; r < out_dim; ++r) {
            read_values(reader, "w", in_dim, layer.weights.data() + r * in_dim);
        }
        read_values(reader, "b", out_dim, layer.bias.data());
        params.layers.push_back(std::move(layer));
    }
    reader.next("end");

    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("checkpoint: ") + e.what());
    }
    return params;
}

void checkpoint_save(const MlpParameters& params, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open '" + path.string() + "' for writing");
    write_checkpoint(out, params);
    out.flush();
    if (!out) throw std::runtime_error("checkpoint: write failed for '" + path.string() + "'");
}

MlpParameters checkpoint_load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint: cannot open '" + path.string() + "'");
    try {
        return read_checkpoint(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

} // namespace dpg::numerics
