// SPDX-License-Identifier: Apache-2.0
#pragma once

// "CSPK" container: magic, u32 format version, then five sections in fixed
// order (metadata, vocabulary, idf, labels, classifier). Each section is a u32
// payload length, the payload, and the CRC32 of the payload. All integers are
// little-endian; counts are u32, reals are IEEE-754 binary64, strings are a u32
// byte length followed by UTF-8 bytes.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <zlib.h>

#include "carspeak/classifier.hpp"
#include "carspeak/vectorize.hpp"

namespace carspeak {

inline constexpr std::array<char, 4> kBundleMagic{'C', 'S', 'P', 'K'};
inline constexpr std::uint32_t kBundleFormatVersion = 1;

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BundleMetadata {
    std::string corpus_hash;
    std::string lexicon_hash;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> hyperparameters;

    bool operator==(const BundleMetadata&) const = default;
};

/// Everything needed to answer a query: fitted features, labels, one classifier.
struct ModelBundle {
    std::uint32_t format_version = kBundleFormatVersion;
    BundleMetadata metadata;
    Vocabulary vocab;
    IdfTable idf;
    LabelMap labels;
    Classifier classifier;

    ClassifierKind kind() const { return kind_of(classifier); }

    bool operator==(const ModelBundle&) const = default;
};

namespace store_detail {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

class Writer {
public:
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void count(std::size_t n) {
        if (n > std::numeric_limits<std::uint32_t>::max()) throw ModelFormatError("count too large for u32");
        u32(static_cast<std::uint32_t>(n));
    }
    void str(std::string_view s) {
        count(s.size());
        buf_.append(s);
    }
    void f64s(const std::vector<double>& v) {
        for (double d : v) f64(d);
    }

    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    Reader(std::string_view bytes, std::string section) : bytes_(bytes), section_(std::move(section)) {}

    std::uint32_t u32() {
        const auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
        return v;
    }
    std::uint64_t u64() {
        const auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const auto n = u32();
        return std::string(take(n));
    }
    std::vector<double> f64s(std::size_t n) {
        // bound the allocation by what the payload can actually hold
        if (n > remaining() / 8) fail_truncated();
        std::vector<double> v(n);
        for (auto& d : v) d = f64();
        return v;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

    void finish() const {
        if (pos_ != bytes_.size()) throw ModelFormatError("trailing bytes in section " + section_);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ModelFormatError("invalid section " + section_ + ": " + what);
    }

private:
    [[noreturn]] void fail_truncated() const { throw ModelFormatError("unexpected end of section " + section_); }

    std::string_view take(std::size_t n) {
        if (n > remaining()) fail_truncated();
        auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
    std::string section_;
};

inline std::uint32_t crc32_of(std::string_view bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

inline std::string read_exact(std::istream& in, std::size_t n, const std::string& section) {
    std::string buf(n, '\0');
    if (n > 0 && !in.read(buf.data(), static_cast<std::streamsize>(n)))
        throw ModelFormatError("unexpected end of section " + section);
    return buf;
}

inline std::uint32_t read_u32(std::istream& in, const std::string& section) {
    const auto b = read_exact(in, 4, section);
    return Reader(b, section).u32();
}

inline void write_sparse(Writer& w, const SparseVector& x) {
    w.count(x.entries.size());
    for (const auto& [i, v] : x.entries) {
        w.u32(i);
        w.f64(v);
    }
}

inline SparseVector read_sparse(Reader& r, std::size_t dim) {
    SparseVector x;
    const auto n = r.u32();
    if (n > r.remaining() / 12) r.fail("sparse row longer than its payload");
    x.entries.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        const auto i = r.u32();
        const auto v = r.f64();
        if (i >= dim) r.fail("feature index out of range");
        if (!x.entries.empty() && x.entries.back().first >= i) r.fail("sparse indices not ascending");
        x.entries.emplace_back(i, v);
    }
    return x;
}

inline void write_classifier(Writer& w, const Classifier& clf) {
    w.u32(static_cast<std::uint32_t>(kind_of(clf)));
    std::visit(
        [&]<typename M>(const M& m) {
            if constexpr (std::is_same_v<M, KnnModel>) {
                w.count(m.k);
                w.count(m.dim);
                w.count(m.n_classes);
                w.count(m.rows.size());
                for (const auto& row : m.rows) {
                    w.u32(row.label);
                    write_sparse(w, row.x);
                }
            } else if constexpr (std::is_same_v<M, ForestModel>) {
                w.count(m.dim);
                w.count(m.n_classes);
                w.count(m.trees.size());
                for (const auto& tree : m.trees) {
                    w.count(tree.nodes.size());
                    for (const auto& n : tree.nodes) {
                        w.u32(n.feature);
                        w.f64(n.threshold);
                        w.u32(n.left);
                        w.u32(n.right);
                        w.count(n.histogram.size());
                        for (const auto& [c, k] : n.histogram) {
                            w.u32(c);
                            w.u32(k);
                        }
                    }
                }
            } else if constexpr (std::is_same_v<M, SvmModel>) {
                w.count(m.dim);
                w.count(m.n_classes);
                for (std::size_t c = 0; c < m.n_classes; ++c) {
                    w.f64(m.bias[c]);
                    w.f64s(m.weights[c]);
                }
            } else {
                w.count(m.dim);
                w.count(m.hidden);
                w.count(m.n_classes);
                w.f64s(m.w1);
                w.f64s(m.b1);
                w.f64s(m.w2);
                w.f64s(m.b2);
            }
        },
        clf);
}

inline Classifier read_classifier(Reader& r) {
    const auto tag = r.u32();
    switch (static_cast<ClassifierKind>(tag)) {
        case ClassifierKind::Knn: {
            KnnModel m;
            m.k = r.u32();
            m.dim = r.u32();
            m.n_classes = r.u32();
            const auto n = r.u32();
            if (m.k < 1 || m.k > n) r.fail("knn k out of range");
            if (n > r.remaining() / 8) r.fail("row count exceeds payload");
            m.rows.reserve(n);
            for (std::uint32_t i = 0; i < n; ++i) {
                LabeledRow row;
                row.label = r.u32();
                if (row.label >= m.n_classes) r.fail("row label out of range");
                row.x = read_sparse(r, m.dim);
                m.rows.push_back(std::move(row));
            }
            return m;
        }
        case ClassifierKind::Forest: {
            ForestModel m;
            m.dim = r.u32();
            m.n_classes = r.u32();
            const auto n_trees = r.u32();
            if (n_trees > r.remaining() / 4) r.fail("tree count exceeds payload");
            m.trees.resize(n_trees);
            for (auto& tree : m.trees) {
                const auto n_nodes = r.u32();
                if (n_nodes == 0) r.fail("empty tree");
                if (n_nodes > r.remaining() / 24) r.fail("node count exceeds payload");
                tree.nodes.resize(n_nodes);
                for (std::uint32_t k = 0; k < n_nodes; ++k) {
                    auto& node = tree.nodes[k];
                    node.feature = r.u32();
                    node.threshold = r.f64();
                    node.left = r.u32();
                    node.right = r.u32();
                    const auto h = r.u32();
                    if (h > r.remaining() / 8) r.fail("histogram exceeds payload");
                    for (std::uint32_t j = 0; j < h; ++j) {
                        const auto c = r.u32();
                        const auto cnt = r.u32();
                        if (c >= m.n_classes) r.fail("histogram class out of range");
                        node.histogram.emplace_back(c, cnt);
                    }
                    if (node.is_leaf()) {
                        if (node.histogram.empty()) r.fail("leaf without histogram");
                    } else {
                        // children always come after their parent
                        if (node.feature >= m.dim) r.fail("split feature out of range");
                        if (node.left <= k || node.right <= k || node.left >= n_nodes || node.right >= n_nodes)
                            r.fail("child index out of range");
                    }
                }
            }
            return m;
        }
        case ClassifierKind::Svm: {
            SvmModel m;
            m.dim = r.u32();
            m.n_classes = r.u32();
            if (m.n_classes > r.remaining() / 8) r.fail("class count exceeds payload");
            m.weights.resize(m.n_classes);
            m.bias.resize(m.n_classes);
            for (std::size_t c = 0; c < m.n_classes; ++c) {
                m.bias[c] = r.f64();
                m.weights[c] = r.f64s(m.dim);
            }
            return m;
        }
        case ClassifierKind::Mlp: {
            MlpModel m;
            m.dim = r.u32();
            m.hidden = r.u32();
            m.n_classes = r.u32();
            m.w1 = r.f64s(m.dim * m.hidden);
            m.b1 = r.f64s(m.hidden);
            m.w2 = r.f64s(m.hidden * m.n_classes);
            m.b2 = r.f64s(m.n_classes);
            return m;
        }
    }
    r.fail("unknown classifier kind " + std::to_string(tag));
}

inline std::string encode_metadata(const BundleMetadata& md) {
    Writer w;
    w.str(md.corpus_hash);
    w.str(md.lexicon_hash);
    w.u64(md.seed);
    w.count(md.hyperparameters.size());
    for (const auto& [k, v] : md.hyperparameters) {
        w.str(k);
        w.f64(v);
    }
    return w.bytes();
}

inline std::string encode_strings(const std::vector<std::string>& xs) {
    Writer w;
    w.count(xs.size());
    for (const auto& s : xs) w.str(s);
    return w.bytes();
}

inline std::vector<std::string> decode_strings(Reader& r) {
    const auto n = r.u32();
    if (n > r.remaining() / 4) r.fail("entry count exceeds payload");
    std::vector<std::string> out;
    out.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(r.str());
    return out;
}

inline constexpr const char* kSectionNames[] = {"metadata", "vocabulary", "idf", "labels", "classifier"};

}  // namespace store_detail

/// Writes the bundle and returns the number of bytes written.
inline std::size_t save_bundle(const ModelBundle& b, std::ostream& out) {
    using namespace store_detail;
    if (b.idf.idf.size() != b.vocab.size())
        throw std::invalid_argument("bundle idf table does not match its vocabulary");
    if (n_classes(b.classifier) != b.labels.size())
        throw std::invalid_argument("bundle classifier does not match its label map");

    std::string sections[5];
    sections[0] = encode_metadata(b.metadata);
    sections[1] = encode_strings(b.vocab.terms());
    {
        Writer w;
        w.count(b.idf.n_docs);
        w.count(b.idf.idf.size());
        w.f64s(b.idf.idf);
        sections[2] = w.bytes();
    }
    sections[3] = encode_strings(b.labels.labels());
    {
        Writer w;
        write_classifier(w, b.classifier);
        sections[4] = w.bytes();
    }

    Writer head;
    head.u32(b.format_version);
    std::size_t written = 0;
    auto emit = [&](std::string_view bytes) {
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("failed writing model bundle after " + std::to_string(written) + " bytes");
        written += bytes.size();
    };
    emit(std::string_view(kBundleMagic.data(), kBundleMagic.size()));
    emit(head.bytes());
    for (const auto& payload : sections) {
        Writer frame;
        frame.count(payload.size());
        emit(frame.bytes());
        emit(payload);
        Writer crc;
        crc.u32(crc32_of(payload));
        emit(crc.bytes());
    }
    out.flush();
    if (!out) throw std::runtime_error("failed flushing model bundle");
    return written;
}

inline ModelBundle load_bundle(std::istream& in) {
    using namespace store_detail;
    char magic[4] = {};
    if (!in.read(magic, 4) || std::memcmp(magic, kBundleMagic.data(), 4) != 0)
        throw ModelFormatError("not a carspeak model file");
    ModelBundle b;
    b.format_version = read_u32(in, "header");
    if (b.format_version > kBundleFormatVersion)
        throw ModelFormatError("model format version " + std::to_string(b.format_version) +
                               " is newer than supported version " + std::to_string(kBundleFormatVersion));
    if (b.format_version < 1)
        throw ModelFormatError("unsupported model format version " + std::to_string(b.format_version));

    std::string payloads[5];
    for (int s = 0; s < 5; ++s) {
        const std::string name = kSectionNames[s];
        const auto len = read_u32(in, name);
        payloads[s] = read_exact(in, len, name);
        const auto crc = read_u32(in, name);
        if (crc != crc32_of(payloads[s])) throw ModelFormatError("checksum mismatch in section " + name);
    }

    {
        Reader r(payloads[0], "metadata");
        b.metadata.corpus_hash = r.str();
        b.metadata.lexicon_hash = r.str();
        b.metadata.seed = r.u64();
        const auto n = r.u32();
        for (std::uint32_t i = 0; i < n; ++i) {
            auto key = r.str();
            const auto v = r.f64();
            b.metadata.hyperparameters.emplace_back(std::move(key), v);
        }
        r.finish();
    }
    {
        Reader r(payloads[1], "vocabulary");
        try {
            b.vocab = Vocabulary(decode_strings(r));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
        r.finish();
    }
    {
        Reader r(payloads[2], "idf");
        b.idf.n_docs = r.u32();
        const auto n = r.u32();
        if (n != b.vocab.size()) r.fail("idf table size differs from vocabulary size");
        b.idf.idf = r.f64s(n);
        r.finish();
    }
    {
        Reader r(payloads[3], "labels");
        try {
            b.labels = LabelMap(decode_strings(r));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        }
        r.finish();
    }
    {
        Reader r(payloads[4], "classifier");
        b.classifier = read_classifier(r);
        r.finish();
        if (n_classes(b.classifier) != b.labels.size()) r.fail("class count differs from label map");
        const auto dim = std::visit([](const auto& m) { return m.dim; }, b.classifier);
        if (dim != b.vocab.size()) r.fail("input dimension differs from vocabulary size");
    }
    return b;
}

/// Writes to a sibling temporary file, then renames over `path`.
inline std::size_t save_bundle_file(const ModelBundle& b, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    std::size_t n = 0;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        n = save_bundle(b, out);
    }
    std::filesystem::rename(tmp, path);
    return n;
}

inline ModelBundle load_bundle_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file " + path.string());
    try {
        return load_bundle(in);
    } catch (const ModelFormatError& e) {
        throw ModelFormatError(path.string() + ": " + e.what());
    }
}

}  // namespace carspeak
