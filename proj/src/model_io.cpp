#include "tweetclass/model_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace twc {
namespace {

constexpr char kMagic[4] = {'T', 'W', 'C', 'M'};
constexpr std::uint32_t kVersion = 1;

// Explicit little-endian encoding keeps files byte-identical across
// platforms regardless of host endianness.
struct Writer {
    std::string buf;

    void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        u64(bits);
    }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf += s;
    }
    void str_list(const std::vector<std::string>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (const std::string& s : v) str(s);
    }
    void f64_list(const std::vector<double>& v) {
        u64(v.size());
        for (double d : v) f64(d);
    }
    void i32_list(const std::vector<int>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (int i : v) i32(i);
    }
};

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size())
            throw std::runtime_error("model file truncated");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
    std::vector<std::string> str_list() {
        std::uint32_t n = u32();
        std::vector<std::string> v;
        v.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) v.push_back(str());
        return v;
    }
    std::vector<double> f64_list() {
        std::uint64_t n = u64();
        std::vector<double> v;
        v.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) v.push_back(f64());
        return v;
    }
    std::vector<int> i32_list() {
        std::uint32_t n = u32();
        std::vector<int> v;
        v.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) v.push_back(i32());
        return v;
    }
};

void write_params(Writer& w, const svm::TrainParams& p) {
    w.f64(p.C);
    w.u32(static_cast<std::uint32_t>(p.class_weights.size()));
    for (const auto& [cls, weight] : p.class_weights) {
        w.i32(cls);
        w.f64(weight);
    }
    w.f64(p.tolerance);
    w.i32(p.max_iterations);
    w.u64(p.seed);
}

svm::TrainParams read_params(Reader& r) {
    svm::TrainParams p;
    p.C = r.f64();
    std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
        int cls = r.i32();
        p.class_weights[cls] = r.f64();
    }
    p.tolerance = r.f64();
    p.max_iterations = r.i32();
    p.seed = r.u64();
    return p;
}

void write_model(Writer& w, const svm::LinearModel& m) {
    w.i32_list(m.labels);
    w.u8(m.binary ? 1 : 0);
    w.u32(m.space_size);
    w.u32(static_cast<std::uint32_t>(m.weights.size()));
    for (const std::vector<double>& wv : m.weights) w.f64_list(wv);
    write_params(w, m.params);
    w.u64(m.data_fingerprint);
    w.u32(static_cast<std::uint32_t>(m.convergence.size()));
    for (const svm::ConvergenceInfo& c : m.convergence) {
        w.i32(c.sweeps);
        w.u8(c.converged ? 1 : 0);
        w.f64(c.primal);
        w.f64(c.dual);
    }
}

svm::LinearModel read_model(Reader& r) {
    svm::LinearModel m;
    m.labels = r.i32_list();
    m.binary = r.u8() != 0;
    m.space_size = r.u32();
    std::uint32_t nw = r.u32();
    for (std::uint32_t i = 0; i < nw; ++i) m.weights.push_back(r.f64_list());
    m.params = read_params(r);
    m.data_fingerprint = r.u64();
    std::uint32_t nc = r.u32();
    for (std::uint32_t i = 0; i < nc; ++i) {
        svm::ConvergenceInfo c;
        c.sweeps = r.i32();
        c.converged = r.u8() != 0;
        c.primal = r.f64();
        c.dual = r.f64();
        m.convergence.push_back(c);
    }
    return m;
}

void write_feature_config(Writer& w, const FeatureConfig& f) {
    w.i32(f.word_ngram_max);
    w.i32(f.noncontig_ngram_max);
    w.i32(f.char_ngram_max);
    w.u8(f.use_stems ? 1 : 0);
    w.u8(f.use_negation ? 1 : 0);
    w.u8(f.use_twitter ? 1 : 0);
    w.u8(f.use_punctuation ? 1 : 0);
    w.str_list(f.embedding_tables);
    w.str_list(f.domain_embedding_tables);
    w.str_list(f.cluster_maps);
    w.str_list(f.domain_cluster_maps);
    w.i32(f.domain_ngram_max);
    w.i32(f.domain_noncontig_max);
    w.u8(f.use_adr_lexicon ? 1 : 0);
    w.u8(f.use_pronoun_lexicon ? 1 : 0);
    w.str_list(f.sentiment_lexicons);
}

FeatureConfig read_feature_config(Reader& r) {
    FeatureConfig f;
    f.word_ngram_max = r.i32();
    f.noncontig_ngram_max = r.i32();
    f.char_ngram_max = r.i32();
    f.use_stems = r.u8() != 0;
    f.use_negation = r.u8() != 0;
    f.use_twitter = r.u8() != 0;
    f.use_punctuation = r.u8() != 0;
    f.embedding_tables = r.str_list();
    f.domain_embedding_tables = r.str_list();
    f.cluster_maps = r.str_list();
    f.domain_cluster_maps = r.str_list();
    f.domain_ngram_max = r.i32();
    f.domain_noncontig_max = r.i32();
    f.use_adr_lexicon = r.u8() != 0;
    f.use_pronoun_lexicon = r.u8() != 0;
    f.sentiment_lexicons = r.str_list();
    return f;
}

}  // namespace

void save_pipeline(const TrainedPipeline& p, const std::string& path) {
    Writer w;
    w.buf.append(kMagic, sizeof(kMagic));
    w.u32(kVersion);

    const PipelineConfig& cfg = p.config;
    std::vector<int> domain(cfg.label_domain.begin(), cfg.label_domain.end());
    w.i32_list(domain);
    w.i32(cfg.positive_class);
    w.i32_list(cfg.metric_classes);
    write_feature_config(w, cfg.features);
    write_params(w, cfg.train);
    w.u8(static_cast<std::uint8_t>(cfg.imbalance.kind));
    w.f64_list(cfg.imbalance.ratios);
    w.i32(cfg.imbalance.minority_class);

    w.u32(p.space.size());
    for (std::uint32_t id = 0; id < p.space.size(); ++id) w.str(p.space.name_of(id));

    w.u32(static_cast<std::uint32_t>(p.embedding_dims.size()));
    for (const auto& [table, dim] : p.embedding_dims) {
        w.str(table);
        w.u64(dim);
    }

    if (p.is_ensemble()) {
        w.u8(1);
        const Ensemble& e = std::get<Ensemble>(p.model);
        w.u32(static_cast<std::uint32_t>(e.members.size()));
        for (const svm::LinearModel& m : e.members) write_model(w, m);
        w.f64_list(e.ratios);
        w.i32(e.minority_class);
        w.i32(e.majority_class);
    } else {
        w.u8(0);
        write_model(w, std::get<svm::LinearModel>(p.model));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    if (!out) throw std::runtime_error("short write to model file: " + path);
}

TrainedPipeline load_pipeline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r{buf};
    r.need(4);
    if (std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a model file: " + path);
    r.pos = 4;
    std::uint32_t version = r.u32();
    if (version != kVersion)
        throw std::runtime_error("unsupported model version " + std::to_string(version));

    TrainedPipeline p;
    PipelineConfig& cfg = p.config;
    std::vector<int> domain = r.i32_list();
    cfg.label_domain = std::set<int>(domain.begin(), domain.end());
    cfg.positive_class = r.i32();
    cfg.metric_classes = r.i32_list();
    cfg.features = read_feature_config(r);
    cfg.train = read_params(r);
    cfg.imbalance.kind = static_cast<ImbalanceStrategy::Kind>(r.u8());
    cfg.imbalance.ratios = r.f64_list();
    cfg.imbalance.minority_class = r.i32();

    std::uint32_t space_size = r.u32();
    for (std::uint32_t i = 0; i < space_size; ++i) p.space.intern(r.str());
    p.space.freeze();

    std::uint32_t ndims = r.u32();
    for (std::uint32_t i = 0; i < ndims; ++i) {
        std::string table = r.str();
        std::uint64_t dim = r.u64();
        p.embedding_dims.emplace_back(table, static_cast<std::size_t>(dim));
    }

    std::uint8_t tag = r.u8();
    if (tag == 1) {
        Ensemble e;
        std::uint32_t n = r.u32();
        for (std::uint32_t i = 0; i < n; ++i) e.members.push_back(read_model(r));
        e.ratios = r.f64_list();
        e.minority_class = r.i32();
        e.majority_class = r.i32();
        p.model = std::move(e);
    } else if (tag == 0) {
        p.model = read_model(r);
    } else {
        throw std::runtime_error("unknown model tag in " + path);
    }

    if (r.pos != buf.size())
        throw std::runtime_error("trailing bytes in model file: " + path);
    return p;
}

}  // namespace twc
