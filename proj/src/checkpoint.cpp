#include "ucae/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "ucae/csv.hpp"
#include "ucae/errors.hpp"
#include "ucae/rng.hpp"

namespace ucae {

namespace {

constexpr const char* kMagic = "UCAE-CKPT";
constexpr const char* kVersion = "v1";

std::string hex_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
    return std::string(buf, res.ptr);
}

struct Writer {
    std::ostringstream out;

    Writer(const std::string& kind, const MetaMap& extra) {
        out << kMagic << ' ' << kVersion << ' ' << kind << '\n';
        meta("prng", Rng::kAlgorithmId);
        for (const auto& [k, v] : extra) meta(k, v);
    }
    void meta(const std::string& key, const std::string& value) {
        out << "meta " << key << ' ' << value << '\n';
    }
    void tensor(const std::string& name, const Matrix& m) {
        out << "tensor " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
        const double* p = m.data();
        for (std::size_t i = 0; i < m.size(); ++i) {
            out << hex_double(p[i]);
            out << (((i + 1) % 8 == 0 || i + 1 == m.size()) ? '\n' : ' ');
        }
        if (m.size() == 0) out << '\n';
    }
    void commit(const std::string& path) { atomic_write_text(path, out.str()); }
};

struct Parsed {
    std::string kind;
    MetaMap meta;
    std::map<std::string, Matrix> tensors;

    const std::string& require_meta(const std::string& key) const {
        auto it = meta.find(key);
        if (it == meta.end()) throw UsageError("checkpoint: missing meta key '" + key + "'");
        return it->second;
    }
    const Matrix& require_tensor(const std::string& name) const {
        auto it = tensors.find(name);
        if (it == tensors.end()) throw UsageError("checkpoint: missing tensor '" + name + "'");
        return it->second;
    }
};

Parsed parse_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("checkpoint: cannot open " + path);
    std::string magic, version;
    Parsed parsed;
    if (!(in >> magic >> version >> parsed.kind) || magic != kMagic)
        throw UsageError("checkpoint: " + path + " is not a UCAE-CKPT file");
    if (version != kVersion)
        throw UsageError("checkpoint: " + path + ": unsupported version " + version);

    std::string tok;
    while (in >> tok) {
        if (tok == "meta") {
            std::string key;
            in >> key;
            std::string value;
            std::getline(in, value);
            if (!value.empty() && value.front() == ' ') value.erase(0, 1);
            parsed.meta[key] = value;
        } else if (tok == "tensor") {
            std::string name;
            int rows = 0, cols = 0;
            if (!(in >> name >> rows >> cols) || rows < 0 || cols < 0)
                throw UsageError("checkpoint: " + path + ": malformed tensor header");
            Matrix m(rows, cols);
            double* p = m.data();
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::string lit;
                if (!(in >> lit))
                    throw UsageError("checkpoint: " + path + ": tensor " + name +
                                     ": payload shorter than " + std::to_string(m.size()) +
                                     " values");
                if (lit == "meta" || lit == "tensor")
                    throw UsageError("checkpoint: " + path + ": tensor " + name +
                                     ": payload shorter than declared shape");
                double v = 0.0;
                const auto res =
                    std::from_chars(lit.data(), lit.data() + lit.size(), v, std::chars_format::hex);
                if (res.ec != std::errc() || res.ptr != lit.data() + lit.size())
                    throw UsageError("checkpoint: " + path + ": tensor " + name +
                                     ": malformed hex float '" + lit + "'");
                p[i] = v;
            }
            parsed.tensors.emplace(name, std::move(m));
        } else {
            throw UsageError("checkpoint: " + path + ": unexpected token '" + tok + "'");
        }
    }
    return parsed;
}

int to_int(const std::string& s, const std::string& what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("checkpoint: bad integer for " + what + ": '" + s + "'");
    return v;
}

double to_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw UsageError("checkpoint: bad float for " + what + ": '" + s + "'");
    return v;
}

std::string layers_string(const Mlp& net) {
    std::ostringstream out;
    for (int l = 0; l < net.layer_count(); ++l) {
        const auto& spec = net.layers()[l];
        if (l) out << ';';
        out << spec.in_dim << ':' << spec.out_dim << ':' << activation_name(spec.activation);
        if (spec.activation == Activation::LeakyRelu) out << ':' << format_double(spec.leaky_slope);
    }
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Mlp mlp_from_checkpoint(const Parsed& parsed, const std::string& prefix) {
    std::vector<LayerSpec> specs;
    for (const auto& item : split(parsed.require_meta(prefix + "_layers"), ';')) {
        const auto f = split(item, ':');
        if (f.size() < 3) throw UsageError("checkpoint: malformed layer spec '" + item + "'");
        LayerSpec spec;
        spec.in_dim = to_int(f[0], prefix + " in_dim");
        spec.out_dim = to_int(f[1], prefix + " out_dim");
        if (f[2] == "identity") spec.activation = Activation::Identity;
        else if (f[2] == "tanh") spec.activation = Activation::Tanh;
        else if (f[2] == "leaky_relu") spec.activation = Activation::LeakyRelu;
        else throw UsageError("checkpoint: unknown activation '" + f[2] + "'");
        if (spec.activation == Activation::LeakyRelu) {
            if (f.size() != 4) throw UsageError("checkpoint: leaky_relu spec needs a slope");
            spec.leaky_slope = to_double(f[3], prefix + " slope");
        }
        specs.push_back(spec);
    }
    Mlp net(std::move(specs));
    for (int l = 0; l < net.layer_count(); ++l) {
        const std::string wn = prefix + "_w" + std::to_string(l);
        const std::string bn = prefix + "_b" + std::to_string(l);
        const Matrix& w = parsed.require_tensor(wn);
        const Matrix& b = parsed.require_tensor(bn);
        if (!w.same_shape(net.weight(l)))
            throw UsageError("checkpoint: tensor " + wn + " shape mismatch");
        if (!b.same_shape(net.bias(l)))
            throw UsageError("checkpoint: tensor " + bn + " shape mismatch");
        net.weight(l) = w;
        net.bias(l) = b;
    }
    return net;
}

void write_mlp(Writer& w, const std::string& prefix, const Mlp& net) {
    w.meta(prefix + "_layers", layers_string(net));
    for (int l = 0; l < net.layer_count(); ++l) {
        w.tensor(prefix + "_w" + std::to_string(l), net.weight(l));
        w.tensor(prefix + "_b" + std::to_string(l), net.bias(l));
    }
}

}  // namespace

std::string checkpoint_kind(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("checkpoint: cannot open " + path);
    std::string magic, version, kind;
    if (!(in >> magic >> version >> kind) || magic != kMagic)
        throw UsageError("checkpoint: " + path + " is not a UCAE-CKPT file");
    return kind;
}

MetaMap read_checkpoint_meta(const std::string& path) { return parse_checkpoint(path).meta; }

void save_checkpoint(const DomainModel& model, const std::string& path, const MetaMap& extra) {
    model.validate();
    Writer w("domain_model", extra);
    w.meta("domain_id", model.domain_id);
    w.meta("obs_dim", std::to_string(model.obs_dim));
    w.meta("noise_dim", std::to_string(model.noise_dim));
    w.meta("latent_dim", std::to_string(model.latent_dim));
    w.meta("label_dim", std::to_string(model.label_dim));
    write_mlp(w, "enc", model.encoder);
    write_mlp(w, "dec", model.decoder);
    write_mlp(w, "disc", model.discriminator);
    w.commit(path);
}

DomainModel load_domain_model(const std::string& path) {
    const Parsed parsed = parse_checkpoint(path);
    if (parsed.kind != "domain_model")
        throw UsageError("checkpoint: " + path + " holds a " + parsed.kind +
                         ", expected domain_model");
    DomainModel m;
    m.domain_id = parsed.require_meta("domain_id");
    m.obs_dim = to_int(parsed.require_meta("obs_dim"), "obs_dim");
    m.noise_dim = to_int(parsed.require_meta("noise_dim"), "noise_dim");
    m.latent_dim = to_int(parsed.require_meta("latent_dim"), "latent_dim");
    m.label_dim = to_int(parsed.require_meta("label_dim"), "label_dim");
    m.encoder = mlp_from_checkpoint(parsed, "enc");
    m.decoder = mlp_from_checkpoint(parsed, "dec");
    m.discriminator = mlp_from_checkpoint(parsed, "disc");
    m.validate();
    return m;
}

void save_checkpoint(const SemSpec& spec, const std::string& path, const MetaMap& extra) {
    spec.validate();
    Writer w("sem_spec", extra);
    w.meta("latent_dim", std::to_string(spec.latent_dim));
    w.meta("seed", std::to_string(spec.seed));
    w.meta("cluster_shift", format_double(spec.cluster_shift));
    w.meta("domain_count", std::to_string(spec.domain_count()));
    for (int i = 0; i < spec.domain_count(); ++i) {
        const auto& g = spec.domains[i];
        const std::string p = "dom" + std::to_string(i);
        w.meta(p, std::to_string(g.obs_dim) + ":" + std::to_string(g.noise_dim) + ":" +
                      format_double(g.warp_alpha));
        w.tensor(p + "_mix", g.mix);
        w.tensor(p + "_offset", g.offset);
    }
    w.commit(path);
}

SemSpec load_sem_spec(const std::string& path) {
    const Parsed parsed = parse_checkpoint(path);
    if (parsed.kind != "sem_spec")
        throw UsageError("checkpoint: " + path + " holds a " + parsed.kind + ", expected sem_spec");
    SemSpec spec;
    spec.latent_dim = to_int(parsed.require_meta("latent_dim"), "latent_dim");
    spec.seed = std::stoull(parsed.require_meta("seed"));
    spec.cluster_shift = to_double(parsed.require_meta("cluster_shift"), "cluster_shift");
    const int k = to_int(parsed.require_meta("domain_count"), "domain_count");
    for (int i = 0; i < k; ++i) {
        const std::string p = "dom" + std::to_string(i);
        const auto f = split(parsed.require_meta(p), ':');
        if (f.size() != 3) throw UsageError("checkpoint: malformed domain meta '" + p + "'");
        DomainGen g;
        g.obs_dim = to_int(f[0], p + " obs_dim");
        g.noise_dim = to_int(f[1], p + " noise_dim");
        g.warp_alpha = to_double(f[2], p + " warp_alpha");
        g.mix = parsed.require_tensor(p + "_mix");
        g.offset = parsed.require_tensor(p + "_offset");
        spec.domains.push_back(std::move(g));
    }
    spec.validate();
    return spec;
}

void save_checkpoint(const SampleBank& bank, const std::string& path, const MetaMap& extra) {
    Writer w("sample_bank", extra);
    w.meta("origin", bank.origin == SampleBank::Origin::Prior ? "prior" : "encoded");
    w.meta("domain_id", bank.domain_id.empty() ? "-" : bank.domain_id);
    w.meta("frozen", bank.frozen ? "1" : "0");
    w.tensor("samples", bank.samples);
    w.commit(path);
}

SampleBank load_sample_bank(const std::string& path) {
    const Parsed parsed = parse_checkpoint(path);
    if (parsed.kind != "sample_bank")
        throw UsageError("checkpoint: " + path + " holds a " + parsed.kind +
                         ", expected sample_bank");
    SampleBank bank;
    const std::string origin = parsed.require_meta("origin");
    if (origin == "prior") bank.origin = SampleBank::Origin::Prior;
    else if (origin == "encoded") bank.origin = SampleBank::Origin::Encoded;
    else throw UsageError("checkpoint: unknown bank origin '" + origin + "'");
    bank.domain_id = parsed.require_meta("domain_id");
    if (bank.domain_id == "-") bank.domain_id.clear();
    bank.frozen = parsed.require_meta("frozen") == "1";
    bank.samples = parsed.require_tensor("samples");
    return bank;
}

}  // namespace ucae
