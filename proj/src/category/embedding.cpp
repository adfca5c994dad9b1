#include "secrisk/category/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

using DVec = std::vector<double>;

DVec normalized(DVec v) {
    double n = 0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n > 0)
        for (double& x : v) x /= n;
    return v;
}

DVec gaussian_unit(std::string_view seed, std::size_t dim) {
    std::mt19937_64 gen(text::fnv1a64(seed));
    auto uniform = [&] { return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; };  // (0, 1]
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    DVec v(dim);
    for (std::size_t i = 0; i < dim; i += 2) {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = kTwoPi * uniform();
        v[i] = r * std::cos(theta);
        if (i + 1 < dim) v[i + 1] = r * std::sin(theta);
    }
    return normalized(std::move(v));
}

DVec subword_unit(std::string_view token, std::size_t dim) {
    const std::string padded = "<" + text::to_lower_ascii(token) + ">";
    DVec sum(dim, 0.0);
    bool any = false;
    for (std::size_t n = 3; n <= 5; ++n) {
        for (std::size_t i = 0; i + n <= padded.size(); ++i) {
            const DVec g = gaussian_unit("ngram:" + padded.substr(i, n), dim);
            for (std::size_t k = 0; k < dim; ++k) sum[k] += g[k];
            any = true;
        }
    }
    if (!any) return gaussian_unit("word:" + padded, dim);
    return normalized(std::move(sum));
}

Vector to_float(const DVec& v) { return Vector(v.begin(), v.end()); }

DVec mix(const DVec& a, double wa, const DVec& b, double wb) {
    DVec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = wa * a[k] + wb * b[k];
    return normalized(std::move(out));
}

}  // namespace

Vector seeded_vector(std::string_view seed, std::size_t dim) { return to_float(gaussian_unit(seed, dim)); }

Vector subword_vector(std::string_view token, std::size_t dim) { return to_float(subword_unit(token, dim)); }

double cosine(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || a.empty()) return 0.0;
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

Vector mean_vector(const std::vector<std::string>& tokens, const EmbeddingProvider& provider) {
    if (tokens.empty()) return {};
    DVec sum(provider.dimension(), 0.0);
    for (const auto& t : tokens) {
        const Vector v = provider.embed(t);
        for (std::size_t k = 0; k < sum.size() && k < v.size(); ++k) sum[k] += v[k];
    }
    for (double& x : sum) x /= static_cast<double>(tokens.size());
    return to_float(sum);
}

SubwordEmbedding SubwordEmbedding::parse(std::string_view content, const std::string& source) {
    SubwordEmbedding e;
    std::size_t line_no = 0;
    bool header = false;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        const std::string_view line = text::trim(raw);
        if (line.empty()) continue;
        std::istringstream in{std::string(line)};
        const std::string where = source + ":" + std::to_string(line_no);
        if (!header) {
            std::size_t a = 0, b = 0;
            if (!(in >> a)) throw Error(where + ": expected a dimension header");
            e.dim_ = (in >> b) ? b : a;
            if (e.dim_ == 0) throw Error(where + ": dimension must be positive");
            header = true;
            continue;
        }
        std::string token;
        in >> token;
        Vector v;
        v.reserve(e.dim_);
        float x = 0;
        while (in >> x) v.push_back(x);
        if (v.size() != e.dim_ || !in.eof())
            throw Error(where + ": expected " + std::to_string(e.dim_) + " components for '" + token + "'");
        e.vectors_[text::to_lower_ascii(token)] = std::move(v);
    }
    if (!header) throw Error(source + ": empty embedding file");
    return e;
}

SubwordEmbedding SubwordEmbedding::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read embeddings " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

Vector SubwordEmbedding::embed(std::string_view token) const {
    const auto it = vectors_.find(text::to_lower_ascii(token));
    if (it != vectors_.end()) return it->second;
    return subword_vector(token, dim_);
}

bool SubwordEmbedding::contains(std::string_view token) const {
    return vectors_.count(text::to_lower_ascii(token)) > 0;
}

EmbeddingTable build_embedding_table(std::string_view concepts, std::string_view vocabulary, std::size_t dim) {
    std::map<std::string, std::vector<std::string>> groups_of;  // word -> concept names
    std::map<std::string, std::vector<std::string>> abbreviations;
    std::set<std::string> words;
    for (const auto& raw : text::split_lines(concepts)) {
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        if (const auto eq = line.find('='); eq != std::string_view::npos) {
            const std::string word = text::to_lower_ascii(text::trim(line.substr(0, eq)));
            for (const auto& part : text::split(line.substr(eq + 1), ' '))
                abbreviations[word].push_back(text::to_lower_ascii(part));
            words.insert(word);
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw Error("concept line without ':' or '=': " + std::string(line));
        const std::string concept_name(text::trim(line.substr(0, colon)));
        for (const auto& w : text::split(line.substr(colon + 1), ' ')) {
            const std::string word = text::to_lower_ascii(w);
            groups_of[word].push_back(concept_name);
            words.insert(word);
        }
    }
    for (const auto& raw : text::split_lines(vocabulary)) {
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        for (const auto& w : text::split(line, ' '))
            if (!text::trim(w).empty()) words.insert(text::to_lower_ascii(text::trim(w)));
    }

    auto direction = [&](const std::string& word) {
        const auto it = groups_of.find(word);
        if (it == groups_of.end()) return gaussian_unit("word:" + word, dim);
        DVec sum(dim, 0.0);
        for (const auto& c : it->second) {
            const DVec cv = gaussian_unit("concept:" + c, dim);
            for (std::size_t k = 0; k < dim; ++k) sum[k] += cv[k];
        }
        return normalized(std::move(sum));
    };

    EmbeddingTable table;
    for (const auto& word : words) {
        DVec v;
        if (const auto ab = abbreviations.find(word); ab != abbreviations.end()) {
            DVec sum(dim, 0.0);
            for (const auto& part : ab->second) {
                const DVec d = direction(part);
                for (std::size_t k = 0; k < dim; ++k) sum[k] += d[k];
            }
            v = mix(normalized(std::move(sum)), 0.9, subword_unit(word, dim), 0.3);
        } else {
            v = mix(direction(word), 0.8, subword_unit(word, dim), 0.6);
        }
        table.emplace_back(word, to_float(v));
    }
    return table;
}

std::string format_embedding_table(const EmbeddingTable& table, std::size_t dim) {
    std::string out = std::to_string(table.size()) + " " + std::to_string(dim) + "\n";
    char buf[32];
    for (const auto& [token, v] : table) {
        out += token;
        for (float x : v) {
            std::snprintf(buf, sizeof buf, " %.6f", static_cast<double>(x));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace secrisk
