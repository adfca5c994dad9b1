#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace secrisk {

using Vector = std::vector<float>;

inline constexpr std::size_t kEmbeddingDim = 64;

/// Token -> dense vector. Implementations are read-only after construction
/// and safe to call concurrently.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dimension() const = 0;
    /// Never empty; tokens outside the vocabulary are composed from
    /// character n-grams.
    virtual Vector embed(std::string_view token) const = 0;
};

/// Unit vector with Gaussian components drawn from a generator seeded by
/// the FNV-1a hash of `seed`.
Vector seeded_vector(std::string_view seed, std::size_t dim);

/// Normalized sum of the vectors of the 3..5-byte n-grams of "<token>",
/// lower-cased.
Vector subword_vector(std::string_view token, std::size_t dim);

double cosine(const Vector& a, const Vector& b);

/// Mean of the token vectors; an empty token list gives an empty vector.
Vector mean_vector(const std::vector<std::string>& tokens, const EmbeddingProvider& provider);

/// Vectors loaded from a text file: a header line `count dim` (or just
/// `dim`), then `token v1 .. vd` per line.
class SubwordEmbedding : public EmbeddingProvider {
public:
    static SubwordEmbedding parse(std::string_view text, const std::string& source);
    static SubwordEmbedding load(const std::filesystem::path& path);

    std::size_t dimension() const override { return dim_; }
    Vector embed(std::string_view token) const override;
    bool contains(std::string_view token) const;
    std::size_t size() const { return vectors_.size(); }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, Vector> vectors_;
};

using EmbeddingTable = std::vector<std::pair<std::string, Vector>>;

/// Vectors for every word of the concept file and the vocabulary, sorted by
/// token. Synonyms share a concept direction; each word adds its own
/// n-gram component.
EmbeddingTable build_embedding_table(std::string_view concepts, std::string_view vocabulary, std::size_t dim);

/// Serialized form read by SubwordEmbedding::parse.
std::string format_embedding_table(const EmbeddingTable& table, std::size_t dim);

}  // namespace secrisk
