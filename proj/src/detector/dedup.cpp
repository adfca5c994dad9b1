#include "secrisk/detector/dedup.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace secrisk {

bool pair_less(const SecretAssetPair& a, const SecretAssetPair& b) {
    const auto key = [](const SecretAssetPair& p) {
        return std::tie(p.secret_location, p.asset.host, p.asset.port, p.asset.database_name, p.secret);
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return precedence(a.detection_method) < precedence(b.detection_method);
}

std::vector<SecretAssetPair> dedup_pairs(std::vector<SecretAssetPair> pairs) {
    using Key = std::tuple<std::string, std::string, std::optional<int>, std::optional<std::string>, std::string>;
    std::stable_sort(pairs.begin(), pairs.end(), [](const SecretAssetPair& a, const SecretAssetPair& b) {
        if (precedence(a.detection_method) != precedence(b.detection_method))
            return precedence(a.detection_method) < precedence(b.detection_method);
        return pair_less(a, b);
    });

    std::map<Key, std::size_t> index;
    std::vector<SecretAssetPair> kept;
    for (auto& p : pairs) {
        Key key{p.secret, p.asset.host, p.asset.port, p.asset.database_name, p.secret_location.path};
        const auto [it, inserted] = index.emplace(std::move(key), kept.size());
        if (inserted) {
            kept.push_back(std::move(p));
            continue;
        }
        SecretAssetPair& survivor = kept[it->second];
        survivor.sinks.insert(p.sinks.begin(), p.sinks.end());
        survivor.families.insert(p.families.begin(), p.families.end());
        if (!survivor.user) survivor.user = p.user;
        if (survivor.variable.empty()) survivor.variable = p.variable;
        if (survivor.asset.db_type == DbType::Unknown) survivor.asset.db_type = p.asset.db_type;
    }
    std::sort(kept.begin(), kept.end(), pair_less);
    return kept;
}

}  // namespace secrisk
