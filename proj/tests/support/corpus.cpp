#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk::testkit {

std::filesystem::path data_dir() { return SECRISK_TEST_DATA_ROOT; }
std::filesystem::path corpus_dir() { return SECRISK_TEST_CORPUS_ROOT; }
std::filesystem::path oracle_dir() { return SECRISK_TEST_ORACLE_ROOT; }

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

std::set<std::string> split_list(const std::string& value) {
    std::set<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = text::to_lower_ascii(text::trim(item));
        if (!item.empty()) out.insert(item);
    }
    return out;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return "{" + out + "}";
}

}  // namespace

std::vector<CorpusCase> load_corpus() {
    std::vector<CorpusCase> cases;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
        const auto expected = entry.path() / "expected.txt";
        if (!entry.is_directory() || !std::filesystem::exists(expected)) continue;
        CorpusCase c;
        c.name = entry.path().filename().string();
        c.dir = entry.path();
        std::stringstream lines(read_text(expected));
        std::string line;
        while (std::getline(lines, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key(text::trim(std::string_view(line).substr(0, eq)));
            const std::string value(text::trim(std::string_view(line).substr(eq + 1)));
            if (key == "secret") c.secret = value;
            else if (key == "host") c.host = value;
            else if (key == "databases") c.databases = split_list(value);
            else if (key == "tables") c.tables = split_list(value);
            else if (key == "columns") c.columns = split_list(value);
            else if (key == "ease") c.ease = value;
            else throw Error(expected.string() + ": unknown key " + key);
        }
        cases.push_back(std::move(c));
    }
    std::sort(cases.begin(), cases.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return cases;
}

ScanConfig corpus_config(const std::filesystem::path& dir) {
    ScanConfig config;
    config.root = dir / "repo";
    config.offline = true;
    config.dns_fixture = dir / "dns.txt";
    config.scan_fixture = dir / "scan.txt";
    config.data_dir = data_dir();
    return config;
}

std::set<std::string> lower_names(const DatabaseKeywordSet& keywords, KeywordKind kind) {
    std::set<std::string> out;
    for (const auto& n : keywords.names(kind)) out.insert(text::to_lower_ascii(n));
    return out;
}

std::string check_case(const CorpusCase& c, const Report& report) {
    if (report.findings.size() != 1) return "expected 1 finding, got " + std::to_string(report.findings.size());
    const RiskFinding& f = report.findings.front();
    if (f.pair.secret != c.secret) return "secret " + f.pair.secret + " != " + c.secret;
    if (f.pair.asset.host != c.host) return "host " + f.pair.asset.host + " != " + c.host;
    const auto db = lower_names(f.keywords, KeywordKind::Database);
    const auto tb = lower_names(f.keywords, KeywordKind::Table);
    const auto col = lower_names(f.keywords, KeywordKind::Column);
    if (db != c.databases) return "databases " + join(db) + " != " + join(c.databases);
    if (tb != c.tables) return "tables " + join(tb) + " != " + join(c.tables);
    if (col != c.columns) return "columns " + join(col) + " != " + join(c.columns);
    if (to_string(f.ease.level) != c.ease) return std::string("ease ") + to_string(f.ease.level) + " != " + c.ease;
    return {};
}

}  // namespace secrisk::testkit
