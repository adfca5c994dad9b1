#include "secrisk/detector/findings_file.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

FindingsByPath parse_findings(std::string_view json_text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(source + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != 1)
        throw Error(source + ": expected an object with \"schema\": 1");
    if (!doc.contains("findings") || !doc["findings"].is_array())
        throw Error(source + ": \"findings\" must be an array");

    FindingsByPath out;
    std::size_t index = 0;
    for (const auto& rec : doc["findings"]) {
        const std::string where = source + ": findings[" + std::to_string(index++) + "]";
        if (!rec.is_object()) throw Error(where + " is not an object");
        if (!rec.contains("path") || !rec["path"].is_string()) throw Error(where + ": missing string \"path\"");
        if (!rec.contains("line") || !rec["line"].is_number_integer() || rec["line"].get<long long>() < 1)
            throw Error(where + ": \"line\" must be a positive integer");
        if (!rec.contains("secret") || !rec["secret"].is_string() || rec["secret"].get<std::string>().empty())
            throw Error(where + ": missing non-empty string \"secret\"");
        SecretCandidate c;
        std::string path = rec["path"].get<std::string>();
        for (char& ch : path)
            if (ch == '\\') ch = '/';
        while (path.rfind("./", 0) == 0) path.erase(0, 2);
        c.location = SourceLocation{path, static_cast<int>(rec["line"].get<long long>()), 1};
        c.secret = rec["secret"].get<std::string>();
        if (rec.contains("variable")) {
            if (!rec["variable"].is_string()) throw Error(where + ": \"variable\" must be a string");
            c.variable = rec["variable"].get<std::string>();
        }
        out[path].push_back(std::move(c));
    }
    return out;
}

FindingsByPath load_findings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read findings file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_findings(ss.str(), path.string());
}

void complete_findings(std::vector<SecretCandidate>& findings, std::string_view file_text) {
    const auto lines = text::split_lines(file_text);
    for (auto& f : findings) {
        if (f.location.line > static_cast<int>(lines.size())) continue;
        const std::string& line = lines[static_cast<std::size_t>(f.location.line - 1)];
        if (const auto pos = line.find(f.secret); pos != std::string::npos) f.location.column = static_cast<int>(pos) + 1;
        if (!f.variable.empty()) continue;
        for (const auto& a : find_assignments(line, f.location.line, true)) {
            if (a.value == f.secret) {
                f.variable = a.name;
                f.location.column = a.value_column;
                break;
            }
        }
    }
}

}  // namespace secrisk
