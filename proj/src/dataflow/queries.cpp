#include "secrisk/dataflow/queries.hpp"

#include <set>

#include "secrisk/common/text.hpp"

namespace secrisk::flow {

namespace {
const std::set<std::string> kOpenCallables = {"open", "io.open", "codecs.open", "pathlib.Path",
                                              "pathlib.PurePath"};
}  // namespace

ResolvedArgument trace_query_fragments(const DefUseGraph&, const SinkCall& call) {
    auto it = call.bindings.find(Role::RawQuery);
    if (it != call.bindings.end()) return it->second;
    ResolvedArgument hole;
    hole.role = Role::RawQuery;
    hole.fragments.push_back(Fragment{call.location, std::nullopt});
    return hole;
}

std::vector<std::string> find_file_open_sql(const DefUseGraph& graph, const std::filesystem::path& repo_root,
                                            const std::string& file_relative_path) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    std::set<std::string> seen;
    const fs::path file_dir = fs::path(file_relative_path).parent_path();
    for (const auto& c : graph.calls) {
        if (!kOpenCallables.count(graph.callee_name(c))) continue;
        ValuePtr arg;
        if (!c.args.empty() && c.args_known > 0) {
            arg = c.args[0];
        } else {
            for (const auto& [name, v] : c.keywords)
                if (name == "file" || name == "filename") arg = v;
        }
        if (!arg || arg->kind != Value::Kind::Str) continue;
        auto path = resolved_text(*arg);
        if (!path || !(text::ends_with_icase(*path, ".sql") || text::ends_with_icase(*path, ".ddl"))) continue;

        fs::path p(*path);
        fs::path chosen;
        if (p.is_absolute()) {
            chosen = p.lexically_normal();
        } else {
            fs::path local = (file_dir / p).lexically_normal();
            fs::path rooted = p.lexically_normal();
            std::error_code ec;
            if (fs::is_regular_file(repo_root / local, ec))
                chosen = local;
            else if (fs::is_regular_file(repo_root / rooted, ec))
                chosen = rooted;
            else
                chosen = local;
        }
        std::string s = chosen.generic_string();
        if (seen.insert(s).second) out.push_back(s);
    }
    return out;
}

}  // namespace secrisk::flow
