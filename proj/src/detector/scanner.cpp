#include "secrisk/detector/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"
#include "secrisk/common/thread_pool.hpp"
#include "secrisk/dataflow/python_parser.hpp"
#include "secrisk/dataflow/queries.hpp"
#include "secrisk/detector/dataflow_pairs.hpp"
#include "secrisk/detector/dedup.hpp"

namespace fs = std::filesystem;

namespace secrisk {

namespace {

constexpr std::size_t kBinaryProbeBytes = 8192;

struct FileResult {
    std::optional<FileAnalysis> analysis;
    std::vector<SecretAssetPair> pairs;
    Diagnostics diags;
};

flow::DefUseOptions def_use_options(const std::vector<flow::DriverSinkSpec>& specs) {
    flow::DefUseOptions o;
    o.passthrough.clear();
    for (const auto& s : specs)
        if (s.category == flow::SinkCategory::Passthrough) o.passthrough.insert(s.callable);
    return o;
}

// Links pairs that carry no sink yet to driver sinks of the same file whose
// arguments contain both the secret and the host.
void link_to_sinks(std::vector<SecretAssetPair>& pairs, const FileAnalysis& fa) {
    for (auto& p : pairs) {
        if (!p.sinks.empty()) continue;
        for (std::size_t i = 0; i < fa.sinks.size(); ++i) {
            const auto& sc = fa.sinks[i];
            if (sc.spec->is_query()) continue;
            std::string all;
            for (const auto& [role, arg] : sc.bindings) {
                all += text_with_holes(arg.fragments);
                all += '\n';
            }
            if (all.find(p.secret) == std::string::npos || all.find(p.asset.host) == std::string::npos) continue;
            p.sinks.insert(SinkRef{fa.path, static_cast<int>(i)});
            if (const std::string family = sc.spec->option("family"); !family.empty()) p.families.insert(family);
        }
    }
}

FileResult analyze_file(const fs::path& root, const std::string& rel, const DetectorOptions& options,
                        const flow::DefUseOptions& du_options) {
    FileResult r;
    const fs::path full = root / fs::path(rel);
    std::error_code ec;
    const auto size = fs::file_size(full, ec);
    if (ec) {
        r.diags.warn("detector", "cannot stat file: " + ec.message(), SourceLocation{rel, 1, 1});
        return r;
    }
    if (size > options.max_file_bytes) {
        r.diags.info("detector", "skipped: larger than " + std::to_string(options.max_file_bytes) + " bytes",
                     SourceLocation{rel, 1, 1});
        return r;
    }
    std::ifstream in(full, std::ios::binary);
    std::stringstream ss;
    if (!in || !(ss << in.rdbuf())) {
        if (size != 0) {
            r.diags.warn("detector", "cannot read file", SourceLocation{rel, 1, 1});
            return r;
        }
    }
    FileAnalysis fa;
    fa.path = rel;
    fa.text = ss.str();
    if (fa.text.substr(0, kBinaryProbeBytes).find('\0') != std::string::npos) {
        r.diags.info("detector", "skipped: binary file", SourceLocation{rel, 1, 1});
        return r;
    }

    std::vector<SecretAssetPair> pairs = match_connection_strings(fa.text, rel, *options.grammars);

    std::vector<SecretCandidate> secrets;
    if (options.findings) {
        if (auto it = options.findings->find(rel); it != options.findings->end()) {
            secrets = it->second;
            complete_findings(secrets, fa.text);
        }
    } else {
        secrets = find_secrets(fa.text, rel, options.secrets);
    }
    const auto lines = text::split_lines(fa.text);
    for (auto& p : heuristic_detect(secrets, lines, options.heuristic)) pairs.push_back(std::move(p));

    if (is_python_path(rel)) {
        fa.python = true;
        const py::Module module = py::parse_source(fa.text, rel, r.diags);
        fa.graph = flow::build_def_use(module, du_options);
        r.diags.append(fa.graph->diagnostics);
        fa.sinks = flow::find_sinks(*fa.graph, *options.sinks);
        for (auto& p : pairs_from_sinks(*fa.graph, fa.sinks, *options.grammars, r.diags)) pairs.push_back(std::move(p));
        fa.sql_files = flow::find_file_open_sql(*fa.graph, root, rel);
        link_to_sinks(pairs, fa);
    }
    r.pairs = std::move(pairs);
    r.analysis = std::move(fa);
    return r;
}

}  // namespace

const FileAnalysis* RepositoryScan::file(const std::string& path) const {
    const auto it = std::lower_bound(files.begin(), files.end(), path,
                                     [](const FileAnalysis& f, const std::string& p) { return f.path < p; });
    return it != files.end() && it->path == path ? &*it : nullptr;
}

bool is_python_path(std::string_view path) {
    return text::ends_with_icase(path, ".py") || text::ends_with_icase(path, ".pyw");
}

std::vector<std::string> list_repository_files(const fs::path& root, Diagnostics& diags) {
    std::vector<std::string> out;
    std::error_code ec;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec), end;
    if (ec) throw Error("cannot read scan root " + root.string() + ": " + ec.message());
    for (; it != end; it.increment(ec)) {
        if (ec) {
            diags.warn("detector", "directory walk error: " + ec.message());
            ec.clear();
            continue;
        }
        const auto& entry = *it;
        const std::string name = entry.path().filename().string();
        if (entry.is_symlink(ec)) {
            if (entry.is_directory(ec)) it.disable_recursion_pending();
            continue;
        }
        if (entry.is_directory(ec)) {
            if (name == ".git" || name == ".hg" || name == ".svn") it.disable_recursion_pending();
            continue;
        }
        if (!entry.is_regular_file(ec)) continue;
        out.push_back(fs::relative(entry.path(), root, ec).generic_string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

RepositoryScan analyze_repository(const fs::path& root, const DetectorOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error("scan root is not a readable directory: " + root.string());
    if (!options.sinks) throw Error("detector options carry no sink inventory");

    DetectorOptions opts = options;
    if (!opts.grammars) opts.grammars = std::make_shared<const GrammarMatcher>();

    RepositoryScan scan;
    scan.root = root;
    scan.sink_specs = opts.sinks;
    const auto files = list_repository_files(root, scan.diagnostics);
    const auto du_options = def_use_options(*opts.sinks);

    std::vector<FileResult> results(files.size());
    parallel_for(files.size(), opts.workers == 0 ? default_worker_count() : opts.workers,
                 [&](std::size_t i) { results[i] = analyze_file(root, files[i], opts, du_options); });

    std::vector<SecretAssetPair> pairs;
    for (auto& r : results) {
        scan.diagnostics.append(r.diags);
        if (r.analysis) scan.files.push_back(std::move(*r.analysis));
        for (auto& p : r.pairs) pairs.push_back(std::move(p));
    }
    if (opts.findings) {
        for (const auto& [path, list] : *opts.findings)
            if (!scan.file(path))
                scan.diagnostics.warn("detector", "findings reference a file that was not scanned: " + path);
    }
    scan.pairs = dedup_pairs(std::move(pairs));
    return scan;
}

std::vector<SecretAssetPair> scan_repository(const fs::path& root, const DetectorOptions& options) {
    return analyze_repository(root, options).pairs;
}

}  // namespace secrisk
