// Command-line entry point: `secrisk scan <root> [options]`.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "secrisk/common/error.hpp"
#include "secrisk/report/config.hpp"
#include "secrisk/report/pipeline.hpp"
#include "secrisk/report/report_json.hpp"
#include "secrisk/report/report_table.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Ranks hard-coded database secrets by the value and reachability of what they protect."};
    app.set_version_flag("--version", secrisk::tool_version());
    app.require_subcommand(1);

    auto* scan = app.add_subcommand("scan", "Scan a repository and report ranked findings");
    std::string root, format, config_file, findings, output, ease_mapping, data_dir;
    std::vector<std::string> settings;
    bool offline = false, reveal = false;
    long long threshold = 0;
    scan->add_option("root", root, "Repository root")->required();
    scan->add_flag("--offline", offline, "Use fixtures and rules only; no network access");
    scan->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    scan->add_option("--findings", findings, "Secret findings JSON replacing the built-in secret finder");
    scan->add_option("--config", config_file, "Config file of 'key = value' lines");
    scan->add_flag("--reveal-secrets", reveal, "Include full secrets in JSON output");
    auto* threshold_opt = scan->add_option("--alert-threshold", threshold, "Exit with 2 when a score reaches this");
    scan->add_option("--ease-mapping", ease_mapping, "Ease mapping")->check(CLI::IsMember({"prose", "table3"}));
    scan->add_option("--data-dir", data_dir, "Directory with taxonomy, embeddings, lexicon and sinks");
    scan->add_option("-o,--output", output, "Write the report to a file instead of stdout");
    scan->add_option("--set", settings, "Override any config key: key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        secrisk::ScanConfig config;
        config.root = root;
        config.credentials = secrisk::Credentials::from_environment();
        if (!config_file.empty()) secrisk::apply_config_file(config, config_file);
        const std::filesystem::path cwd = std::filesystem::current_path();
        if (offline) secrisk::apply_setting(config, "offline", "true");
        if (!format.empty()) secrisk::apply_setting(config, "format", format);
        if (!findings.empty()) secrisk::apply_setting(config, "findings", findings, cwd);
        if (reveal) secrisk::apply_setting(config, "reveal_secrets", "true");
        if (*threshold_opt) secrisk::apply_setting(config, "alert_threshold", std::to_string(threshold));
        if (!ease_mapping.empty()) secrisk::apply_setting(config, "ease_mapping", ease_mapping);
        if (!data_dir.empty()) secrisk::apply_setting(config, "data_dir", data_dir, cwd);
        for (const auto& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw secrisk::Error("--set expects key=value, got '" + s + "'");
            secrisk::apply_setting(config, s.substr(0, eq), s.substr(eq + 1), cwd);
        }
        if (config.data_dir.empty()) config.data_dir = secrisk::default_data_dir();

        const secrisk::Report report = secrisk::run(config);
        const std::string text = config.format == secrisk::OutputFormat::Json ? secrisk::emit_json(report)
                                                                              : secrisk::emit_table(report);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output, std::ios::binary | std::ios::trunc);
            out << text;
            if (!out) throw secrisk::Error("cannot write " + output);
        }
        return secrisk::exit_code(report);
    } catch (const std::exception& e) {
        std::cerr << "secrisk: " << e.what() << "\n";
        return 1;
    }
}
