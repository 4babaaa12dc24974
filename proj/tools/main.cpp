#include "skewlab/skewlab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// "name: synopsis" lines from the library.
std::vector<std::pair<std::string, std::string>> commandList()
{
    std::vector<std::pair<std::string, std::string>> out;
    char *raw = sl_job_commands();
    std::istringstream in(raw ? raw : "");
    std::string line;
    while (std::getline(in, line)) {
        auto colon = line.find(':');
        if (colon != std::string::npos)
            out.push_back({line.substr(0, colon), line.substr(colon + 2)});
    }
    sl_string_free(raw);
    return out;
}

// Turns leftover tokens ("--key value" or "--key=value") into a flat
// key/value list for sl_run_job.
std::vector<std::string> collectOptions(const std::vector<std::string> &extras)
{
    std::vector<std::string> kv;
    for (size_t i = 0; i < extras.size(); ++i) {
        std::string tok = extras[i];
        if (tok.rfind("--", 0) != 0)
            throw CLI::ValidationError("options", "expected --key value, got '" + tok + "'");
        tok = tok.substr(2);
        auto eq = tok.find('=');
        if (eq != std::string::npos) {
            kv.push_back(tok.substr(0, eq));
            kv.push_back(tok.substr(eq + 1));
        } else {
            if (i + 1 >= extras.size())
                throw CLI::ValidationError("options", "missing value for --" + tok);
            kv.push_back(tok);
            kv.push_back(extras[++i]);
        }
    }
    return kv;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{std::string(sl_version()) +
                 " — computable division rings for torsion-free group algebras"};
    app.require_subcommand(0, 1);

    std::string reportPath;
    bool quiet = false;
    std::vector<CLI::App *> subs;
    for (const auto &[name, synopsis] : commandList()) {
        CLI::App *sub = app.add_subcommand(name, synopsis);
        sub->allow_extras();
        sub->add_option("--report", reportPath, "write the JSON report to this path");
        sub->add_flag("--quiet", quiet, "suppress the human-readable summary");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App *chosen = nullptr;
    for (CLI::App *sub : subs)
        if (sub->parsed())
            chosen = sub;
    if (!chosen) {
        std::cout << app.help();
        return 0;
    }

    std::vector<std::string> kv;
    try {
        kv = collectOptions(chosen->remaining());
    } catch (const CLI::Error &e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::vector<const char *> opts;
    for (const auto &s : kv)
        opts.push_back(s.c_str());

    char *report = nullptr;
    char *summary = nullptr;
    int code = sl_run_job(chosen->get_name().c_str(), opts.data(),
                          static_cast<int>(opts.size()), &report, &summary);

    if (!quiet && summary && summary[0])
        std::cout << summary << "\n";
    if (report && report[0]) {
        if (reportPath.empty())
            std::cout << report;
        else {
            std::ofstream out(reportPath);
            if (!out) {
                std::cerr << "cannot write report to '" << reportPath << "'\n";
                sl_string_free(report);
                sl_string_free(summary);
                return 1;
            }
            out << report;
        }
    }
    sl_string_free(report);
    sl_string_free(summary);
    return code;
}
