#pragma once

#include <map>
#include <string>

namespace skewlab {

// One CLI job: a command name plus string options (file paths, bounds,
// seeds).  The report is deterministic JSON — same job and seed, same bytes
// — embedding the schema version, tool version and input-file hashes.
struct JobResult {
    int exitCode = 0;         // 0 pass, 2 counterexample emitted, 1 error
    std::string reportJson;   // always set once the job ran or failed
    std::string summary;      // one-paragraph human-readable outcome
};

extern const char *const kToolVersion;

JobResult runJob(const std::string &command,
                 const std::map<std::string, std::string> &options);

// The known command names, for CLI registration and usage text.
const std::map<std::string, std::string> &jobCommands(); // name -> synopsis

} // namespace skewlab
