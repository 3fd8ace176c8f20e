#include "bugforecast/synth/fast_import.hpp"

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/process.hpp"
#include "bugforecast/util/text.hpp"

namespace fs = std::filesystem;

namespace bugforecast::synth {

namespace {

void git(const fs::path& dir, const std::vector<std::string>& args, std::string_view input = {}) {
    const auto r = util::run_process("git", args, dir, input);
    if (r.exit_code != 0)
        throw Error("git " + args.front() + " failed in " + dir.string() + ": " + std::string(util::trim(r.err)));
}

void data(std::string& out, std::string_view payload) {
    out += "data " + std::to_string(payload.size()) + "\n";
    out += payload;
    out += "\n";
}

}  // namespace

void write_repository(const fs::path& dir, const std::vector<ScriptedCommit>& commits, const std::string& branch) {
    fs::create_directories(dir);
    git(dir, {"init", "--quiet", "--initial-branch=" + branch});

    std::string stream;
    const std::string ref = "refs/heads/" + branch;
    for (std::size_t i = 0; i < commits.size(); ++i) {
        const auto& c = commits[i];
        const auto who = c.author_name + " <" + c.author_email + "> " +
                         std::to_string(c.time.time_since_epoch().count()) + " +0000\n";
        stream += "commit " + ref + "\n";
        stream += "mark :" + std::to_string(i + 1) + "\n";
        stream += "author " + who;
        stream += "committer " + who;
        data(stream, c.message.empty() ? std::string("change") : c.message);
        if (i > 0)
            stream += "from :" + std::to_string(i) + "\n";
        for (const auto& f : c.changes) {
            if (f.content) {
                stream += "M 100644 inline " + f.path + "\n";
                data(stream, *f.content);
            } else {
                stream += "D " + f.path + "\n";
            }
        }
        stream += "\n";
    }
    git(dir, {"fast-import", "--quiet"}, stream);
}

}  // namespace bugforecast::synth
