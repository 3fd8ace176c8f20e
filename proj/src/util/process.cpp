#include "bugforecast/util/process.hpp"

#include <boost/asio/io_context.hpp>
#include <boost/process.hpp>
#include <future>

#include "bugforecast/model/errors.hpp"

namespace bp = boost::process;

namespace bugforecast::util {

ProcessResult run_process(const std::string& program, const std::vector<std::string>& args,
                          const std::filesystem::path& working_dir, std::string_view input) {
    const bool explicit_path = program.find('/') != std::string::npos;
    const auto exe = explicit_path ? boost::filesystem::path(program) : bp::search_path(program);
    if (exe.empty() || (explicit_path && !boost::filesystem::exists(exe)))
        throw Error("program not found: " + program);

    auto env = boost::this_process::environment();
    env["LC_ALL"] = "C";
    env["GIT_TERMINAL_PROMPT"] = "0";

    boost::asio::io_context io;
    std::future<std::string> out, err;
    const std::string stdin_data(input);
    try {
        bp::child child(exe, bp::args(args), bp::start_dir(working_dir.empty() ? "." : working_dir.string()), env,
                        bp::std_in < boost::asio::buffer(stdin_data), bp::std_out > out, bp::std_err > err, io);
        io.run();
        child.wait();
        return {child.exit_code(), out.get(), err.get()};
    } catch (const bp::process_error& e) {
        throw Error("could not run " + program + ": " + e.what());
    }
}

}  // namespace bugforecast::util
