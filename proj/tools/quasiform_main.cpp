#include "CLI11.hpp"

#include "quasiform/errors.hpp"
#include "quasiform/report.hpp"
#include "quasiform/script.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace
{

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Commands cannot be interrupted mid-computation, so a hard limit backs up
// the deadline checks between commands.
void start_watchdog(double seconds)
{
    std::thread([seconds] {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
        std::cerr << "error: timeout: time limit of " << seconds << " s exceeded\n";
        std::_Exit(3);
    }).detach();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Quasilinear quadratic forms in characteristic 2"};
    app.require_subcommand(1);

    std::string script_path;
    std::string json_path;
    std::size_t max_depth = qf::default_max_tower_depth;
    bool verify = false;
    bool timings = false;
    double timeout = 0;

    CLI::App *run = app.add_subcommand("run", "Run a script and report the results as JSON");
    run->add_option("script", script_path, "Script file")->required();
    run->add_option("--json", json_path, "Write the report here instead of standard output");
    run->add_option("--max-tower-depth", max_depth, "Maximum number of inseparable generators in a tower")
        ->check(CLI::Range(1, 32));
    run->add_flag("--verify-certificates", verify, "Re-check every symbolic certificate");
    run->add_option("--timeout-seconds", timeout, "Abort with exit code 3 after this many seconds")
        ->check(CLI::NonNegativeNumber);
    run->add_flag("--timings", timings, "Include per-command wall-clock times");

    CLI::App *print = app.add_subcommand("print", "Parse a script and print it in normal form");
    print->add_option("script", script_path, "Script file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const qf::cli::Script script = qf::cli::parse_script(read_file(script_path), max_depth);
        if (*print) {
            std::cout << qf::cli::print_script(script);
            return 0;
        }
        qf::cli::RunOptions options;
        options.verify_certificates = verify;
        options.timings = timings;
        if (timeout > 0) {
            options.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                                      std::chrono::duration<double>(timeout));
            start_watchdog(timeout);
        }
        const qf::cli::RunOutcome outcome = qf::cli::run_script(script, options);
        const std::string text = outcome.report.dump(2) + "\n";
        if (json_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(json_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << json_path << "\n";
                return 2;
            }
            out << text;
        }
        if (!outcome.assertions_passed) {
            std::cerr << "error: corpus expectations failed\n";
            return 1;
        }
        return 0;
    } catch (const qf::Error &e) {
        std::cerr << "error: " << qf::to_string(e.code()) << ": " << e.what() << "\n";
        return qf::cli::exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
