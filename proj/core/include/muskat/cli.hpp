// Subcommand implementations behind the muskat binary; exposed as library
// functions so the test suite can drive them directly.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace muskat::cli {

int run_cli(int argc, const char* const* argv);

int cmd_simulate(const std::string& config_path, const std::string& out_override,
                 bool quiet, std::ostream& out);

struct VerifyOptions {
    std::string suite = "all";  // kernels | variational | all
    std::vector<double> a_values{0.05, 0.1, 0.2, 0.3};
    std::string json_path;
};

struct VerifyItem {
    std::string check;
    std::string params;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool informational = false;  // reported but never fails the suite
};

std::vector<VerifyItem> run_verify_suite(const VerifyOptions& opts);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

int cmd_diagnose(const std::string& run_dir, std::ostream& out);

}  // namespace muskat::cli
