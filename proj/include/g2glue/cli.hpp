#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace g2glue {

// Parsed command line.  String-typed so every parameter round-trips through
// serialization losslessly (see to_args).
struct RunConfig {
    std::string command;  // construct | verify | census | family | moebius
    std::string field;    // ring descriptor for construct/verify/census
    std::string e_list;
    std::string eprime_list;
    std::string sigma = "1,2,3";
    std::string ring;  // moebius
    std::string from_list;
    std::string to_list;
    long long p = 0;           // family characteristic
    std::string var = "s";     // family variable
    std::string format = "text";  // text | json | csv
    bool verify = false;
    bool with_construct = false;  // census: emit sextics
    int budget = 0;               // sample budget for the point checks

    std::vector<std::string> to_args() const;
};

// Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 internal
// falsification trigger.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace g2glue
