// cli.hpp -- the crowdcov command implementations
#pragma once

#include <iosfwd>
#include <string>

#include "crowdcov/semantics.hpp"
#include "crowdcov/vec.hpp"

namespace crowdcov {

namespace exit_code {
inline constexpr int kSafe = 0;
inline constexpr int kCoverable = 1;
inline constexpr int kInputError = 2;
inline constexpr int kInapplicable = 3;
inline constexpr int kBounded = 4;  // budget exceeded / safe only up to a bound
}  // namespace exit_code

struct CheckOptions {
    std::string engine = "auto";  // auto|backward|km|leaderless|oracle
    Count oracle_n = 5;
    bool witness = false;
    bool json = false;
    bool complete = false;  // apply complete_receives before validation
    std::size_t budget = kDefaultBudget;
};

int cmd_check(const std::string& path, const CheckOptions& opt, std::ostream& out,
              std::ostream& err);
int cmd_explore(const std::string& path, Count n, std::size_t budget, std::ostream& out,
                std::ostream& err);
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_compile(const std::string& path, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view data);
std::string config_text(const TemplateAutomaton& t, const Config& c);
std::string violation_text(const Violation& v);

}  // namespace crowdcov
