#include "piezoharvest/errors.hpp"

namespace piezoharvest {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "invalid parameters:";
    for (const auto& v : violations) {
        out += "\n  - ";
        out += v;
    }
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace piezoharvest
