#include "copson/errors.hpp"

namespace copson {

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what + " (at offset " + std::to_string(position) + ")"), message_(what), position_(position) {}

NotAdmissible::NotAdmissible(const std::string& what, double witness)
    : Error(what), witness_(witness) {}

}  // namespace copson
