#ifndef TAXO_PORTER_HPP
#define TAXO_PORTER_HPP

#include <string>
#include <string_view>

namespace taxo {

// Porter suffix-stripping stemmer (the classic 1980 algorithm, matching the
// reference C implementation including its documented departures).
//
// Expects a lowercase token. Tokens shorter than three characters or
// containing anything outside [a-z] are returned unchanged.
std::string porter_stem(std::string_view token);

}  // namespace taxo

#endif
