#ifndef BESOV_VERSION_HPP
#define BESOV_VERSION_HPP

namespace besov {
inline constexpr const char* version_string = "0.1.0";
}

#endif
