#pragma once

#include <cstdint>
#include <string>

#include "cwn/color.hpp"

#ifndef CWN_FIXTURE_DIR
#define CWN_FIXTURE_DIR "fixtures"
#endif

namespace cwn::testing {

inline std::string fixture_path(const std::string& name) {
	return std::string(CWN_FIXTURE_DIR "/") + name;
}

/// Arity-1 integer color value.
inline ColorValue iv(std::int64_t n) {
	return ColorValue{Atom{n}};
}

/// Arity-1 symbolic color value.
inline ColorValue sv(const std::string& s) {
	return ColorValue{Atom{s}};
}

}
