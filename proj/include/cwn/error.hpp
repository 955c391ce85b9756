#pragma once

#include <stdexcept>
#include <string>

namespace cwn {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Raised when a document cannot be parsed. Carries the 1-based source line.
struct ParseError : Error {
	ParseError(int line_, const std::string& what_)
		: Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}

	int line;
};

/// Raised when a rule is applied to operands that do not satisfy its guard.
struct GuardError : Error {
	using Error::Error;
};

/// Raised when a transition is fired in a marking that does not enable it.
struct NotEnabledError : Error {
	using Error::Error;
};

}
