#include "cwn/color.hpp"

#include <algorithm>

#include "cwn/error.hpp"

namespace cwn {

Atom unit_atom() {
	return Atom{kUnitAtomName};
}

ColorValue unit_value() {
	return ColorValue{unit_atom()};
}

ColorSet::ColorSet(std::vector<ColorValue> values) : values_(std::move(values)) {
	if (values_.empty()) throw Error("color set must not be empty");
	std::sort(values_.begin(), values_.end());
	values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
	const std::size_t a = values_.front().size();
	if (a == 0) throw Error("color value must have at least one component");
	for (const ColorValue& v : values_) {
		if (v.size() != a)
			throw Error("color set mixes arities " + std::to_string(a) + " and " +
			            std::to_string(v.size()));
	}
}

ColorSet ColorSet::unit() {
	return ColorSet({unit_value()});
}

std::size_t ColorSet::arity() const {
	return values_.empty() ? 0 : values_.front().size();
}

bool ColorSet::contains(const ColorValue& v) const {
	return std::binary_search(values_.begin(), values_.end(), v);
}

std::string to_string(const Atom& a) {
	if (std::holds_alternative<std::int64_t>(a))
		return std::to_string(std::get<std::int64_t>(a));
	return std::get<std::string>(a);
}

std::string to_string(const ColorValue& v) {
	std::string s = "(";
	for (std::size_t i = 0; i < v.size(); ++i) {
		if (i) s += ',';
		s += to_string(v[i]);
	}
	s += ')';
	return s;
}

std::string to_string(const std::vector<ColorValue>& tuple) {
	std::string s;
	for (std::size_t i = 0; i < tuple.size(); ++i) {
		if (i) s += ' ';
		s += to_string(tuple[i]);
	}
	return s;
}

}
