#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cwn {

/// A color component: either a small integer or a symbolic label.
/// Integers order before symbols; within a kind the natural order applies.
using Atom = std::variant<std::int64_t, std::string>;

/// A token color: a flat tuple of atoms. Plain atoms are tuples of arity 1.
/// Tuples never nest; structured data is always flattened on construction.
using ColorValue = std::vector<Atom>;

/// The name of the unit atom. A place without a declared color set carries
/// the singleton set over this atom.
inline const std::string kUnitAtomName = "*";

Atom unit_atom();
ColorValue unit_value();

/// A finite, non-empty set of colors, all of the same arity.
/// Values are kept sorted and duplicate-free.
class ColorSet {
public:
	ColorSet() = default;

	/// Sorts and deduplicates; throws Error if the set is empty or mixes
	/// arities.
	explicit ColorSet(std::vector<ColorValue> values);

	static ColorSet unit();

	const std::vector<ColorValue>& values() const { return values_; }
	std::size_t size() const { return values_.size(); }
	std::size_t arity() const;
	bool contains(const ColorValue& v) const;

	bool operator==(const ColorSet& other) const { return values_ == other.values_; }
	bool operator!=(const ColorSet& other) const { return !(*this == other); }

private:
	std::vector<ColorValue> values_;
};

std::string to_string(const Atom& a);

/// Renders a color value as "(a,b,c)"; arity-1 values still get parentheses.
std::string to_string(const ColorValue& v);

/// Renders one value per place, space separated: "(A,1) (*)".
std::string to_string(const std::vector<ColorValue>& tuple);

}
